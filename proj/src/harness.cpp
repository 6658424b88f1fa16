#include "rabc/harness.hpp"

#include "rabc/mechanisms.hpp"
#include "rabc/parameters.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

namespace rabc {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime  = 0x100000001b3ULL;

struct Fnv1a
{
  std::uint64_t hash = kFnvOffset;

  void byte(std::uint8_t b)
  {
    hash ^= b;
    hash *= kFnvPrime;
  }

  void bytes(std::string_view s)
  {
    for (char c : s)
    {
      byte(static_cast<std::uint8_t>(c));
    }
  }
};

std::uint64_t finish(std::uint64_t master, auto const &labels)
{
  Fnv1a h;
  for (int i = 0; i < 8; ++i)
  {
    h.byte(static_cast<std::uint8_t>(master >> (8 * i)));
  }
  for (auto const &label : labels)
  {
    h.bytes(label);
    h.byte(0xFF);
  }
  return SplitMix64::mix(h.hash);
}

// Accumulates one metric for one round across runs.
struct Column
{
  std::vector<double> samples;

  void add(double x) { samples.push_back(x); }

  void emit(SeriesStat &out) const
  {
    double const nan = std::numeric_limits<double>::quiet_NaN();
    if (samples.empty())
    {
      out.mean.push_back(nan);
      out.stddev.push_back(nan);
      return;
    }
    double sum = 0.0;
    for (double x : samples)
    {
      sum += x;
    }
    double const mean = sum / static_cast<double>(samples.size());
    double       ss   = 0.0;
    for (double x : samples)
    {
      ss += (x - mean) * (x - mean);
    }
    out.mean.push_back(mean);
    out.stddev.push_back(samples.size() > 1
                             ? std::sqrt(ss / static_cast<double>(samples.size() - 1))
                             : 0.0);
  }
};

struct Cell
{
  Mechanism             mechanism;
  std::optional<double> sweep_value;
};

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::span<std::string const> labels)
{
  return finish(master, labels);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::string_view> labels)
{
  return finish(master, labels);
}

ExperimentPlan ExperimentPlan::from_config(ScenarioConfig const &base,
                                           std::vector<Mechanism> mechanisms)
{
  ExperimentPlan plan;
  plan.base        = base;
  plan.mechanisms  = std::move(mechanisms);
  plan.num_runs    = base.num_runs;
  plan.master_seed = base.seed;
  return plan;
}

void ExperimentPlan::validate() const
{
  if (mechanisms.empty())
  {
    throw ConfigError("experiment needs at least one mechanism");
  }
  if (num_runs == 0)
  {
    throw ConfigError("runs must be positive");
  }
  if (!sweep)
  {
    base.validate();
    return;
  }
  if (!is_numeric_parameter(sweep->parameter))
  {
    throw ConfigError("cannot sweep parameter '" + sweep->parameter + "'");
  }
  if (sweep->values.empty())
  {
    throw ConfigError("sweep needs at least one value");
  }
  for (double v : sweep->values)
  {
    ScenarioConfig c = base;
    set_numeric_parameter(c, sweep->parameter, v);
    c.validate();
  }
}

std::string sweep_label(std::optional<double> sweep_value)
{
  return sweep_value ? format_exact(*sweep_value) : std::string("-");
}

std::uint64_t run_seed(std::uint64_t master, Mechanism mechanism,
                       std::optional<double> sweep_value, std::uint32_t run_index)
{
  std::string const sweep = sweep_label(sweep_value);
  std::string const run   = std::to_string(run_index);
  return derive_seed(master, {to_string(mechanism), sweep, run});
}

ScenarioConfig cell_config(ExperimentPlan const &plan, Mechanism mechanism,
                           std::optional<double> sweep_value)
{
  ScenarioConfig c = plan.base;
  c.mechanism      = mechanism;
  c.num_runs       = plan.num_runs;
  c.seed           = plan.master_seed;
  if (plan.sweep && sweep_value)
  {
    set_numeric_parameter(c, plan.sweep->parameter, *sweep_value);
  }
  return c;
}

std::vector<RoundRecord> run_single(ScenarioConfig const &config)
{
  MechanismEngine engine(config);
  return engine.run();
}

MetricSeries aggregate(std::span<std::vector<RoundRecord> const> runs, Mechanism mechanism,
                       std::optional<double> sweep_value)
{
  MetricSeries series;
  series.mechanism   = mechanism;
  series.sweep_value = sweep_value;
  series.num_runs    = static_cast<std::uint32_t>(runs.size());
  if (runs.empty())
  {
    return series;
  }
  std::size_t const rounds = runs.front().size();
  for (auto const &r : runs)
  {
    if (r.size() != rounds)
    {
      throw StateError("cannot aggregate runs of different lengths");
    }
  }

  for (std::size_t t = 0; t < rounds; ++t)
  {
    Column active, cost, mpi, bar, bai, roi, recruited, dropped, rejoined;
    for (auto const &run : runs)
    {
      auto const &rec = run[t];
      active.add(rec.active_count);
      cost.add(rec.auction_cost);
      if (rec.mpi)
      {
        mpi.add(*rec.mpi);
      }
      if (rec.mean_bar)
      {
        bar.add(*rec.mean_bar);
      }
      bai.add(rec.mean_bai);
      roi.add(rec.mean_roi);
      recruited.add(rec.recruited_this_round);
      dropped.add(rec.dropped_this_round);
      rejoined.add(rec.rejoined_this_round);
    }
    active.emit(series.active);
    cost.emit(series.auction_cost);
    mpi.emit(series.mpi);
    bar.emit(series.bar);
    bai.emit(series.bai);
    roi.emit(series.roi);
    recruited.emit(series.recruited);
    dropped.emit(series.dropped);
    rejoined.emit(series.rejoined);
  }
  return series;
}

std::vector<MetricSeries> run_experiment(ExperimentPlan const &plan)
{
  plan.validate();

  std::vector<Mechanism> mechanisms = plan.mechanisms;
  std::sort(mechanisms.begin(), mechanisms.end());
  mechanisms.erase(std::unique(mechanisms.begin(), mechanisms.end()), mechanisms.end());

  std::vector<std::optional<double>> sweep_values;
  if (plan.sweep)
  {
    auto values = plan.sweep->values;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    sweep_values.assign(values.begin(), values.end());
  }
  else
  {
    sweep_values.push_back(std::nullopt);
  }

  std::vector<Cell> cells;
  for (auto m : mechanisms)
  {
    for (auto const &v : sweep_values)
    {
      cells.push_back({m, v});
    }
  }

  std::size_t const runs_per_cell = plan.num_runs;
  std::size_t const total         = cells.size() * runs_per_cell;
  std::vector<std::vector<RoundRecord>> results(total);

  auto job = [&](std::size_t index) {
    Cell const    &cell   = cells[index / runs_per_cell];
    auto const     run    = static_cast<std::uint32_t>(index % runs_per_cell);
    ScenarioConfig config = cell_config(plan, cell.mechanism, cell.sweep_value);
    config.seed           = run_seed(plan.master_seed, cell.mechanism, cell.sweep_value, run);
    results[index]        = run_single(config);
  };

  std::size_t workers = plan.workers == 0 ? std::thread::hardware_concurrency() : plan.workers;
  workers             = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(total, 1));

  if (workers == 1)
  {
    for (std::size_t i = 0; i < total; ++i)
    {
      job(i);
    }
  }
  else
  {
    std::atomic<std::size_t> next{0};
    std::exception_ptr       failure;
    std::atomic<bool>        failed{false};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
    {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < total && !failed; i = next++)
        {
          try
          {
            job(i);
          }
          catch (...)
          {
            if (!failed.exchange(true))
            {
              failure = std::current_exception();
            }
          }
        }
      });
    }
    pool.clear();
    if (failure)
    {
      std::rethrow_exception(failure);
    }
  }

  std::vector<MetricSeries> out;
  out.reserve(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c)
  {
    std::span<std::vector<RoundRecord> const> runs(results.data() + c * runs_per_cell,
                                                   runs_per_cell);
    out.push_back(aggregate(runs, cells[c].mechanism, cells[c].sweep_value));
  }
  return out;
}

}  // namespace rabc
