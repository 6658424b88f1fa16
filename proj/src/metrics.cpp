#include "rabc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rabc {

double auction_cost(std::span<double const> payments)
{
  return std::accumulate(payments.begin(), payments.end(), 0.0);
}

std::optional<double> mpi(std::span<double const> win_freqs)
{
  if (win_freqs.empty())
  {
    throw UndefinedMetricError("MPI requires at least one participant");
  }
  double sum    = 0.0;
  double sum_sq = 0.0;
  double top    = 0.0;
  for (double w : win_freqs)
  {
    if (!(w >= 0.0))
    {
      throw UndefinedMetricError("MPI win frequencies must be non-negative");
    }
    sum += w;
    sum_sq += w * w;
    top = std::max(top, w);
  }
  if (sum == 0.0)
  {
    return std::nullopt;
  }
  auto const n = static_cast<double>(win_freqs.size());
  return 1.0 - sum_sq / n - std::abs(top / sum - 1.0 / n);
}

double bar(double bid, double cost)
{
  if (!(cost > 0.0))
  {
    throw UndefinedMetricError("BAR requires a positive realized cost");
  }
  return std::abs(bid - cost) / cost;
}

std::vector<double> WinTally::frequencies() const
{
  std::vector<double> out;
  out.reserve(wins.size());
  for (auto w : wins)
  {
    out.push_back(rounds_elapsed == 0 ? 0.0
                                      : static_cast<double>(w) / static_cast<double>(rounds_elapsed));
  }
  return out;
}

WinTally tally_wins(std::span<Participant const> participants, std::uint32_t rounds_elapsed,
                    MpiPopulation population)
{
  WinTally tally;
  tally.rounds_elapsed = rounds_elapsed;
  for (auto const &p : participants)
  {
    if (population == MpiPopulation::Current && p.status == Status::Exited)
    {
      continue;
    }
    tally.wins.push_back(p.rounds_won);
  }
  return tally;
}

RetentionReport retention_vs_average(std::span<LabeledSeries const> series)
{
  if (series.empty())
  {
    throw ConfigError("retention comparison needs at least one series");
  }
  std::size_t const length = series.front().values.size();
  RetentionReport   report;
  for (auto const &s : series)
  {
    if (s.values.empty())
    {
      throw ConfigError("retention series '" + s.label + "' is empty");
    }
    if (s.values.size() != length)
    {
      throw ConfigError("retention series lengths differ");
    }
    double const mean = std::accumulate(s.values.begin(), s.values.end(), 0.0) /
                        static_cast<double>(s.values.size());
    report.entries.push_back({s.label, mean, 0.0});
    report.grand_mean += mean;
  }
  report.grand_mean /= static_cast<double>(series.size());
  for (auto &e : report.entries)
  {
    e.percent_delta = report.grand_mean == 0.0 ? 0.0 : (e.mean / report.grand_mean - 1.0) * 100.0;
  }
  return report;
}

}  // namespace rabc
