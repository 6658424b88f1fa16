#include "rabc/cli.hpp"

#include "rabc/parameters.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace rabc::cli {

namespace {

std::ofstream open_for_write(std::filesystem::path const &path)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
  {
    throw IoError("cannot write " + path.string());
  }
  return out;
}

void close_checked(std::ofstream &out, std::filesystem::path const &path)
{
  out.close();
  if (!out)
  {
    throw IoError("error while writing " + path.string());
  }
}

std::vector<std::string> split(std::string const &line, char sep)
{
  std::vector<std::string> fields;
  std::string              field;
  std::istringstream       in(line);
  while (std::getline(in, field, sep))
  {
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == sep)
  {
    fields.emplace_back();
  }
  return fields;
}

std::optional<double> parse_field(std::string const &text)
{
  if (text.empty())
  {
    return std::nullopt;
  }
  char        *end = nullptr;
  double const v   = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size())
  {
    throw IoError("malformed number in CSV: '" + text + "'");
  }
  return v;
}

double mean_defined(std::vector<double> const &values)
{
  double      sum = 0.0;
  std::size_t n   = 0;
  for (double v : values)
  {
    if (!std::isnan(v))
    {
      sum += v;
      ++n;
    }
  }
  return n == 0 ? std::nan("") : sum / static_cast<double>(n);
}

double total(std::vector<double> const &values)
{
  double sum = 0.0;
  for (double v : values)
  {
    sum += v;
  }
  return sum;
}

}  // namespace

std::string format_number(double value)
{
  if (std::isnan(value))
  {
    return {};
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string format_optional(std::optional<double> value)
{
  return value ? format_number(*value) : std::string();
}

void write_series_csv(std::span<MetricSeries const> series, std::filesystem::path const &path)
{
  std::vector<MetricSeries const *> ordered;
  for (auto const &s : series)
  {
    ordered.push_back(&s);
  }
  std::stable_sort(ordered.begin(), ordered.end(), [](auto const *a, auto const *b) {
    if (a->mechanism != b->mechanism)
    {
      return a->mechanism < b->mechanism;
    }
    return a->sweep_value.value_or(-INFINITY) < b->sweep_value.value_or(-INFINITY);
  });

  auto out = open_for_write(path);
  out << kSeriesHeader << '\n';
  for (auto const *s : ordered)
  {
    std::string const mechanism(to_string(s->mechanism));
    std::string const sweep = format_optional(s->sweep_value);
    for (std::size_t t = 0; t < s->rounds(); ++t)
    {
      out << (t + 1) << ',' << mechanism << ',' << sweep << ','
          << format_number(s->active.mean[t]) << ',' << format_number(s->active.stddev[t]) << ','
          << format_number(s->auction_cost.mean[t]) << ','
          << format_number(s->auction_cost.stddev[t]) << ',' << format_number(s->mpi.mean[t])
          << ',' << format_number(s->bar.mean[t]) << ',' << format_number(s->bai.mean[t]) << ','
          << format_number(s->roi.mean[t]) << ',' << format_number(s->recruited.mean[t]) << ','
          << format_number(s->dropped.mean[t]) << '\n';
    }
  }
  close_checked(out, path);
}

std::vector<SeriesRow> read_series_csv(std::filesystem::path const &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw IoError("cannot read " + path.string());
  }
  std::string line;
  if (!std::getline(in, line) || line != kSeriesHeader)
  {
    throw IoError(path.string() + ": unexpected series header");
  }
  std::vector<SeriesRow> rows;
  while (std::getline(in, line))
  {
    if (line.empty())
    {
      continue;
    }
    auto const f = split(line, ',');
    if (f.size() != 13)
    {
      throw IoError(path.string() + ": expected 13 fields, got " + std::to_string(f.size()));
    }
    SeriesRow row;
    row.round             = static_cast<std::uint32_t>(std::stoul(f[0]));
    row.mechanism         = parse_mechanism(f[1]);
    row.sweep_value       = parse_field(f[2]);
    row.active_mean       = parse_field(f[3]);
    row.active_std        = parse_field(f[4]);
    row.auction_cost_mean = parse_field(f[5]);
    row.auction_cost_std  = parse_field(f[6]);
    row.mpi_mean          = parse_field(f[7]);
    row.bar_mean          = parse_field(f[8]);
    row.bai_mean          = parse_field(f[9]);
    row.roi_mean          = parse_field(f[10]);
    row.recruited_mean    = parse_field(f[11]);
    row.dropped_mean      = parse_field(f[12]);
    rows.push_back(row);
  }
  return rows;
}

SummaryRow summarize(MetricSeries const &series)
{
  SummaryRow row;
  row.mechanism   = series.mechanism;
  row.sweep_value = series.sweep_value;
  row.runs        = series.num_runs;
  if (series.rounds() == 0)
  {
    return row;
  }
  row.final_active_mean = series.active.mean.back();
  row.final_active_std  = series.active.stddev.back();
  row.mean_active       = mean_defined(series.active.mean);
  row.mean_auction_cost = mean_defined(series.auction_cost.mean);
  row.mean_mpi          = mean_defined(series.mpi.mean);
  row.mean_bar          = mean_defined(series.bar.mean);
  row.mean_bai          = mean_defined(series.bai.mean);
  row.mean_roi          = mean_defined(series.roi.mean);
  row.total_recruited   = total(series.recruited.mean);
  row.total_dropped     = total(series.dropped.mean);
  return row;
}

void write_summary_csv(std::span<MetricSeries const> series, std::filesystem::path const &path)
{
  auto out = open_for_write(path);
  out << kSummaryHeader << '\n';
  for (auto const &s : series)
  {
    auto const r = summarize(s);
    out << to_string(r.mechanism) << ',' << format_optional(r.sweep_value) << ',' << r.runs << ','
        << format_number(r.final_active_mean) << ',' << format_number(r.final_active_std) << ','
        << format_number(r.mean_active) << ',' << format_number(r.mean_auction_cost) << ','
        << format_number(r.mean_mpi) << ',' << format_number(r.mean_bar) << ','
        << format_number(r.mean_bai) << ',' << format_number(r.mean_roi) << ','
        << format_number(r.total_recruited) << ',' << format_number(r.total_dropped) << '\n';
  }
  close_checked(out, path);
}

std::string_view to_string(Command command)
{
  switch (command)
  {
  case Command::Run:
    return "run";
  case Command::Compare:
    return "compare";
  case Command::Sweep:
    return "sweep";
  }
  return "unknown";
}

KeyValues manifest_entries(Command command, ExperimentPlan const &plan)
{
  KeyValues entries;
  entries.emplace_back("command", std::string(to_string(command)));

  std::string mechanisms;
  for (auto m : plan.mechanisms)
  {
    mechanisms += (mechanisms.empty() ? "" : ",") + std::string(to_string(m));
  }
  entries.emplace_back("mechanisms", mechanisms);

  if (plan.sweep)
  {
    entries.emplace_back("sweep_param", plan.sweep->parameter);
    std::string values;
    for (double v : plan.sweep->values)
    {
      values += (values.empty() ? "" : ",") + format_exact(v);
    }
    entries.emplace_back("sweep_values", values);
  }

  ScenarioConfig base = plan.base;
  base.num_runs       = plan.num_runs;
  base.seed           = plan.master_seed;
  for (auto &kv : to_key_values(base))
  {
    entries.push_back(std::move(kv));
  }

  std::vector<std::optional<double>> sweep_values;
  if (plan.sweep)
  {
    sweep_values.assign(plan.sweep->values.begin(), plan.sweep->values.end());
  }
  else
  {
    sweep_values.push_back(std::nullopt);
  }
  for (auto m : plan.mechanisms)
  {
    for (auto const &v : sweep_values)
    {
      for (std::uint32_t k = 0; k < plan.num_runs; ++k)
      {
        entries.emplace_back("run_seed." + std::string(to_string(m)) + "." + sweep_label(v) +
                                 "." + std::to_string(k),
                             std::to_string(run_seed(plan.master_seed, m, v, k)));
      }
    }
  }
  return entries;
}

void write_manifest(KeyValues const &entries, std::filesystem::path const &path)
{
  auto out = open_for_write(path);
  out << "# rabc-sim run manifest; replay with: rabc-sim <command> --config <this file>\n";
  for (auto const &[key, value] : entries)
  {
    out << key << '=' << value << '\n';
  }
  close_checked(out, path);
}

}  // namespace rabc::cli
