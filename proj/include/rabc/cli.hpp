#pragma once

#include "rabc/harness.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rabc::cli {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Reads `key=value` lines. Blank lines and lines starting with '#' are
// skipped; whitespace around keys and values is trimmed. Throws ConfigError on
// a line without '=' or with an empty key, IoError when the file is unreadable.
KeyValues read_key_value_file(std::filesystem::path const &path);

inline constexpr char const *kSeriesHeader =
    "round,mechanism,sweep_value,active_mean,active_std,auction_cost_mean,auction_cost_std,"
    "mpi_mean,bar_mean,bai_mean,roi_mean,recruited_mean,dropped_mean";

inline constexpr char const *kSummaryHeader =
    "mechanism,sweep_value,runs,final_active_mean,final_active_std,mean_active,"
    "mean_auction_cost,mean_mpi,mean_bar,mean_bai,mean_roi,total_recruited_mean,"
    "total_dropped_mean";

// Numbers use "%.6g"; undefined values (NaN, no sweep) are empty fields.
std::string format_number(double value);
std::string format_optional(std::optional<double> value);

// One row of the per-round series file.
struct SeriesRow
{
  std::uint32_t         round = 0;
  Mechanism             mechanism = Mechanism::RaAbc;
  std::optional<double> sweep_value;
  std::optional<double> active_mean, active_std, auction_cost_mean, auction_cost_std, mpi_mean,
      bar_mean, bai_mean, roi_mean, recruited_mean, dropped_mean;
};

// Rows sorted by (mechanism, sweep value, round). Throws IoError on failure.
void write_series_csv(std::span<MetricSeries const> series, std::filesystem::path const &path);
std::vector<SeriesRow> read_series_csv(std::filesystem::path const &path);

// Whole-run aggregates of each series (one row per mechanism and sweep value).
struct SummaryRow
{
  Mechanism             mechanism = Mechanism::RaAbc;
  std::optional<double> sweep_value;
  std::uint32_t         runs = 0;
  double                final_active_mean = 0.0;
  double                final_active_std  = 0.0;
  double                mean_active       = 0.0;
  double                mean_auction_cost = 0.0;
  double                mean_mpi          = 0.0;
  double                mean_bar          = 0.0;
  double                mean_bai          = 0.0;
  double                mean_roi          = 0.0;
  double                total_recruited   = 0.0;
  double                total_dropped     = 0.0;
};

// Averages over rounds skip rounds where a metric is undefined.
SummaryRow summarize(MetricSeries const &series);
void       write_summary_csv(std::span<MetricSeries const> series,
                             std::filesystem::path const &path);

enum class Command
{
  Run,
  Compare,
  Sweep,
};

std::string_view to_string(Command command);

// The flat key=value manifest for `plan`; loading it with --config under the
// same command reproduces every output file.
KeyValues manifest_entries(Command command, ExperimentPlan const &plan);
void      write_manifest(KeyValues const &entries, std::filesystem::path const &path);

inline constexpr int kExitOk          = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitRuntime     = 2;

// Entry point behind the rabc-sim executable. args[0] is the program name.
int run_cli(std::vector<std::string> args, std::ostream &out, std::ostream &err);

}  // namespace rabc::cli
