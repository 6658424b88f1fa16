#pragma once

#include "rabc/model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rabc {

/**
 * Child seed for one labelled run.
 *
 * 64-bit FNV-1a (offset 0xcbf29ce484222325, prime 0x100000001b3) over the
 * master seed as 8 little-endian bytes, then each label's UTF-8 bytes followed
 * by a 0xFF separator byte; the hash is passed through SplitMix64::mix.
 */
std::uint64_t derive_seed(std::uint64_t master, std::span<std::string const> labels);
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::string_view> labels);

struct SweepAxis
{
  std::string         parameter;
  std::vector<double> values;
};

struct ExperimentPlan
{
  ScenarioConfig           base;
  std::vector<Mechanism>   mechanisms;
  std::optional<SweepAxis> sweep;
  std::uint32_t            num_runs    = 50;
  std::uint64_t            master_seed = 0;
  // Concurrent engine runs; 0 picks the hardware concurrency.
  std::uint32_t            workers     = 1;

  // Plan over `base` using its num_runs and seed.
  static ExperimentPlan from_config(ScenarioConfig const &base, std::vector<Mechanism> mechanisms);

  // Throws ConfigError for an empty mechanism list, an unknown or non-numeric
  // sweep parameter, or a sweep value that yields an invalid config.
  void validate() const;
};

// Label used for the sweep component of a run seed: the exact value, or "-".
std::string sweep_label(std::optional<double> sweep_value);

// Seed of run `run_index` for one (mechanism, sweep value) cell.
std::uint64_t run_seed(std::uint64_t master, Mechanism mechanism,
                       std::optional<double> sweep_value, std::uint32_t run_index);

// Config of one cell: base with the mechanism set and the sweep value applied.
ScenarioConfig cell_config(ExperimentPlan const &plan, Mechanism mechanism,
                           std::optional<double> sweep_value);

// Plays one engine to completion and returns its history.
std::vector<RoundRecord> run_single(ScenarioConfig const &config);

// Per-round mean and sample standard deviation across equally long runs.
MetricSeries aggregate(std::span<std::vector<RoundRecord> const> runs, Mechanism mechanism,
                       std::optional<double> sweep_value);

/**
 * Runs every (mechanism, sweep value, run) cell of `plan`.
 *
 * Runs execute on up to `workers` threads; results are merged in run-index
 * order, so the output does not depend on the worker count. Series are
 * returned sorted by mechanism, then sweep value.
 */
std::vector<MetricSeries> run_experiment(ExperimentPlan const &plan);

}  // namespace rabc
