#pragma once

#include "rabc/model.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rabc {

// Total paid to a round's winners.
double auction_cost(std::span<double const> payments);

/**
 * Monopoly prevention index over per-participant win frequencies:
 *
 *   1 - sum(w^2) / N - | max(w) / sum(w) - 1 / N |
 *
 * Returns nullopt when no participant has won (the dominance term is 0/0).
 * Throws UndefinedMetricError on an empty vector or a negative frequency.
 */
std::optional<double> mpi(std::span<double const> win_freqs);

// Bid accuracy |bid - cost| / cost. Throws UndefinedMetricError for cost <= 0.
double bar(double bid, double cost);

// Win counts of a population after `rounds_elapsed` rounds.
struct WinTally
{
  std::vector<std::uint32_t> wins;
  std::uint32_t              rounds_elapsed = 0;

  // w_i = wins_i / rounds_elapsed, each in [0, 1].
  std::vector<double> frequencies() const;
};

// Population selected by `population`: non-exited participants, or everyone.
WinTally tally_wins(std::span<Participant const> participants, std::uint32_t rounds_elapsed,
                    MpiPopulation population);

struct RetentionEntry
{
  std::string label;
  double      mean          = 0.0;
  double      percent_delta = 0.0;
};

struct RetentionReport
{
  double                      grand_mean = 0.0;
  std::vector<RetentionEntry> entries;
};

struct LabeledSeries
{
  std::string         label;
  std::vector<double> values;
};

// Mean of each series, their grand mean, and each mean's percentage deviation
// from it. Throws ConfigError for no series, an empty series, or unequal
// lengths.
RetentionReport retention_vs_average(std::span<LabeledSeries const> series);

}  // namespace rabc
