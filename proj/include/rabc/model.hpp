#pragma once

#include "rabc/errors.hpp"
#include "rabc/random.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rabc {

using ParticipantId = std::uint32_t;
using RoundIndex    = std::uint32_t;

enum class Mechanism
{
  RaAbc,
  RaAbcDr,
  Tullock,
};

inline constexpr Mechanism kAllMechanisms[] = {Mechanism::RaAbc, Mechanism::RaAbcDr,
                                               Mechanism::Tullock};

std::string_view to_string(Mechanism mechanism);
Mechanism        parse_mechanism(std::string_view name);

enum class Status
{
  Active,
  Dropped,
  Exited,
};

std::string_view to_string(Status status);

// Active -> Dropped, Dropped -> Active (rejoin), Dropped -> Exited.
bool is_legal_transition(Status from, Status to);

// Which participants count towards the N of the monopoly prevention index.
enum class MpiPopulation
{
  Current,   // non-exited participants at metric time
  EverSeen,  // every participant ever created
};

/// Streaming estimate of the historical winning bid: E[b] and V[b].
///
/// An estimator with no samples carries a seed mean (the owner's assumed cost)
/// and zero variance. The first absorbed sample replaces the seed; later
/// samples update mean and population variance with Welford's recurrence.
struct BidEstimator
{
  double        historical_mean     = 0.0;
  double        historical_variance = 0.0;
  std::uint64_t sample_count        = 0;
  double        sum_sq_dev          = 0.0;

  static BidEstimator seeded(double mean) { return BidEstimator{mean, 0.0, 0, 0.0}; }

  void absorb(double value);
};

struct Participant
{
  ParticipantId id            = 0;
  double        true_cost     = 0.0;
  double        assumed_cost  = 0.0;
  bool          knows_true_cost = false;
  double        tolerance     = 0.0;
  double        initial_bid   = 0.0;
  double        current_bid   = 0.0;
  double        participation_freq = 0.0;
  double        avg_earnings  = 0.0;
  double        roi           = 0.0;
  Status        status        = Status::Active;
  std::uint32_t rounds_participated = 0;
  std::uint32_t rounds_won    = 0;
  RoundIndex    join_round    = 0;

  BidEstimator  estimator;
  // Consecutive rounds spent dropped with a rejoin estimate below threshold.
  std::uint32_t rounds_below_threshold = 0;

  // The cost a participant reasons with: the realized cost once a task has
  // been performed, otherwise the pre-task estimate.
  double cost_estimate() const { return knows_true_cost ? true_cost : assumed_cost; }

  // Throws StateError on a transition outside the lifecycle graph.
  void transition_to(Status next);
};

struct ScenarioConfig
{
  std::uint32_t initial_population     = 100;
  std::uint32_t winners_per_round      = 20;
  std::uint32_t num_rounds             = 100;
  double        satisfaction_threshold = 0.5;
  double        risk_alpha             = 0.5;
  double        ewma_alpha             = 0.3;
  double        ewma_beta              = 0.3;
  double        penalty_gamma          = 0.5;
  double        prior_variance         = 0.25;
  double        observation_variance   = 0.25;
  double        cost_mean              = 5.0;
  double        cost_stddev            = 1.0;
  double        recruitment_rate       = 1.0;
  double        initial_roi_epsilon    = 0.1;
  double        participation_fee      = 0.0;
  double        tullock_exponent       = 1.0;
  double        tolerance_min          = 0.5;
  double        tolerance_max          = 1.5;
  std::uint32_t rejoin_patience        = 10;
  bool          clamp_monotone         = true;
  bool          freeze_dropped_trackers = false;
  MpiPopulation mpi_population         = MpiPopulation::Current;
  Mechanism     mechanism              = Mechanism::RaAbc;
  std::uint64_t seed                   = 20240501;
  std::uint32_t num_runs               = 50;

  // Throws ConfigError naming the first violated constraint.
  void validate() const;
};

struct RoundRecord
{
  RoundIndex                 round = 0;
  std::vector<ParticipantId> winner_ids;
  std::vector<double>        payments;
  double                     auction_cost         = 0.0;
  std::uint32_t              active_count         = 0;
  std::uint32_t              dropped_this_round   = 0;
  std::uint32_t              rejoined_this_round  = 0;
  std::uint32_t              recruited_this_round = 0;
  std::uint32_t              exited_this_round    = 0;
  std::optional<double>      mpi;
  std::optional<double>      mean_bar;
  double                     mean_bai = 0.0;
  double                     mean_roi = 0.0;
  // Mean over bidders of (payment - true cost if won) minus the participation fee.
  double                     mean_net_utility = 0.0;

  bool operator==(RoundRecord const &) const = default;
};

// Per-round mean and sample standard deviation of one metric across runs.
// Optional metrics average only the runs where they were defined; a round with
// no defined samples holds NaN.
struct SeriesStat
{
  std::vector<double> mean;
  std::vector<double> stddev;
};

struct MetricSeries
{
  Mechanism   mechanism = Mechanism::RaAbc;
  // Value of the swept parameter, absent for an unswept experiment.
  std::optional<double> sweep_value;
  std::uint32_t num_runs = 0;

  SeriesStat active;
  SeriesStat auction_cost;
  SeriesStat mpi;
  SeriesStat bar;
  SeriesStat bai;
  SeriesStat roi;
  SeriesStat recruited;
  SeriesStat dropped;
  SeriesStat rejoined;

  std::size_t rounds() const { return active.mean.size(); }
};

// Positive true cost from N(cost_mean, cost_stddev), redrawn until positive.
double draw_true_cost(Random &rng, ScenarioConfig const &config);

/**
 * Creates an Active participant joining at `join_round`.
 *
 * Stream order: true cost (one or more Gaussian draws), assumed-cost factor
 * U[0.9, 1.05], tolerance U[tolerance_min, tolerance_max]. The bid estimator is
 * seeded with the assumed cost, so the entry bid equals the assumed cost.
 * ROI starts at threshold + initial_roi_epsilon.
 */
Participant new_participant(ParticipantId id, RoundIndex join_round, Random &rng,
                            ScenarioConfig const &config);

inline constexpr double kAssumedCostLow  = 0.90;
inline constexpr double kAssumedCostHigh = 1.05;

}  // namespace rabc
