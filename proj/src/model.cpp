#include "rabc/model.hpp"

#include "rabc/bidding.hpp"

#include <cmath>

namespace rabc {

std::string_view to_string(Mechanism mechanism)
{
  switch (mechanism)
  {
  case Mechanism::RaAbc:
    return "ra-abc";
  case Mechanism::RaAbcDr:
    return "ra-abcdr";
  case Mechanism::Tullock:
    return "tullock";
  }
  return "unknown";
}

Mechanism parse_mechanism(std::string_view name)
{
  for (auto m : kAllMechanisms)
  {
    if (to_string(m) == name)
    {
      return m;
    }
  }
  throw ConfigError("unknown mechanism '" + std::string(name) +
                    "' (expected ra-abc, ra-abcdr or tullock)");
}

std::string_view to_string(Status status)
{
  switch (status)
  {
  case Status::Active:
    return "active";
  case Status::Dropped:
    return "dropped";
  case Status::Exited:
    return "exited";
  }
  return "unknown";
}

bool is_legal_transition(Status from, Status to)
{
  switch (from)
  {
  case Status::Active:
    return to == Status::Dropped;
  case Status::Dropped:
    return to == Status::Active || to == Status::Exited;
  case Status::Exited:
    return false;
  }
  return false;
}

void BidEstimator::absorb(double value)
{
  ++sample_count;
  double const delta = value - historical_mean;
  historical_mean += delta / static_cast<double>(sample_count);
  sum_sq_dev += delta * (value - historical_mean);
  historical_variance = sum_sq_dev / static_cast<double>(sample_count);
  if (historical_variance < 0.0)
  {
    historical_variance = 0.0;
  }
}

void Participant::transition_to(Status next)
{
  if (!is_legal_transition(status, next))
  {
    throw StateError("participant " + std::to_string(id) + ": illegal transition " +
                     std::string(to_string(status)) + " -> " + std::string(to_string(next)));
  }
  status = next;
}

namespace {

void require(bool ok, char const *what)
{
  if (!ok)
  {
    throw ConfigError(what);
  }
}

bool finite(double x)
{
  return std::isfinite(x);
}

}  // namespace

void ScenarioConfig::validate() const
{
  require(initial_population > 0, "participants must be positive");
  require(winners_per_round > 0, "winners must be positive");
  require(winners_per_round <= initial_population, "winners must not exceed participants");
  require(num_rounds > 0, "rounds must be positive");
  require(finite(satisfaction_threshold) && satisfaction_threshold > 0.0 &&
              satisfaction_threshold <= 1.0,
          "threshold must lie in (0, 1]");
  require(finite(risk_alpha) && risk_alpha >= 0.0, "risk_alpha must be non-negative");
  require(finite(ewma_alpha) && ewma_alpha > 0.0 && ewma_alpha < 1.0,
          "ewma_alpha must lie strictly inside (0, 1)");
  require(finite(ewma_beta) && ewma_beta > 0.0 && ewma_beta < 1.0,
          "ewma_beta must lie strictly inside (0, 1)");
  require(finite(penalty_gamma) && penalty_gamma >= 0.0, "penalty_gamma must be non-negative");
  require(finite(prior_variance) && prior_variance > 0.0, "prior_variance must be positive");
  require(finite(observation_variance) && observation_variance > 0.0,
          "observation_variance must be positive");
  require(finite(cost_mean) && cost_mean > 0.0, "cost_mean must be positive");
  require(finite(cost_stddev) && cost_stddev > 0.0, "cost_stddev must be positive");
  require(finite(recruitment_rate) && recruitment_rate >= 0.0,
          "recruitment_rate must be non-negative");
  require(finite(initial_roi_epsilon) && initial_roi_epsilon > 0.0,
          "initial_roi_epsilon must be positive");
  require(finite(participation_fee) && participation_fee >= 0.0,
          "participation_fee must be non-negative");
  require(finite(tullock_exponent) && tullock_exponent > 0.0,
          "tullock_exponent must be positive");
  require(finite(tolerance_min) && tolerance_min >= 0.0, "tolerance_min must be non-negative");
  require(finite(tolerance_max) && tolerance_max >= tolerance_min,
          "tolerance_max must be at least tolerance_min");
  require(rejoin_patience > 0, "rejoin_patience must be positive");
  require(num_runs > 0, "runs must be positive");
}

double draw_true_cost(Random &rng, ScenarioConfig const &config)
{
  if (!(config.cost_mean > 0.0))
  {
    throw ConfigError("cost_mean must be positive");
  }
  double cost = 0.0;
  do
  {
    cost = rng.gaussian(config.cost_mean, config.cost_stddev);
  } while (!(cost > 0.0));
  return cost;
}

Participant new_participant(ParticipantId id, RoundIndex join_round, Random &rng,
                            ScenarioConfig const &config)
{
  Participant p;
  p.id           = id;
  p.true_cost    = draw_true_cost(rng, config);
  p.assumed_cost = p.true_cost * rng.uniform(kAssumedCostLow, kAssumedCostHigh);
  p.tolerance    = rng.uniform(config.tolerance_min, config.tolerance_max);
  p.estimator    = BidEstimator::seeded(p.assumed_cost);
  p.initial_bid  = initial_bid(p.estimator, config.risk_alpha);
  p.current_bid  = p.initial_bid;
  p.roi          = config.satisfaction_threshold + config.initial_roi_epsilon;
  p.status       = Status::Active;
  p.join_round   = join_round;
  return p;
}

}  // namespace rabc
