#include "rabc/bidding.hpp"

#include <algorithm>
#include <cmath>

namespace rabc {

double initial_bid(BidEstimator const &estimator, double risk_alpha)
{
  if (!(risk_alpha >= 0.0))
  {
    throw ConfigError("risk_alpha must be non-negative");
  }
  double const bid = estimator.historical_mean + risk_alpha * estimator.historical_variance;
  return std::max(bid, 0.0);
}

double bayesian_revise(double prev_bid, Observation obs, double prior_variance,
                       double observation_variance, bool clamp_monotone)
{
  if (prior_variance < 0.0 || observation_variance < 0.0)
  {
    throw ConfigError("bid revision variances must be non-negative");
  }
  double const total = prior_variance + observation_variance;
  if (total == 0.0)
  {
    throw UndefinedMetricError("bid revision gain is undefined for zero total variance");
  }
  double const gain    = prior_variance / total;
  double       revised = prev_bid + gain * (obs.value - prev_bid);
  if (clamp_monotone)
  {
    revised = std::max(prev_bid, revised);
  }
  return std::max(revised, 0.0);
}

double deviation_penalty(double final_bid, double initial_bid, double gamma)
{
  return gamma * std::abs(final_bid - initial_bid);
}

double bid_adjustment_impact(double final_bid, double initial_bid, double win_prob)
{
  if (initial_bid == 0.0)
  {
    throw UndefinedMetricError("bid adjustment impact is undefined for a zero initial bid");
  }
  return (final_bid - initial_bid) / initial_bid * win_prob;
}

double win_probability(Participant const &participant)
{
  if (participant.rounds_participated == 0)
  {
    return 0.0;
  }
  return static_cast<double>(participant.rounds_won) /
         static_cast<double>(participant.rounds_participated);
}

Observation sample_observation(double cost_estimate, double observation_variance, Random &rng)
{
  return Observation{rng.gaussian(cost_estimate, std::sqrt(observation_variance))};
}

}  // namespace rabc
