#pragma once

#include "rabc/model.hpp"

namespace rabc {

// A real-time cost signal folded into the bid during the revision phase.
struct Observation
{
  double value = 0.0;
};

// Entry bid from historical winning-bid statistics: E[b] + risk_alpha * V[b].
// Throws ConfigError for a negative risk_alpha.
double initial_bid(BidEstimator const &estimator, double risk_alpha);

/**
 * Bayesian revision of the previous bid towards an observation:
 *
 *   b' = b + prior_var / (prior_var + obs_var) * (x - b)
 *
 * With `clamp_monotone` the result is max(b, b') so bids never decrease; the
 * result is floored at zero in either mode. Throws UndefinedMetricError when
 * prior_var + obs_var is zero and ConfigError for negative variances.
 */
double bayesian_revise(double prev_bid, Observation obs, double prior_variance,
                       double observation_variance, bool clamp_monotone = true);

// Ranking-only penalty gamma * |final - initial|.
double deviation_penalty(double final_bid, double initial_bid, double gamma);

// Relative bid change weighted by win probability. Throws UndefinedMetricError
// when initial_bid is zero.
double bid_adjustment_impact(double final_bid, double initial_bid, double win_prob);

// Historical success rate rounds_won / rounds_participated, 0 with no history.
double win_probability(Participant const &participant);

// Observation x = cost_estimate + N(0, observation_variance).
Observation sample_observation(double cost_estimate, double observation_variance, Random &rng);

}  // namespace rabc
