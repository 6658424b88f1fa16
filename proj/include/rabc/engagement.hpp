#pragma once

#include "rabc/model.hpp"

#include <optional>

namespace rabc {

// e_r: whether the participant bid in a round.
enum class ParticipationEvent : int
{
  Absent  = 0,
  Present = 1,
};

// p' = alpha * e + (1 - alpha) * p. Throws ConfigError unless alpha is in (0,1).
double update_participation(double prev, ParticipationEvent event, double ewma_alpha);

// m' = beta * amount + (1 - beta) * m on a win, (1 - beta) * m otherwise.
double update_earnings(double prev, bool won, double amount, double ewma_beta);

// (m + tolerance) / (p * cost + tolerance). Throws UndefinedMetricError when
// the denominator is zero.
double roi_active(double avg_earnings, double participation_freq, double cost, double tolerance);

/**
 * Next-round ROI a dropped participant expects if it rejoins and wins at
 * `projected_win_bid`: both trackers are advanced one hypothetical round
 * (participation present, earnings on a win) and the ratio uses the assumed
 * cost. The participant is not modified.
 */
double roi_estimate_dropped(Participant const &participant, double projected_win_bid,
                            ScenarioConfig const &config);

// Public information revealed at the end of a round.
struct RoundOutcome
{
  std::optional<double> lowest_winning_bid;
  // Marginal winning price; the rejoin signal for dropped participants.
  std::optional<double> highest_winning_bid;
};

enum class Transition
{
  None,
  Dropped,
  Rejoined,
  Exited,
};

/**
 * Tracker and ROI update for a participant that bid this round.
 *
 * ROI is left at its seeded value on the participant's first ever bid, so a
 * newcomer does not leave after losing its first round.
 */
void record_participation(Participant &participant, bool won, double payment,
                          ScenarioConfig const &config);

// Trackers of a participant sitting the round out decay (e = 0, loss branch)
// unless freeze_dropped_trackers is set.
void record_absence(Participant &participant, ScenarioConfig const &config);

/**
 * End-of-round status decision.
 *
 *   Active:  folds the lowest winning bid into its estimator, then drops when
 *            roi < threshold.
 *   Dropped: rejoins when the rejoin estimate at the highest winning bid is
 *            >= threshold. A rejoiner absorbs that price into its estimator and
 *            re-enters with a fresh entry bid, floored at its own cost
 *            estimate. Otherwise it counts a round below threshold and exits
 *            after rejoin_patience such rounds.
 *   Exited:  never changes.
 */
Transition lifecycle_step(Participant &participant, RoundOutcome const &outcome,
                          ScenarioConfig const &config);

}  // namespace rabc
