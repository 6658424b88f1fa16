#include "rabc/engagement.hpp"

#include "rabc/bidding.hpp"

#include <algorithm>

namespace rabc {

namespace {

void check_weight(double w, char const *name)
{
  if (!(w > 0.0 && w < 1.0))
  {
    throw ConfigError(std::string(name) + " must lie strictly inside (0, 1)");
  }
}

}  // namespace

double update_participation(double prev, ParticipationEvent event, double ewma_alpha)
{
  check_weight(ewma_alpha, "ewma_alpha");
  double const e = event == ParticipationEvent::Present ? 1.0 : 0.0;
  return ewma_alpha * e + (1.0 - ewma_alpha) * prev;
}

double update_earnings(double prev, bool won, double amount, double ewma_beta)
{
  check_weight(ewma_beta, "ewma_beta");
  if (won)
  {
    return ewma_beta * amount + (1.0 - ewma_beta) * prev;
  }
  return (1.0 - ewma_beta) * prev;
}

double roi_active(double avg_earnings, double participation_freq, double cost, double tolerance)
{
  double const denominator = participation_freq * cost + tolerance;
  if (denominator == 0.0)
  {
    throw UndefinedMetricError("ROI is undefined with zero participation and zero tolerance");
  }
  return (avg_earnings + tolerance) / denominator;
}

double roi_estimate_dropped(Participant const &participant, double projected_win_bid,
                            ScenarioConfig const &config)
{
  double const next_p = update_participation(participant.participation_freq,
                                             ParticipationEvent::Present, config.ewma_alpha);
  double const next_m =
      update_earnings(participant.avg_earnings, true, projected_win_bid, config.ewma_beta);
  return roi_active(next_m, next_p, participant.assumed_cost, participant.tolerance);
}

void record_participation(Participant &participant, bool won, double payment,
                          ScenarioConfig const &config)
{
  ++participant.rounds_participated;
  if (won)
  {
    ++participant.rounds_won;
  }
  participant.participation_freq = update_participation(
      participant.participation_freq, ParticipationEvent::Present, config.ewma_alpha);
  participant.avg_earnings =
      update_earnings(participant.avg_earnings, won, payment, config.ewma_beta);
  if (participant.rounds_participated > 1)
  {
    participant.roi = roi_active(participant.avg_earnings, participant.participation_freq,
                                 participant.cost_estimate(), participant.tolerance);
  }
}

void record_absence(Participant &participant, ScenarioConfig const &config)
{
  if (config.freeze_dropped_trackers)
  {
    return;
  }
  participant.participation_freq = update_participation(
      participant.participation_freq, ParticipationEvent::Absent, config.ewma_alpha);
  participant.avg_earnings = update_earnings(participant.avg_earnings, false, 0.0, config.ewma_beta);
}

Transition lifecycle_step(Participant &participant, RoundOutcome const &outcome,
                          ScenarioConfig const &config)
{
  double const threshold = config.satisfaction_threshold;
  switch (participant.status)
  {
  case Status::Exited:
    return Transition::None;

  case Status::Active:
    if (outcome.lowest_winning_bid)
    {
      participant.estimator.absorb(*outcome.lowest_winning_bid);
    }
    if (participant.roi < threshold)
    {
      participant.transition_to(Status::Dropped);
      participant.rounds_below_threshold = 0;
      return Transition::Dropped;
    }
    return Transition::None;

  case Status::Dropped:
    if (outcome.highest_winning_bid)
    {
      double const price    = *outcome.highest_winning_bid;
      double const estimate = roi_estimate_dropped(participant, price, config);
      if (estimate >= threshold)
      {
        participant.transition_to(Status::Active);
        participant.estimator.absorb(price);
        participant.initial_bid = std::max(initial_bid(participant.estimator, config.risk_alpha),
                                           participant.cost_estimate());
        participant.current_bid            = participant.initial_bid;
        participant.roi                    = estimate;
        participant.rounds_below_threshold = 0;
        return Transition::Rejoined;
      }
    }
    if (++participant.rounds_below_threshold >= config.rejoin_patience)
    {
      participant.transition_to(Status::Exited);
      return Transition::Exited;
    }
    return Transition::None;
  }
  return Transition::None;
}

}  // namespace rabc
