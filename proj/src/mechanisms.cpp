#include "rabc/mechanisms.hpp"

#include "rabc/bidding.hpp"
#include "rabc/engagement.hpp"
#include "rabc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rabc {

std::vector<Award> select_winners_ra_abc(std::span<BidEntry const> bids, std::size_t winners)
{
  std::vector<BidEntry> ranked(bids.begin(), bids.end());
  std::sort(ranked.begin(), ranked.end(), [](BidEntry const &a, BidEntry const &b) {
    double const sa = a.bid + a.penalty;
    double const sb = b.bid + b.penalty;
    if (sa != sb)
    {
      return sa < sb;
    }
    if (a.participation_freq != b.participation_freq)
    {
      return a.participation_freq > b.participation_freq;
    }
    return a.id < b.id;
  });

  std::size_t const  count = std::min(winners, ranked.size());
  std::vector<Award> awards;
  awards.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
  {
    awards.push_back({ranked[i].id, ranked[i].bid});
  }
  return awards;
}

std::vector<ParticipantId> select_winners_tullock(std::span<EffortEntry const> efforts,
                                                  std::size_t winners, double rho, Random &rng)
{
  if (!(rho > 0.0))
  {
    throw ConfigError("tullock exponent must be positive");
  }
  std::vector<ParticipantId> ids;
  std::vector<double>        weights;
  ids.reserve(efforts.size());
  weights.reserve(efforts.size());
  for (auto const &e : efforts)
  {
    if (!(e.effort >= 0.0))
    {
      throw ConfigError("tullock efforts must be non-negative");
    }
    ids.push_back(e.id);
    weights.push_back(std::pow(e.effort, rho));
  }

  std::size_t const          count = std::min(winners, ids.size());
  std::vector<ParticipantId> chosen;
  chosen.reserve(count);
  for (std::size_t draw = 0; draw < count; ++draw)
  {
    double const total = std::accumulate(weights.begin(), weights.end(), 0.0);
    double const u     = rng.uniform();
    std::size_t  pick  = 0;
    if (total > 0.0)
    {
      double const target = u * total;
      double       acc    = 0.0;
      pick                = weights.size();
      std::size_t last_positive = 0;
      for (std::size_t i = 0; i < weights.size(); ++i)
      {
        if (weights[i] > 0.0)
        {
          last_positive = i;
        }
        acc += weights[i];
        if (target < acc)
        {
          pick = i;
          break;
        }
      }
      // Rounding can leave target == acc at the end of the scan.
      if (pick == weights.size())
      {
        pick = last_positive;
      }
    }
    else
    {
      pick = std::min(static_cast<std::size_t>(u * static_cast<double>(weights.size())),
                      weights.size() - 1);
    }
    chosen.push_back(ids[pick]);
    ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(pick));
    weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return chosen;
}

MechanismEngine::MechanismEngine(ScenarioConfig config)
  : config_(std::move(config))
  , rng_(config_.seed)
{
  config_.validate();
  participants_.reserve(config_.initial_population);
  for (std::uint32_t i = 0; i < config_.initial_population; ++i)
  {
    participants_.push_back(new_participant(i, 0, rng_, config_));
  }
}

std::vector<Award> MechanismEngine::select_winners(std::span<std::size_t const> bidders)
{
  if (config_.mechanism == Mechanism::Tullock)
  {
    std::vector<EffortEntry> efforts;
    efforts.reserve(bidders.size());
    for (auto i : bidders)
    {
      auto const &p = participants_[i];
      double const bid = std::max(p.current_bid, std::numeric_limits<double>::min());
      efforts.push_back({p.id, 1.0 / bid});
    }
    auto const ids =
        select_winners_tullock(efforts, config_.winners_per_round, config_.tullock_exponent, rng_);
    std::vector<Award> awards;
    awards.reserve(ids.size());
    for (auto id : ids)
    {
      awards.push_back({id, config_.cost_mean});
    }
    return awards;
  }

  std::vector<BidEntry> entries;
  entries.reserve(bidders.size());
  for (auto i : bidders)
  {
    auto const &p = participants_[i];
    entries.push_back({p.id, p.current_bid,
                       deviation_penalty(p.current_bid, p.initial_bid, config_.penalty_gamma),
                       p.participation_freq});
  }
  return select_winners_ra_abc(entries, config_.winners_per_round);
}

RoundRecord const &MechanismEngine::advance_round()
{
  if (finished())
  {
    throw StateError("engine already played all " + std::to_string(config_.num_rounds) +
                     " rounds");
  }
  RoundRecord record;
  record.round = round_ + 1;

  // 1. Revision phase.
  std::vector<std::size_t> bidders;
  for (std::size_t i = 0; i < participants_.size(); ++i)
  {
    auto &p = participants_[i];
    if (p.status != Status::Active)
    {
      continue;
    }
    auto const obs = sample_observation(p.cost_estimate(), config_.observation_variance, rng_);
    p.current_bid  = bayesian_revise(p.current_bid, obs, config_.prior_variance,
                                     config_.observation_variance, config_.clamp_monotone);
    bidders.push_back(i);
  }
  record.active_count = static_cast<std::uint32_t>(bidders.size());

  // 2. Winner selection.
  auto const awards = select_winners(bidders);

  // 3. Winners perform the task. Accuracy only counts realized costs known
  //    before this round's bid.
  std::vector<double> won_payment(participants_.size(), -1.0);
  double              bar_sum   = 0.0;
  std::size_t         bar_count = 0;
  std::optional<double> lowest;
  std::optional<double> highest;
  for (auto const &a : awards)
  {
    auto &p = participants_[a.id];
    if (p.knows_true_cost)
    {
      bar_sum += bar(p.current_bid, p.true_cost);
      ++bar_count;
    }
    p.knows_true_cost = true;
    won_payment[a.id] = a.payment;
    record.winner_ids.push_back(a.id);
    record.payments.push_back(a.payment);
    lowest  = lowest ? std::min(*lowest, a.payment) : a.payment;
    highest = highest ? std::max(*highest, a.payment) : a.payment;
  }
  record.auction_cost = auction_cost(record.payments);
  if (bar_count > 0)
  {
    record.mean_bar = bar_sum / static_cast<double>(bar_count);
  }

  // 4. Trackers and ROI.
  double bai_sum = 0.0;
  double roi_sum = 0.0;
  double net_sum = 0.0;
  for (auto i : bidders)
  {
    auto      &p   = participants_[i];
    bool const won = won_payment[i] >= 0.0;
    double const payment = won ? won_payment[i] : 0.0;
    record_participation(p, won, payment, config_);
    bai_sum += bid_adjustment_impact(p.current_bid, p.initial_bid, win_probability(p));
    roi_sum += p.roi;
    net_sum += (won ? payment - p.true_cost : 0.0) - config_.participation_fee;
  }
  for (auto &p : participants_)
  {
    if (p.status == Status::Dropped)
    {
      record_absence(p, config_);
    }
  }
  if (!bidders.empty())
  {
    auto const n           = static_cast<double>(bidders.size());
    record.mean_bai         = bai_sum / n;
    record.mean_roi         = roi_sum / n;
    record.mean_net_utility = net_sum / n;
  }

  // 5. Lifecycle. The revealed prices are the winning bids for the reverse
  //    auctions and the prize for Tullock.
  RoundOutcome const outcome{lowest, highest};
  for (auto &p : participants_)
  {
    switch (lifecycle_step(p, outcome, config_))
    {
    case Transition::Dropped:
      ++record.dropped_this_round;
      break;
    case Transition::Rejoined:
      ++record.rejoined_this_round;
      break;
    case Transition::Exited:
      ++record.exited_this_round;
      break;
    case Transition::None:
      break;
    }
  }

  round_ = record.round;

  // 6. Recruitment.
  if (config_.mechanism == Mechanism::RaAbcDr)
  {
    record.recruited_this_round = static_cast<std::uint32_t>(recruit());
  }

  // 7. Fairness over the population after recruitment.
  auto const freqs = tally_wins(participants_, round_, config_.mpi_population).frequencies();
  if (!freqs.empty())
  {
    record.mpi = mpi(freqs);
  }

  history_.push_back(std::move(record));
  return history_.back();
}

std::vector<RoundRecord> const &MechanismEngine::run()
{
  while (!finished())
  {
    advance_round();
  }
  return history_;
}

std::size_t MechanismEngine::recruit()
{
  if (config_.mechanism != Mechanism::RaAbcDr)
  {
    throw StateError("recruitment is only available to the ra-abcdr mechanism");
  }
  auto const count = rng_.poisson(config_.recruitment_rate);
  for (std::uint64_t k = 0; k < count; ++k)
  {
    auto const id = static_cast<ParticipantId>(participants_.size());
    participants_.push_back(new_participant(id, round_, rng_, config_));
  }
  return static_cast<std::size_t>(count);
}

}  // namespace rabc
