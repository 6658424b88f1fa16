#pragma once

#include "rabc/model.hpp"

#include <span>
#include <vector>

namespace rabc {

struct BidEntry
{
  ParticipantId id                 = 0;
  double        bid                = 0.0;
  double        penalty            = 0.0;
  double        participation_freq = 0.0;
};

struct Award
{
  ParticipantId id      = 0;
  double        payment = 0.0;
};

/**
 * First-price reverse auction with ranking penalties.
 *
 * Bids are ranked by bid + penalty ascending; ties go to the higher
 * participation frequency, then the lower id. The first min(W, |bids|) entries
 * win and each is paid its own bid (the penalty never affects payment).
 */
std::vector<Award> select_winners_ra_abc(std::span<BidEntry const> bids, std::size_t winners);

struct EffortEntry
{
  ParticipantId id     = 0;
  double        effort = 0.0;
};

/**
 * Tullock lottery contest. Draws min(W, |efforts|) distinct winners one at a
 * time; each draw picks a remaining candidate with probability
 * effort^rho / sum(effort^rho) over the remaining candidates, or uniformly when
 * every remaining weight is zero. Each draw consumes one uniform() from `rng`.
 */
std::vector<ParticipantId> select_winners_tullock(std::span<EffortEntry const> efforts,
                                                  std::size_t winners, double rho, Random &rng);

/**
 * Round-advancing state machine for one mechanism and one seed.
 *
 * Participant ids equal their index in participants(). Each advance_round():
 *   1. every Active participant revises its bid against a noisy observation
 *      of its own cost estimate;
 *   2. winners are selected (reverse auction, or lottery with effort 1/bid
 *      and a fixed prize of cost_mean per winner for Tullock);
 *   3. winners perform the task and learn their true cost;
 *   4. bidders update participation, earnings and ROI; dropped participants'
 *      trackers decay;
 *   5. lifecycle transitions (drop, rejoin, exit);
 *   6. RA-ABCDR only: Poisson recruitment of fresh participants;
 *   7. round metrics are appended to history().
 */
class MechanismEngine
{
public:
  // Validates `config`; uses config.seed for the engine's random stream.
  explicit MechanismEngine(ScenarioConfig config);

  // Throws StateError once num_rounds have been played.
  RoundRecord const &advance_round();

  // Plays all remaining rounds.
  std::vector<RoundRecord> const &run();

  // Adds Poisson(recruitment_rate) participants joining at the current round.
  // Throws StateError for anything but RA-ABCDR.
  std::size_t recruit();

  bool finished() const { return round_ >= config_.num_rounds; }

  ScenarioConfig const           &config() const { return config_; }
  std::vector<Participant> const &participants() const { return participants_; }
  std::vector<RoundRecord> const &history() const { return history_; }
  RoundIndex                      round() const { return round_; }

private:
  std::vector<Award> select_winners(std::span<std::size_t const> bidders);

  ScenarioConfig           config_;
  Random                   rng_;
  std::vector<Participant> participants_;
  std::vector<RoundRecord> history_;
  RoundIndex               round_ = 0;
};

}  // namespace rabc
