#ifndef RCK_FIXTURES_HPP
#define RCK_FIXTURES_HPP

#include "rck/attack_game.hpp"
#include "rck/bdtf.hpp"
#include "rck/probability.hpp"

namespace rck::fixtures {

/// alpha sends, beta receives one or two periods later: single-dimensional D = 3, one initial condition, H = 6.
BdtfSpec hm_spec();
/// Same timing with timestamps and a horizon long enough for the round-trip analysis.
BdtfSpec hm_timestamped_spec();
/// D = 2: both delays are 1, so the round-trip hypothesis fails.
BdtfSpec control_spec();
/// Two initial conditions, alpha informed and signalling its ken, beta uninformed.
BdtfSpec refinement_spec(std::size_t round_trip, std::size_t horizon, bool timestamps);
/// Four equally likely states; alpha splits {1,2}{3,4}, beta splits {1,2,3}{4}; target {1,4}.
BdtfSpec gp82_spec();

struct HmEvents {
  Event send;  // [tau_alpha = 0]
  Event recv;  // [tau_beta = 0]
};
HmEvents hm_events(const BdtfFrame& bf);

/// The two message histories plus a third where alpha sends exactly as in the first and beta never hears anything.
FramePtr lost_message_frame();

/// Two histories, heads and tails, weight 1/2 each; alpha learns the coin at time 1, beta never does. H = 3.
ProbFrame coin_frame();

AttackGameSpec example1_spec();
AttackGameSpec example2_spec();
AttackGameSpec example3_spec();
/// Example-3 shape at T = 6 with deadlines (t_hat_alpha, 5) and beta born at 0 or never.
AttackGameSpec tiny_spec(std::size_t t_hat_alpha = 2);

}  // namespace rck::fixtures

#endif
