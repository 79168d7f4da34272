#ifndef RCK_RANDOM_FRAMES_HPP
#define RCK_RANDOM_FRAMES_HPP

#include <random>

#include "rck/attack_game.hpp"
#include "rck/bdtf.hpp"
#include "rck/probability.hpp"

namespace rck::random {

using Rng = std::mt19937_64;

enum class FrameStyle {
  labels,       // arbitrary ken labels, no temporal structure
  clock_skew,   // per-history birth dates, shared pre-birth ken, perfect recall afterwards
  synchronous   // everybody reads the global clock, information refines over time
};

struct FrameLimits {
  std::size_t max_histories = 6;
  std::size_t max_horizon = 8;
  std::size_t max_players = 3;
};

FramePtr random_frame(Rng& rng, const FrameLimits& limits = {});
FramePtr random_frame(Rng& rng, FrameStyle style, const FrameLimits& limits = {});

/// Each point independently with probability 1/2 (or a random density when `skewed`).
Event random_event(Rng& rng, const FramePtr& frame, bool skewed = true);
/// Union of a random subset of i's kens.
Event random_local_event(Rng& rng, const FramePtr& frame, PlayerId i);
/// Greedy union of random kens of i that keeps the result singular.
Event random_singular_local_event(Rng& rng, const FramePtr& frame, PlayerId i);
Event random_time_invariant_event(Rng& rng, const FramePtr& frame);

/// Random nonempty player subset with random local anchors.
Profile random_profile(Rng& rng, const FramePtr& frame, bool singular = false);
ProbFrame random_prob_frame(Rng& rng, const FramePtr& frame);

/// Single-dimensional spec with D in 3..max_round_trip.
BdtfSpec random_single_dimensional_spec(Rng& rng, std::size_t max_round_trip = 6);
/// Timestamped spec (full timing grid or single-dimensional), at most 4 initial conditions, horizon at most 24.
BdtfSpec random_timestamped_spec(Rng& rng);

/// Small game for exhaustive enumeration.
AttackGameSpec random_tiny_game(Rng& rng);

}  // namespace rck::random

#endif
