#include "rck/random_frames.hpp"

#include <algorithm>
#include <numeric>

#include "rck/kernel.hpp"

namespace rck::random {

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

std::vector<std::string> names(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(prefix + std::to_string(k + 1));
  return out;
}

// Random refinement chain of history partitions, one per step; labels stay within n * steps.
std::vector<std::vector<std::int64_t>> refining_chain(Rng& rng, std::size_t n, std::size_t steps) {
  std::vector<std::vector<std::int64_t>> chain;
  std::vector<std::int64_t> cur(n, 0);
  for (std::size_t s = 0; s < steps; ++s) {
    if (s > 0 || coin(rng, 0.3)) {
      // split each cell at random: new label = old label * 2 + bit
      for (auto& l : cur) l = l * 2 + (coin(rng, 0.25) ? 1 : 0);
      // renumber to keep numbers small
      std::vector<std::int64_t> seen;
      for (auto& l : cur) {
        auto it = std::find(seen.begin(), seen.end(), l);
        if (it == seen.end()) {
          seen.push_back(l);
          l = static_cast<std::int64_t>(seen.size() - 1);
        } else {
          l = it - seen.begin();
        }
      }
    }
    chain.push_back(cur);
  }
  return chain;
}

}  // namespace

FramePtr random_frame(Rng& rng, const FrameLimits& limits) {
  const auto style = static_cast<FrameStyle>(uniform(rng, 0, 2));
  return random_frame(rng, style, limits);
}

FramePtr random_frame(Rng& rng, FrameStyle style, const FrameLimits& limits) {
  const std::size_t n = uniform(rng, 1, limits.max_histories);
  const std::size_t H = uniform(rng, 1, limits.max_horizon);
  const std::size_t m = uniform(rng, 1, limits.max_players);
  std::vector<std::vector<std::int64_t>> labels(m, std::vector<std::int64_t>(n * H));
  for (std::size_t i = 0; i < m; ++i) {
    switch (style) {
      case FrameStyle::labels: {
        const std::size_t k = uniform(rng, 1, std::max<std::size_t>(1, n * H / 2));
        for (auto& l : labels[i]) l = static_cast<std::int64_t>(uniform(rng, 0, k - 1));
        break;
      }
      case FrameStyle::synchronous: {
        const auto chain = refining_chain(rng, n, H);
        for (std::size_t h = 0; h < n; ++h)
          for (std::size_t t = 0; t < H; ++t)
            labels[i][h * H + t] = static_cast<std::int64_t>(t * n) + chain[t][h];
        break;
      }
      case FrameStyle::clock_skew: {
        std::vector<std::size_t> birth(n);
        for (auto& z : birth) z = uniform(rng, 0, std::min<std::size_t>(2, H));
        const auto chain = refining_chain(rng, n, H);
        for (std::size_t h = 0; h < n; ++h)
          for (std::size_t t = 0; t < H; ++t)
            labels[i][h * H + t] =
                t < birth[h] ? -1 : static_cast<std::int64_t>((t - birth[h]) * n) + chain[t - birth[h]][h];
        break;
      }
    }
  }
  return make_frame(names("w", n), H, names("p", m), labels);
}

Event random_event(Rng& rng, const FramePtr& frame, bool skewed) {
  const double p = skewed ? std::uniform_real_distribution<double>(0.05, 0.95)(rng) : 0.5;
  Bits b(frame->point_count());
  for (std::size_t k = 0; k < b.size(); ++k) b[k] = coin(rng, p);
  return Event(frame, std::move(b));
}

Event random_local_event(Rng& rng, const FramePtr& frame, PlayerId i) {
  const double p = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
  Bits b(frame->point_count());
  for (KenId k = 0; k < frame->ken_count(i); ++k)
    if (coin(rng, p))
      for (auto idx : frame->ken_members(i, k)) b.set(idx);
  return Event(frame, std::move(b));
}

Event random_singular_local_event(Rng& rng, const FramePtr& frame, PlayerId i) {
  std::vector<KenId> order(frame->ken_count(i));
  std::iota(order.begin(), order.end(), KenId{0});
  std::shuffle(order.begin(), order.end(), rng);
  const double p = std::uniform_real_distribution<double>(0.3, 1.0)(rng);
  Bits b(frame->point_count());
  std::vector<char> used(frame->history_count(), 0);
  for (KenId k : order) {
    if (!coin(rng, p)) continue;
    bool ok = true;
    std::vector<char> mine(frame->history_count(), 0);
    for (auto idx : frame->ken_members(i, k)) {
      const std::size_t h = frame->point_at(idx).history.index;
      if (used[h] || mine[h]) ok = false;
      mine[h] = 1;
    }
    if (!ok) continue;
    for (auto idx : frame->ken_members(i, k)) {
      b.set(idx);
      used[frame->point_at(idx).history.index] = 1;
    }
  }
  return Event(frame, std::move(b));
}

Event random_time_invariant_event(Rng& rng, const FramePtr& frame) {
  HistorySet hs(frame->history_count());
  for (std::size_t h = 0; h < hs.size(); ++h) hs[h] = coin(rng);
  return Event::cylinder(frame, hs);
}

Profile random_profile(Rng& rng, const FramePtr& frame, bool singular) {
  std::vector<std::pair<PlayerId, Event>> anchors;
  while (anchors.empty())
    for (PlayerId i : frame->players())
      if (coin(rng, 0.7))
        anchors.emplace_back(i, singular ? random_singular_local_event(rng, frame, i)
                                         : random_local_event(rng, frame, i));
  return Profile(frame, std::move(anchors));
}

ProbFrame random_prob_frame(Rng& rng, const FramePtr& frame) {
  std::vector<std::size_t> raw(frame->history_count());
  std::size_t total = 0;
  for (auto& w : raw) total += (w = uniform(rng, 1, 6));
  std::vector<Rational> weights;
  for (auto w : raw) weights.emplace_back(static_cast<long>(w), static_cast<long>(total));
  return ProbFrame(frame, std::move(weights));
}

namespace {

void random_initial_conditions(Rng& rng, BdtfSpec& s, std::size_t max_o) {
  const std::size_t n_o = uniform(rng, 1, max_o);
  s.initial_conditions = names("o", n_o);
  for (int i = 0; i < 2; ++i) {
    s.initial_partition[i].clear();
    const std::size_t cells = uniform(rng, 1, n_o);
    for (std::size_t o = 0; o < n_o; ++o) s.initial_partition[i].push_back(static_cast<std::int64_t>(uniform(rng, 0, cells - 1)));
  }
}

SignalRule random_rule(Rng& rng, bool allow_posterior) {
  const std::size_t k = uniform(rng, 0, allow_posterior ? 4 : 3);
  return static_cast<SignalRule>(k);
}

}  // namespace

BdtfSpec random_single_dimensional_spec(Rng& rng, std::size_t max_round_trip) {
  BdtfSpec s;
  random_initial_conditions(rng, s, 3);
  const std::size_t D = uniform(rng, 3, std::max<std::size_t>(3, max_round_trip));
  s.single_dimensional = D;
  s.horizon = uniform(rng, D + 1, 2 * D + 4);
  s.signals = {random_rule(rng, false), random_rule(rng, false)};
  s.margin = 0;
  // timestamped frames must fit the round trip, which ends at 2D here
  s.timestamps = s.horizon > 2 * D && coin(rng, 0.3);
  return s;
}

BdtfSpec random_timestamped_spec(Rng& rng) {
  BdtfSpec s;
  random_initial_conditions(rng, s, 4);
  std::size_t longest = 0;  // largest z_A + d_A + 2 d_B
  if (coin(rng)) {
    const std::size_t D = uniform(rng, 2, 5);
    s.single_dimensional = D;
    longest = (D - 1) + 2 * (D - 1) + 1;
  } else {
    s.z_max = uniform(rng, 0, 1);
    s.d_max = uniform(rng, 1, 2);
    longest = s.z_max + 3 * s.d_max;
  }
  s.timestamps = true;
  s.margin = 2;
  s.horizon = std::min<std::size_t>(24, longest + s.margin + 1 + uniform(rng, 6, 12));
  // posterior signals couple histories at equal subjective times; with free
  // birth dates that recursion can be circular, so they stay single-dimensional
  const bool posteriors = s.single_dimensional.has_value();
  s.signals = {random_rule(rng, posteriors), random_rule(rng, posteriors)};
  if (s.signals[0] == SignalRule::posterior || s.signals[1] == SignalRule::posterior) {
    s.posterior_target.push_back(s.initial_conditions.front());
    if (s.initial_conditions.size() > 2 && coin(rng)) s.posterior_target.push_back(s.initial_conditions.back());
  }
  return s;
}

AttackGameSpec random_tiny_game(Rng& rng) {
  AttackGameSpec g;
  const std::size_t T = uniform(rng, 3, 5);
  g.periods = T;
  g.deadline = {uniform(rng, 0, T - 1), uniform(rng, 0, T - 1)};
  const std::size_t n = uniform(rng, 2, 4);
  std::vector<std::size_t> raw(n);
  std::size_t total = 0;
  for (auto& w : raw) total += (w = uniform(rng, 1, 4));
  for (std::size_t h = 0; h < n; ++h) {
    StateOfNature s;
    s.name = "s" + std::to_string(h + 1);
    s.q = coin(rng, 0.6) ? 1 : 0;
    for (int i = 0; i < 2; ++i) {
      s.birth[i] = coin(rng, 0.8) ? uniform(rng, 0, 1) : uniform(rng, 0, T);
      s.observation[i] = coin(rng, 0.5) ? uniform(rng, 0, T - 1) : T;
      s.delays[i].resize(T);
      for (auto& d : s.delays[i]) d = coin(rng, 0.6) ? uniform(rng, 1, 2) : uniform(rng, 1, T);
    }
    g.prior.push_back({std::move(s), Rational(static_cast<long>(raw[h]), static_cast<long>(total))});
  }
  return g;
}

}  // namespace rck::random
