#include "rck/attack_game.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "rck/errors.hpp"
#include "rck/kernel.hpp"
#include "rck/relaxed_ck.hpp"

namespace rck {

namespace {

void validate(const AttackGameSpec& spec) {
  const std::size_t T = spec.periods;
  if (T == 0) throw PreconditionError("game needs at least one period");
  for (int i = 0; i < 2; ++i)
    if (spec.deadline[i] >= T) throw PreconditionError("deadlines must precede the last period");
  if (spec.prior.empty()) throw PreconditionError("prior must have at least one state");
  if (spec.prior.size() > spec.history_cap)
    throw CapExceeded("prior has " + std::to_string(spec.prior.size()) + " states, cap is " +
                      std::to_string(spec.history_cap));
  Rational sum = 0;
  std::set<std::string> names;
  for (const auto& row : spec.prior) {
    const auto& s = row.state;
    if (!names.insert(s.name).second) throw PreconditionError("duplicate state name '" + s.name + "'");
    if (row.weight <= 0) throw PreconditionError("state weights must be positive");
    sum += row.weight;
    if (s.q != 0 && s.q != 1) throw PreconditionError("attack prospect must be 0 or 1");
    for (int i = 0; i < 2; ++i) {
      if (s.birth[i] > T || s.observation[i] > T) throw PreconditionError("birth/observation beyond the game");
      if (s.delays[i].size() != T) throw PreconditionError("state '" + s.name + "' needs one delay per period");
      for (auto d : s.delays[i])
        if (d < 1 || d > T) throw PreconditionError("delays must lie in 1..periods");
    }
  }
  if (sum != 1) throw PreconditionError("state weights must sum to 1");
}

}  // namespace

Event GameFrame::prospect_one() const {
  HistorySet hs(spec.prior.size());
  for (std::size_t h = 0; h < hs.size(); ++h) hs[h] = spec.prior[h].state.q == 1;
  return Event::cylinder(frame, hs);
}

GameFrame build_game_frame(const AttackGameSpec& spec) {
  validate(spec);
  const std::size_t T = spec.periods, n = spec.prior.size();
  // keys: 0 = pre-birth; else interned (s, transcript, obs q, obs subjective time)
  std::array<std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>, std::int64_t>, 2> keys;
  std::map<std::pair<std::int64_t, std::vector<std::int64_t>>, std::int64_t> chains;
  std::array<std::vector<std::int64_t>, 2> labels{std::vector<std::int64_t>(n * T), std::vector<std::int64_t>(n * T)};

  for (std::size_t h = 0; h < n; ++h) {
    const StateOfNature& o = spec.prior[h].state;
    std::array<std::int64_t, 2> chain{-1, -1};
    for (std::size_t t = 0; t < T; ++t)
      for (int i = 0; i < 2; ++i) {
        const int j = 1 - i;
        if (t < o.birth[i]) {
          labels[i][h * T + t] = 0;
          continue;
        }
        std::vector<std::int64_t> got;
        for (std::size_t s = o.birth[j]; s < t; ++s) {
          const std::size_t d = o.delays[i][s];
          if (d < T && s + d == t) got.push_back(labels[j][h * T + s]);
        }
        std::sort(got.begin(), got.end());
        chain[i] = chains.try_emplace({chain[i], std::move(got)}, static_cast<std::int64_t>(chains.size()))
                       .first->second;
        const bool observed = o.observation[i] >= o.birth[i] && o.observation[i] <= t;
        const auto k = std::make_tuple(static_cast<std::int64_t>(t - o.birth[i]), chain[i],
                                       observed ? o.q : -1,
                                       observed ? static_cast<std::int64_t>(o.observation[i] - o.birth[i]) : -1);
        labels[i][h * T + t] = keys[i].try_emplace(k, static_cast<std::int64_t>(keys[i].size()) + 1).first->second;
      }
  }

  std::vector<std::string> names;
  for (const auto& row : spec.prior) names.push_back(row.state.name);
  GameFrame g{make_frame(std::move(names), T, {"alpha", "beta"}, {labels[0], labels[1]}), spec, {}};
  for (int i = 0; i < 2; ++i)
    for (std::size_t p = 0; p < n * T; ++p)
      if (labels[i][p] == 0) {
        g.pre_birth_ken[i] = g.frame->ken_of(PlayerId{static_cast<std::size_t>(i)}, p);
        break;
      }
  return g;
}

AttackStrategyPair AttackStrategyPair::never(const GameFrame& g) {
  AttackStrategyPair s;
  for (int i = 0; i < 2; ++i) s.initiate[i].assign(g.frame->ken_count(PlayerId{static_cast<std::size_t>(i)}), 0);
  return s;
}

AttackStrategyPair AttackStrategyPair::from_events(const GameFrame& g, const Event& alpha, const Event& beta) {
  AttackStrategyPair s = never(g);
  for (int i = 0; i < 2; ++i) {
    const PlayerId pi{static_cast<std::size_t>(i)};
    const Event k = knows(pi, i == 0 ? alpha : beta);
    for (auto p = k.bits().find_first(); p != Bits::npos; p = k.bits().find_next(p)) {
      const KenId ken = g.frame->ken_of(pi, p);
      if (ken != g.pre_birth_ken[i]) s.initiate[i][ken] = 1;
    }
  }
  return s;
}

namespace {

ExtendedRational utility_of(bool attacked, bool success) {
  if (!attacked) return Rational(0);
  return success ? ExtendedRational(Rational(1)) : ExtendedRational::minus_infinity();
}

bool successful(const AttackGameSpec& spec, int q, const std::array<std::optional<std::size_t>, 2>& at) {
  return q == 1 && at[0] && at[1] && *at[0] <= spec.deadline[0] && *at[1] <= spec.deadline[1];
}

}  // namespace

Outcome play(const GameFrame& g, const AttackStrategyPair& s, HistoryId state) {
  const Frame& f = *g.frame;
  Outcome out;
  for (int i = 0; i < 2; ++i) {
    const PlayerId pi{static_cast<std::size_t>(i)};
    if (s.initiate[i].size() != f.ken_count(pi)) throw PreconditionError("strategy does not match the game frame");
    for (std::size_t t = 0; t < f.horizon(); ++t) {
      const Point p{state, t};
      if (!g.born(pi, p)) continue;
      if (s.initiate[i][f.ken_of(pi, p)]) {
        out.attack_time[i] = t;
        break;
      }
    }
  }
  out.attacked = out.attack_time[0] || out.attack_time[1];
  out.success = out.attacked && successful(g.spec, g.state(state).q, out.attack_time);
  out.utility = utility_of(out.attacked, out.success);
  return out;
}

Welfare expected_welfare(const GameFrame& g, const AttackStrategyPair& s) {
  Welfare w;
  for (std::size_t h = 0; h < g.spec.prior.size(); ++h) {
    const Outcome o = play(g, s, HistoryId{h});
    w.per_state.push_back(o.utility);
    w.expected += o.utility.scaled(g.spec.prior[h].weight);
  }
  return w;
}

bool verify_never_unsuccessful(const GameFrame& g, const AttackStrategyPair& s) {
  for (std::size_t h = 0; h < g.spec.prior.size(); ++h) {
    const Outcome o = play(g, s, HistoryId{h});
    if (o.attacked && !o.success) return false;
  }
  return true;
}

Event deadline_fact(const GameFrame& g, const Event& psi_alpha, const Event& psi_beta) {
  const std::size_t n = g.spec.prior.size();
  HistorySet hs(n);
  for (std::size_t h = 0; h < n; ++h)
    hs[h] = g.spec.prior[h].state.q == 1 && first_time(psi_alpha, HistoryId{h}) <= g.spec.deadline[0] &&
            first_time(psi_beta, HistoryId{h}) <= g.spec.deadline[1];
  return Event::cylinder(g.frame, hs);
}

namespace {

// first point per history whose ken is in the set
Event first_points(const GameFrame& g, PlayerId i, const std::vector<char>& set) {
  const Frame& f = *g.frame;
  std::vector<Point> pts;
  for (std::size_t h = 0; h < f.history_count(); ++h)
    for (std::size_t t = 0; t < f.horizon(); ++t) {
      const Point p{HistoryId{h}, t};
      if (g.born(i, p) && set[f.ken_of(i, p)]) {
        pts.push_back(p);
        break;
      }
    }
  return Event::of_points(g.frame, pts);
}

Profile profile_or_bug(const GameFrame& g, const Event& a, const Event& b) {
  try {
    return Profile(g.frame, {{kAlpha, a}, {kBeta, b}});
  } catch (const PreconditionError& e) {
    throw InvariantViolation(std::string("attack anchors are not local: ") + e.what());
  }
}

}  // namespace

SckResult compute_sck(const GameFrame& g) {
  const Frame& f = *g.frame;
  const std::size_t n = f.history_count(), T = f.horizon();
  const Event q1 = g.prospect_one();
  std::array<std::vector<char>, 2> A;
  for (int i = 0; i < 2; ++i) {
    const PlayerId pi{static_cast<std::size_t>(i)};
    A[i].assign(f.ken_count(pi), 0);
    const Event k = knows(pi, q1);
    for (auto p = k.bits().find_first(); p != Bits::npos; p = k.bits().find_next(p)) A[i][f.ken_of(pi, p)] = 1;
    if (g.pre_birth_ken[i]) A[i][*g.pre_birth_ken[i]] = 0;
  }

  // delete every ken touching a history where the current sets cannot both attack in time
  std::size_t rounds = 0;
  for (;; ++rounds) {
    std::vector<char> bad(n, 0);
    bool any = false;
    for (std::size_t h = 0; h < n; ++h) {
      std::array<std::optional<std::size_t>, 2> first;
      for (int i = 0; i < 2; ++i)
        for (std::size_t t = 0; t < T; ++t) {
          const Point p{HistoryId{h}, t};
          const PlayerId pi{static_cast<std::size_t>(i)};
          if (g.born(pi, p) && A[i][f.ken_of(pi, p)]) {
            first[i] = t;
            break;
          }
        }
      if (!first[0] && !first[1]) continue;
      if (!successful(g.spec, g.state(HistoryId{h}).q, first)) bad[h] = any = 1;
    }
    if (!any) break;
    for (int i = 0; i < 2; ++i) {
      const PlayerId pi{static_cast<std::size_t>(i)};
      for (std::size_t h = 0; h < n; ++h)
        if (bad[h])
          for (std::size_t t = 0; t < T; ++t) A[i][f.ken_of(pi, Point{HistoryId{h}, t})] = 0;
    }
    if (rounds > n) throw InvariantViolation("attack-set elimination did not stabilize");
  }

  const Event psi_a = first_points(g, kAlpha, A[0]);
  const Event psi_b = first_points(g, kBeta, A[1]);
  Profile witness = profile_or_bug(g, psi_a, psi_b);
  Event fact = deadline_fact(g, psi_a, psi_b);
  Event ck = ck_at(witness, fact, CkAlgorithm::kleene);
  // the construction must coincide with the individualized relaxed common knowledge
  for (PlayerId i : {kAlpha, kBeta})
    if (individualized(i, witness, fact, CkAlgorithm::kleene) != witness.anchor(i))
      throw InvariantViolation("attack set of '" + f.player_name(i) +
                               "' differs from its individualized common-knowledge event");
  AttackStrategyPair s;
  s.initiate = A;
  return SckResult{std::move(s), std::move(witness), std::move(fact), std::move(ck), rounds};
}

namespace {

// One attack-time vector per outcome-distinct strategy of a player.
struct Strategy {
  std::vector<int> attack;  // per history, -1 = never
  std::vector<char> kens;
};

class StrategyEnumerator {
 public:
  StrategyEnumerator(const GameFrame& g, PlayerId i, std::size_t cap) : g_(g), i_(i), cap_(cap) {
    const Frame& f = *g.frame;
    for (std::size_t t = 0; t < f.horizon(); ++t)
      for (std::size_t h = 0; h < f.history_count(); ++h) {
        const Point p{HistoryId{h}, t};
        if (g.born(i, p)) order_.push_back(p);
      }
  }

  std::vector<Strategy> run() {
    const Frame& f = *g_.frame;
    rec(0, std::vector<signed char>(f.ken_count(i_), -1), std::vector<int>(f.history_count(), -1));
    return std::move(out_);
  }

 private:
  // branch on a ken the first time it shows up at a history that has not attacked yet
  void rec(std::size_t pos, std::vector<signed char> decided, std::vector<int> attack) {
    const Frame& f = *g_.frame;
    for (; pos < order_.size(); ++pos) {
      const Point p = order_[pos];
      if (attack[p.history.index] >= 0) continue;
      const KenId k = f.ken_of(i_, p);
      if (decided[k] == 0) continue;
      if (decided[k] < 0) {
        auto d2 = decided;
        d2[k] = 0;
        rec(pos + 1, std::move(d2), attack);
        decided[k] = 1;
      }
      attack[p.history.index] = static_cast<int>(p.time);
    }
    Strategy s{std::move(attack), std::vector<char>(decided.size())};
    for (std::size_t k = 0; k < decided.size(); ++k) s.kens[k] = decided[k] == 1;
    out_.push_back(std::move(s));
    if (out_.size() > cap_) throw CapExceeded("attack strategies of one player exceed the cap");
  }

  const GameFrame& g_;
  PlayerId i_;
  std::size_t cap_;
  std::vector<Point> order_;
  std::vector<Strategy> out_;
};

constexpr std::int64_t kMinusInf = std::numeric_limits<std::int64_t>::min();

}  // namespace

FrontierReport brute_force_frontier(const GameFrame& g, std::size_t cap) {
  const Frame& f = *g.frame;
  const std::size_t n = f.history_count();
  const auto A = StrategyEnumerator(g, kAlpha, cap).run();
  const auto B = StrategyEnumerator(g, kBeta, cap).run();
  FrontierReport r;
  r.alpha_strategies = A.size();
  r.beta_strategies = B.size();
  if (A.size() * B.size() > cap)
    throw CapExceeded(std::to_string(A.size()) + " x " + std::to_string(B.size()) + " strategy pairs exceed the cap");

  // weights on a common integer scale
  boost::multiprecision::cpp_int L = 1;
  for (const auto& row : g.spec.prior) L = boost::multiprecision::lcm(L, denominator(row.weight));
  std::vector<std::int64_t> wint;
  for (const auto& row : g.spec.prior) {
    boost::multiprecision::cpp_int v = numerator(row.weight) * (L / denominator(row.weight));
    if (v > std::numeric_limits<std::int32_t>::max()) throw CapExceeded("state weights are too fine-grained");
    wint.push_back(static_cast<std::int64_t>(v));
  }

  auto state_utility = [&](const Strategy& a, const Strategy& b, std::size_t h) -> int {
    std::array<std::optional<std::size_t>, 2> at;
    if (a.attack[h] >= 0) at[0] = static_cast<std::size_t>(a.attack[h]);
    if (b.attack[h] >= 0) at[1] = static_cast<std::size_t>(b.attack[h]);
    if (!at[0] && !at[1]) return 0;
    return successful(g.spec, g.state(HistoryId{h}).q, at) ? 1 : -1;  // -1 stands for minus infinity
  };
  auto expected = [&](const Strategy& a, const Strategy& b) -> std::int64_t {
    std::int64_t sum = 0;
    for (std::size_t h = 0; h < n; ++h) {
      const int u = state_utility(a, b, h);
      if (u < 0) return kMinusInf;
      sum += u * wint[h];
    }
    return sum;
  };

  const SckResult sck = compute_sck(g);
  Strategy sa{std::vector<int>(n, -1), sck.strategies.initiate[0]};
  Strategy sb{std::vector<int>(n, -1), sck.strategies.initiate[1]};
  for (std::size_t h = 0; h < n; ++h) {
    const Outcome o = play(g, sck.strategies, HistoryId{h});
    if (o.attack_time[0]) sa.attack[h] = static_cast<int>(*o.attack_time[0]);
    if (o.attack_time[1]) sb.attack[h] = static_cast<int>(*o.attack_time[1]);
  }
  const std::int64_t u_sck = expected(sa, sb);
  r.sck_never_unsuccessful = verify_never_unsuccessful(g, sck.strategies);
  r.ck_nonempty = !sck.ck.is_empty();

  std::vector<std::int64_t> col_max(B.size(), kMinusInf), row_max(A.size(), kMinusInf);
  r.pareto = r.earliest = r.success_iff_ck = true;
  for (std::size_t a = 0; a < A.size(); ++a)
    for (std::size_t b = 0; b < B.size(); ++b) {
      const std::int64_t u = expected(A[a], B[b]);
      col_max[b] = std::max(col_max[b], u);
      row_max[a] = std::max(row_max[a], u);
      if (u == kMinusInf) continue;
      ++r.never_unsuccessful_pairs;
      for (std::size_t h = 0; h < n; ++h) {
        if (state_utility(sa, sb, h) < state_utility(A[a], B[b], h)) r.pareto = false;
        if (A[a].attack[h] >= 0 && (sa.attack[h] < 0 || sa.attack[h] > A[a].attack[h])) r.earliest = false;
        if (B[b].attack[h] >= 0 && (sb.attack[h] < 0 || sb.attack[h] > B[b].attack[h])) r.earliest = false;
      }
      // the pair's own attack points must be its individualized common knowledge
      std::vector<Point> pa, pb;
      for (std::size_t h = 0; h < n; ++h) {
        if (A[a].attack[h] >= 0) pa.push_back(Point{HistoryId{h}, static_cast<std::size_t>(A[a].attack[h])});
        if (B[b].attack[h] >= 0) pb.push_back(Point{HistoryId{h}, static_cast<std::size_t>(B[b].attack[h])});
      }
      const Event ea = Event::of_points(g.frame, pa), eb = Event::of_points(g.frame, pb);
      try {
        const Profile prof(g.frame, {{kAlpha, ea}, {kBeta, eb}});
        const Event fact = deadline_fact(g, ea, eb);
        if (individualized(kAlpha, prof, fact, CkAlgorithm::kleene) != ea ||
            individualized(kBeta, prof, fact, CkAlgorithm::kleene) != eb)
          r.success_iff_ck = false;
      } catch (const PreconditionError&) {
        r.success_iff_ck = false;
      }
    }

  r.nash = true;
  for (const auto& a : A)
    if (expected(a, sb) > u_sck) r.nash = false;
  for (const auto& b : B)
    if (expected(sa, b) > u_sck) r.nash = false;

  for (std::size_t a = 0; a < A.size() && !r.positive_welfare_equilibrium; ++a)
    for (std::size_t b = 0; b < B.size(); ++b) {
      const std::int64_t u = expected(A[a], B[b]);
      if (u > 0 && u == col_max[b] && u == row_max[a]) {
        r.positive_welfare_equilibrium = true;
        break;
      }
    }
  r.corollary = r.positive_welfare_equilibrium == r.ck_nonempty;
  return r;
}

}  // namespace rck
