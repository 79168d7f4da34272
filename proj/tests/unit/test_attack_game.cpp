#include <doctest.h>

#include "rck/errors.hpp"
#include "rck/fixtures.hpp"
#include "rck/kernel.hpp"
#include "rck/random_frames.hpp"
#include "rck/relaxed_ck.hpp"

using namespace rck;

TEST_CASE("extended rationals") {
  const ExtendedRational ninf = ExtendedRational::minus_infinity();
  CHECK((ninf + Rational(5)).is_minus_infinity());
  CHECK(ninf.scaled(Rational(1, 100)).is_minus_infinity());
  CHECK(ninf < ExtendedRational(Rational(-1000)));
  CHECK(ExtendedRational(Rational(1, 2)) + Rational(1, 4) == ExtendedRational(Rational(3, 4)));
  CHECK(to_string(Rational(3, 6)) == "1/2");
  CHECK(parse_rational("-2/4") == Rational(-1, 2));
  CHECK_THROWS_AS(parse_rational("1/x"), PreconditionError);
}

TEST_CASE("game frames and the play engine") {
  const GameFrame g = build_game_frame(fixtures::example1_spec());
  CHECK(g.frame->history_count() == 4);
  CHECK(g.frame->horizon() == 100);

  const AttackStrategyPair never = AttackStrategyPair::never(g);
  for (std::size_t h = 0; h < 4; ++h) {
    const Outcome o = play(g, never, HistoryId{h});
    CHECK_FALSE(o.attacked);
    CHECK(o.utility == ExtendedRational(Rational(0)));
  }
  CHECK(verify_never_unsuccessful(g, never));

  const SckResult s = compute_sck(g);
  const Outcome o = play(g, s.strategies, g.frame->history("q1z0"));
  CHECK(o.success);
  CHECK(o.utility == ExtendedRational(Rational(1)));
  CHECK(*o.attack_time[0] <= 49);
  CHECK(*o.attack_time[1] <= 99);

  const Event all = Event::all(g.frame);
  const AttackStrategyPair eager = AttackStrategyPair::from_events(g, all, all);
  CHECK_FALSE(verify_never_unsuccessful(g, eager));
  CHECK(expected_welfare(g, eager).expected.is_minus_infinity());
}

TEST_CASE("players that are never born share one pre-birth ken") {
  AttackGameSpec spec = fixtures::tiny_spec();
  for (auto& row : spec.prior) {
    row.state.birth = {spec.periods, spec.periods};
    row.state.observation = {spec.periods, spec.periods};
  }
  const GameFrame g = build_game_frame(spec);
  CHECK(g.frame->ken_count(kAlpha) == 1);
  CHECK(g.frame->ken_count(kBeta) == 1);
  const SckResult s = compute_sck(g);
  CHECK(expected_welfare(g, s.strategies).expected == ExtendedRational(Rational(0)));
}

TEST_CASE("the CK strategy matches the individualized relaxed CK") {
  random::Rng rng(7);
  for (int n = 0; n < 40; ++n) {
    const GameFrame g = build_game_frame(random::random_tiny_game(rng));
    const SckResult s = compute_sck(g);
    CHECK(verify_never_unsuccessful(g, s.strategies));
    for (PlayerId i : {kAlpha, kBeta})
      CHECK(individualized(i, s.witness, s.fact, CkAlgorithm::kleene) == s.witness.anchor(i));
    CHECK(s.ck == ck_at(s.witness, s.fact, CkAlgorithm::reachability));
  }
}

TEST_CASE("tiny games against exhaustive enumeration") {
  const FrontierReport r = brute_force_frontier(build_game_frame(fixtures::tiny_spec(2)));
  CHECK(r.all_hold());
  CHECK(r.ck_nonempty);
  CHECK(r.positive_welfare_equilibrium);

  const GameFrame late = build_game_frame(fixtures::tiny_spec(0));
  const SckResult s = compute_sck(late);
  for (std::size_t h = 0; h < late.frame->history_count(); ++h)
    CHECK_FALSE(play(late, s.strategies, HistoryId{h}).attacked);
  const FrontierReport rl = brute_force_frontier(late);
  CHECK(rl.all_hold());
  CHECK_FALSE(rl.ck_nonempty);
  CHECK_FALSE(rl.positive_welfare_equilibrium);

  CHECK_THROWS_AS(brute_force_frontier(build_game_frame(fixtures::tiny_spec(2)), 1), CapExceeded);
}

TEST_CASE("game spec validation") {
  AttackGameSpec spec = fixtures::tiny_spec();
  spec.prior[0].weight = Rational(1, 2);
  CHECK_THROWS_AS(build_game_frame(spec), PreconditionError);
  AttackGameSpec late = fixtures::tiny_spec();
  late.deadline = {6, 5};
  CHECK_THROWS_AS(build_game_frame(late), PreconditionError);
}
