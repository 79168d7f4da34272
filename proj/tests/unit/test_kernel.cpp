#include <doctest.h>

#include "../oracles.hpp"
#include "rck/errors.hpp"
#include "rck/fixtures.hpp"
#include "rck/kernel.hpp"
#include "rck/random_frames.hpp"

using namespace rck;

namespace {

struct Hm {
  BdtfFrame bf = build_bdtf_frame(fixtures::hm_spec());
  FramePtr f = bf.frame;
  fixtures::HmEvents ev = fixtures::hm_events(bf);
  HistoryId w1{0}, w2{1};
};

}  // namespace

TEST_CASE("frame construction canonicalizes ken labels") {
  auto a = make_frame({"a", "b"}, 2, {"p"}, {{7, 7, 3, 3}});
  auto b = make_frame({"a", "b"}, 2, {"p"}, {{0, 0, 1, 1}});
  CHECK(*a == *b);
  CHECK(a->ken_count(PlayerId{0}) == 2);
  CHECK(a->ken_of(PlayerId{0}, Point{HistoryId{1}, 0}) == 1);
  auto c = make_frame({"a", "b"}, 2, {"p"}, {{0, 1, 1, 0}});
  CHECK_FALSE(*a == *c);
}

TEST_CASE("frame construction rejects malformed input") {
  CHECK_THROWS_AS(make_frame({}, 1, {"p"}, {{}}), PreconditionError);
  CHECK_THROWS_AS(make_frame({"a"}, 0, {"p"}, {{}}), PreconditionError);
  CHECK_THROWS_AS(make_frame({"a"}, 1, {}, {}), PreconditionError);
  CHECK_THROWS_AS(make_frame({"a"}, 2, {"p"}, {{0}}), PreconditionError);
  CHECK_THROWS_AS(make_frame({"a", "a"}, 1, {"p"}, {{0, 0}}), PreconditionError);
  auto f = make_frame({"a"}, 1, {"p"}, {{0}});
  CHECK_THROWS_AS(f->player("q"), PreconditionError);
  CHECK_THROWS_AS(Event::of_points(f, {Point{HistoryId{0}, 3}}), PreconditionError);
}

TEST_CASE("event algebra") {
  Hm hm;
  const Event all = Event::all(hm.f), none = Event::empty(hm.f);
  CHECK(none.complement() == all);
  CHECK(implies(hm.ev.send, hm.ev.send) == all);
  const Event expected = Event::of_points(hm.f, {Point{hm.w1, 0}, Point{hm.w2, 0}}).complement();
  CHECK(implies(hm.ev.send, hm.ev.recv) == expected);
  CHECK((hm.ev.send | hm.ev.recv) - hm.ev.recv == hm.ev.send);
  CHECK((hm.ev.send & hm.ev.recv).is_empty());

  const std::vector<Event> two{hm.ev.send, hm.ev.recv};
  CHECK(event_algebra(EventOp::unite, two) == (hm.ev.send | hm.ev.recv));
  CHECK(event_algebra(EventOp::difference, two) == hm.ev.send);
  CHECK_THROWS_AS(event_algebra(EventOp::complement, two), PreconditionError);
  CHECK_THROWS_AS(event_algebra(EventOp::intersect, std::span<const Event>{}), PreconditionError);

  Hm other;
  CHECK_THROWS_AS(hm.ev.send & other.ev.send, FrameMismatch);
}

TEST_CASE("knowledge on the two-history message frame") {
  Hm hm;
  const Event pair = Event::of_points(hm.f, {Point{hm.w1, 1}, Point{hm.w2, 1}});
  CHECK(knows(kAlpha, pair) == pair);
  CHECK(knows(kAlpha, Event::all(hm.f)).is_all());
  CHECK(knows(kAlpha, Event::empty(hm.f)).is_empty());
  CHECK_FALSE(is_local(kBeta, Event::of_points(hm.f, {Point{hm.w1, 1}})));
  CHECK(hm.f->ken_of(kBeta, Point{hm.w1, 1}) == hm.f->ken_of(kBeta, Point{hm.w2, 2}));
  CHECK(histories_of(hm.ev.recv).count() == 2);
  CHECK(is_singular(hm.ev.recv));
  CHECK(first_time(hm.ev.recv, hm.w2) == 2);

  const PlayerId both[] = {kAlpha, kBeta};
  const Event sent_after_zero = diamond(hm.ev.send) - Event::of_points(hm.f, {Point{hm.w1, 0}, Point{hm.w2, 0}});
  CHECK(ck_traditional(both, sent_after_zero).is_empty());
  CHECK_THROWS_AS(knows(PlayerId{5}, pair), PreconditionError);
}

TEST_CASE("temporal operators") {
  Hm hm;
  CHECK(diamond(hm.ev.send).is_all());
  CHECK(box(hm.ev.send).is_empty());
  CHECK(is_time_invariant(diamond(hm.ev.recv)));
  CHECK_FALSE(is_time_invariant(hm.ev.recv));
  CHECK_FALSE(is_singular(diamond(hm.ev.recv)));
}

TEST_CASE("kernel agrees with the naive oracles on random frames") {
  random::Rng rng(11);
  for (int n = 0; n < 200; ++n) {
    const FramePtr f = random::random_frame(rng);
    const Event phi = random::random_event(rng, f);
    const auto phis = oracle::to_set(phi);
    for (PlayerId i : f->players()) {
      CHECK(oracle::to_set(knows(i, phi)) == oracle::knows(*f, i, phis));
      CHECK(is_local(i, phi) == oracle::is_local(*f, i, phis));
    }
    const auto group = f->players();
    CHECK(oracle::to_set(ck_traditional(group, phi)) == oracle::ck_traditional(*f, group, phis));
    const TraditionalCk layers = ck_traditional_layers(group, phi);
    CHECK(layers.result == ck_traditional(group, phi));
    CHECK(layers.layers.back() == layers.result);
    CHECK(oracle::to_set(diamond(phi)) == oracle::diamond(*f, phis));
    CHECK(oracle::to_set(box(phi)) == oracle::box(*f, phis));
  }
}
