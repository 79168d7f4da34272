#include <doctest.h>

#include <map>
#include <tuple>

#include "../oracles.hpp"
#include "rck/errors.hpp"
#include "rck/fixtures.hpp"
#include "rck/kernel.hpp"
#include "rck/random_frames.hpp"
#include "rck/relaxed_ck.hpp"

using namespace rck;

namespace {

void check_recursion_soundness(const BdtfFrame& bf) {
  const Frame& f = *bf.frame;
  for (PlayerId i : {kAlpha, kBeta})
    for (KenId k = 0; k < f.ken_count(i); ++k) {
      const auto members = f.ken_members(i, k);
      const Point first = f.point_at(members.front());
      const std::int64_t s = bf.subjective_time(i, first);
      for (std::uint32_t m : members) {
        const Point p = f.point_at(m);
        const std::int64_t sp = bf.subjective_time(i, p);
        if (s >= 0 || sp >= 0) REQUIRE(sp == s);
        if (s > 0) REQUIRE(f.ken_of(i, Point{p.history, p.time - 1}) == f.ken_of(i, Point{first.history, first.time - 1}));
      }
    }
}

}  // namespace

TEST_CASE("the message frame has the expected histories and kens") {
  const BdtfFrame bf = build_bdtf_frame(fixtures::hm_spec());
  REQUIRE(bf.histories.size() == 2);
  CHECK(bf.histories[0].d[kBeta.index] == 1);
  CHECK(bf.histories[1].d[kBeta.index] == 2);
  CHECK(bf.histories[1].z[kBeta.index] == 2);
  const Frame& f = *bf.frame;
  for (std::size_t t = 0; t < f.horizon(); ++t)
    CHECK(f.ken_of(kAlpha, Point{HistoryId{0}, t}) == f.ken_of(kAlpha, Point{HistoryId{1}, t}));
  for (std::size_t t = 1; t + 1 < f.horizon(); ++t)
    CHECK(f.ken_of(kBeta, Point{HistoryId{0}, t}) == f.ken_of(kBeta, Point{HistoryId{1}, t + 1}));
  check_recursion_soundness(bf);
}

TEST_CASE("an informative signal refines the receiver's kens") {
  const BdtfFrame bf = build_bdtf_frame(fixtures::refinement_spec(4, 10, false));
  const Frame& f = *bf.frame;
  for (std::size_t p = 0; p < f.point_count(); ++p) {
    const Point pt = f.point_at(p);
    if (bf.subjective_time(kBeta, pt) < 1) continue;
    for (std::uint32_t m : f.ken_members(kBeta, f.ken_of(kBeta, p)))
      CHECK(bf.history(f.point_at(m).history).o == bf.history(pt.history).o);
  }
  // before hearing anything beta cannot separate the initial conditions
  const Point birth{HistoryId{0}, bf.histories[0].z[kBeta.index]};
  bool mixed = false;
  for (std::uint32_t m : f.ken_members(kBeta, f.ken_of(kBeta, birth)))
    mixed = mixed || bf.history(f.point_at(m).history).o != bf.histories[0].o;
  CHECK(mixed);
}

TEST_CASE("no new traditional CK and its control") {
  const BdtfFrame bf = build_bdtf_frame(fixtures::hm_spec());
  const auto ev = fixtures::hm_events(bf);
  const Event sent_after_zero = diamond(ev.send) - ev.send;
  const NoNewCkReport r = verify_no_new_ck(bf, HistoryId{0}, sent_after_zero);
  CHECK_FALSE(r.ck_at_zero);
  CHECK_FALSE(r.first_violation.has_value());

  const BdtfFrame control = build_bdtf_frame(fixtures::refinement_spec(2, 6, false));
  Event x_known = Event::empty(control.frame);
  for (std::size_t h = 0; h < control.histories.size(); ++h)
    if (control.histories[h].o == 0)
      for (std::size_t t = 2; t < 6; ++t) x_known = x_known | Event::of_points(control.frame, {Point{HistoryId{h}, t}});
  CHECK(ck_traditional(control.frame->players(), x_known) == x_known);
  CHECK_THROWS_AS(verify_no_new_ck(control, HistoryId{0}, x_known), HypothesisViolation);
}

TEST_CASE("round-trip facts on the timestamped message frame") {
  const BdtfFrame bf = build_bdtf_frame(fixtures::hm_timestamped_spec());
  const RoundTrip rt = roundtrip_ck_facts(bf, HistoryId{1});
  CHECK(rt.a_role == kBeta);
  CHECK(rt.t1 == 3);
  CHECK(rt.t2 == 3);
  CHECK(rt.t3 == 6);
  CHECK(rt.verified());
  const GetCkTimes g = getck_times(bf, HistoryId{1});
  CHECK(g.verified);
  CHECK(ck_at(g.anchors, g.future_signals).contains(Point{HistoryId{1}, 0}));
  CHECK_THROWS_AS(roundtrip_ck_facts(build_bdtf_frame(fixtures::hm_spec()), HistoryId{0}), PreconditionError);
}

TEST_CASE("slice partitions and their meet") {
  const BdtfFrame bf = build_bdtf_frame(fixtures::hm_spec());
  const SlicePartition sp = slice_partition(kBeta, bf.subjective_time_event(kBeta, 1));
  CHECK(sp.cells.cell_count() == 1);

  const BdtfFrame r = build_bdtf_frame(fixtures::refinement_spec(3, 12, true));
  const SlicePartition a = slice_partition(kAlpha, r.subjective_time_event(kAlpha, 0));
  const SlicePartition b = slice_partition(kBeta, r.subjective_time_event(kBeta, 0));
  const HistoryPartition m = partition_meet(a.cells, b.cells);
  CHECK(refines(a.cells, m));
  CHECK(refines(b.cells, m));
  CHECK(m.cell_count() == 1);
}

TEST_CASE("slice cells are unions of timing classes") {
  random::Rng rng(3);
  for (int n = 0; n < 20; ++n) {
    const BdtfSpec spec = random::random_timestamped_spec(rng);
    const BdtfFrame bf = build_bdtf_frame(spec);
    for (PlayerId i : {kAlpha, kBeta})
      for (std::int64_t s = 0; s < 4; ++s) {
        const Event xi = bf.subjective_time_event(i, s);
        if (histories_of(xi).count() != bf.histories.size()) continue;
        const SlicePartition sp = slice_partition(i, xi);
        std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::int64_t>, std::size_t> cls;
        for (std::size_t h = 0; h < bf.histories.size(); ++h) {
          const BdtfHistory& w = bf.histories[h];
          const auto key = std::make_tuple(w.o, w.d[0], w.d[1],
                                           static_cast<std::int64_t>(w.z[0]) - static_cast<std::int64_t>(w.z[1]));
          const auto [it, fresh] = cls.emplace(key, sp.cells.cell_of(HistoryId{h}));
          if (!fresh) CHECK(it->second == sp.cells.cell_of(HistoryId{h}));
        }
      }
  }
}

TEST_CASE("random frames satisfy the recursion and perfect recall") {
  random::Rng rng(17);
  for (int n = 0; n < 30; ++n) {
    const BdtfFrame bf = build_bdtf_frame(random::random_single_dimensional_spec(rng));
    check_recursion_soundness(bf);
    const Frame& f = *bf.frame;
    for (PlayerId i : {kAlpha, kBeta}) {
      // histories sharing i's ken at subjective time s+1 share it at s
      for (std::size_t h = 0; h < bf.histories.size(); ++h)
        for (std::size_t g = 0; g < bf.histories.size(); ++g) {
          const std::size_t zh = bf.histories[h].z[i.index], zg = bf.histories[g].z[i.index];
          for (std::size_t s = 0; zh + s + 1 < f.horizon() && zg + s + 1 < f.horizon(); ++s)
            if (f.ken_of(i, Point{HistoryId{h}, zh + s + 1}) == f.ken_of(i, Point{HistoryId{g}, zg + s + 1}))
              CHECK(f.ken_of(i, Point{HistoryId{h}, zh + s}) == f.ken_of(i, Point{HistoryId{g}, zg + s}));
        }
    }
  }
}

TEST_CASE("builder errors") {
  BdtfSpec s = fixtures::hm_spec();
  s.history_cap = 1;
  CHECK_THROWS_AS(build_bdtf_frame(s), CapExceeded);
  BdtfSpec short_ts = fixtures::hm_timestamped_spec();
  short_ts.horizon = 4;
  CHECK_THROWS_AS(build_bdtf_frame(short_ts), HorizonInadequate);
  BdtfSpec bad = fixtures::hm_spec();
  bad.initial_partition[0].clear();
  CHECK_THROWS_AS(build_bdtf_frame(bad), PreconditionError);
}
