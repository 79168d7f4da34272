// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "../oracles.hpp"
#include "rck/errors.hpp"
#include "rck/fixtures.hpp"
#include "rck/kernel.hpp"
#include "rck/random_frames.hpp"
#include "rck/relaxed_ck.hpp"

using namespace rck;

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  std::ostringstream failures;
  std::size_t failed = 0;
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failed++ < 5) failures << "    " << what << "\n";
  }
};

struct Criterion {
  int number;
  std::string title;
  double budget_seconds;
  std::function<std::string(Check&)> body;  // returns a one-line note
};

std::vector<FramePtr> corpus() {
  random::Rng rng(20240601);
  std::vector<FramePtr> frames;
  const random::FrameStyle styles[] = {random::FrameStyle::labels, random::FrameStyle::clock_skew,
                                       random::FrameStyle::synchronous};
  for (int n = 0; n < 1200; ++n) frames.push_back(random::random_frame(rng, styles[n % 3]));
  return frames;
}

// A subset of phi local to every player: whole cells of the common coarsening inside phi.
Event random_common_local_subset(random::Rng& rng, const FramePtr& f, const Event& phi) {
  const auto cell = oracle::common_coarsening(*f, f->players());
  std::map<std::size_t, bool> keep;
  for (std::size_t k = 0; k < cell.size(); ++k) keep.emplace(cell[k], rng() % 2 == 0);
  for (std::size_t k = 0; k < cell.size(); ++k)
    if (!phi.contains_index(k)) keep[cell[k]] = false;
  oracle::Set s(cell.size());
  for (std::size_t k = 0; k < cell.size(); ++k) s[k] = keep[cell[k]];
  return oracle::to_event(f, s);
}

std::string c1(Check& c) {
  random::Rng rng(1);
  std::size_t brute = 0;
  const auto frames = corpus();
  for (const FramePtr& f : frames) {
    const Event phi = random::random_event(rng, f), psi = random::random_event(rng, f);
    const auto group = f->players();
    for (PlayerId i : group) {
      const Event k = knows(i, phi);
      c.expect(oracle::to_set(k) == oracle::knows(*f, i, oracle::to_set(phi)), "knows differs from the ken scan");
      c.expect(k.subset_of(phi), "truth axiom");
      c.expect(knows(i, k) == k, "idempotence");
      c.expect(knows(i, phi & psi) == (k & knows(i, psi)), "distribution over intersection");
      c.expect(is_local(i, k), "knowledge is local");
      const Event a = random::random_local_event(rng, f, i), b = random::random_local_event(rng, f, i);
      c.expect(is_local(i, a | b) && is_local(i, a & b) && is_local(i, a.complement()), "locality closure");
      c.expect(knows(i, a) == a, "local events are known where they hold");
    }
    c.expect(box(phi) == diamond(phi.complement()).complement(), "box/diamond duality");
    c.expect(diamond(phi) == box(phi.complement()).complement(), "diamond/box duality");
    const Event ck = ck_traditional(group, phi);
    c.expect(oracle::to_set(ck) == oracle::ck_traditional(*f, group, oracle::to_set(phi)), "CK differs from E^m");
    c.expect(ck.subset_of(phi), "CK inside phi");
    for (PlayerId i : group) c.expect(is_local(i, ck), "CK is local");
    const Event chi = random_common_local_subset(rng, f, phi);
    c.expect(chi.subset_of(ck), "CK contains every common-local subset");
    if (auto largest = oracle::largest_common_local(*f, group, oracle::to_set(phi))) {
      ++brute;
      c.expect(*largest == oracle::to_set(ck), "CK differs from the brute-force largest common-local subset");
    }
  }
  return std::to_string(frames.size()) + " frames, " + std::to_string(brute) + " brute-forced";
}

std::string c2(Check& c) {
  random::Rng rng(2);
  std::size_t profiles = 0, premises = 0;
  for (const FramePtr& f : corpus()) {
    const Profile prof = random::random_profile(rng, f, rng() % 2 == 0);
    ++profiles;
    const Event phi = random::random_event(rng, f);
    const Event kl = ck_at(prof, phi, CkAlgorithm::kleene);
    const Event re = ck_at(prof, phi, CkAlgorithm::reachability);
    c.expect(kl == re, "kleene and reachability disagree");
    c.expect(oracle::to_set(kl) == oracle::ck_at(prof, oracle::to_set(phi)), "differs from the literal intersection");
    c.expect(is_time_invariant(kl), "time invariance");
    for (PlayerId i : prof.players()) {
      const Event ind = individualized(i, prof, phi);
      c.expect(histories_of(ind) == histories_of(kl), "cki: histories");
      c.expect(ind.subset_of(phi), "cki: inside phi");
      c.expect(is_local(i, ind), "ck-local");
    }
    const Event sigma = phi & random::random_event(rng, f);
    c.expect(ck_at(prof, sigma).subset_of(re), "monotonicity");
    c.expect(everyone_at(prof, phi & re) == re, "fixed point");
    // induction soundness on random events and on events built to satisfy the premise
    for (const Event& cand : {phi, re, diamond(prof.anchor_at(0)), re & phi}) {
      const InductionReport ir = check_induction_rule(prof, cand, re);
      if (ir.premise_holds) ++premises;
      c.expect(!ir.premise_holds || ir.conclusion_holds, "induction rule");
      c.expect(!*ir.lemma_premise_holds || *ir.lemma_conclusion_holds, "induction lemma");
    }
    HistorySet all(f->history_count());
    all.set();
    const PlayerId l = prof.players().front();
    const CooccurrenceReport cr = check_cooccurrence_theorem(prof, diamond(prof.anchor(l)), l);
    c.expect(cr.anchors_in_ck == cr.cooccurs_everywhere, "co-occurrence theorem");
    c.expect(cr.cooccurs_everywhere == co_occurs(prof, all), "co-occurrence report");
  }
  return std::to_string(profiles) + " profiles, " + std::to_string(premises) + " induction premises held";
}

std::string c3(Check& c) {
  const BdtfFrame bf = build_bdtf_frame(fixtures::hm_spec());
  const auto ev = fixtures::hm_events(bf);
  const FramePtr f = bf.frame;
  const Event sent = diamond(ev.send);
  const PlayerId both[] = {kAlpha, kBeta};
  for (std::size_t from = 1; from < f->horizon(); ++from) {
    Event late = Event::empty(f);
    for (std::size_t h = 0; h < 2; ++h)
      for (std::size_t t = from; t < f->horizon(); ++t) late = late | Event::of_points(f, {Point{HistoryId{h}, t}});
    c.expect(ck_traditional(both, sent & late).is_empty(), "traditional CK after time " + std::to_string(from));
  }
  const Profile prof(f, {{kAlpha, ev.send}, {kBeta, ev.recv}});
  c.expect(ck_at(prof, sent, CkAlgorithm::kleene).is_all(), "relaxed CK (kleene) is everything");
  c.expect(ck_at(prof, sent, CkAlgorithm::reachability).is_all(), "relaxed CK (reachability) is everything");
  return "2 histories, H = " + std::to_string(f->horizon());
}

std::string c4(Check& c) {
  random::Rng rng(4);
  std::size_t specs = 0, targets = 0;
  while (specs < 220) {
    const BdtfSpec spec = random::random_single_dimensional_spec(rng);
    const BdtfFrame bf = build_bdtf_frame(spec);
    ++specs;
    const FramePtr f = bf.frame;
    for (int n = 0; n < 12; ++n) {
      Event phi = Event::empty(f);
      switch (n % 4) {
        case 0: phi = random::random_event(rng, f); break;
        case 1: phi = random::random_time_invariant_event(rng, f); break;
        case 2: phi = random::random_local_event(rng, f, rng() % 2 ? kAlpha : kBeta); break;
        default: {
          // a fact that becomes true at some time and stays true
          const std::size_t from = rng() % f->horizon();
          Bits b(f->point_count());
          const Event base = random::random_time_invariant_event(rng, f);
          for (std::size_t k = 0; k < b.size(); ++k) b[k] = base.contains_index(k) && f->point_at(k).time >= from;
          phi = Event(f, b);
        }
      }
      const auto oracle_ck = oracle::ck_traditional(*f, f->players(), oracle::to_set(phi));
      for (std::size_t h = 0; h < f->history_count(); ++h) {
        const HistoryId w{h};
        const NoNewCkReport r = verify_no_new_ck(bf, w, phi);
        if (r.ck_at_zero) continue;
        ++targets;
        c.expect(!r.first_violation, "new traditional CK in a spec with round trip " +
                                         std::to_string(*spec.single_dimensional));
        for (std::size_t t = 0; t + 1 < f->horizon(); ++t)
          c.expect(oracle_ck[f->index_of(Point{w, t})] || !oracle_ck[f->index_of(Point{w, t + 1})],
                   "oracle sees new traditional CK");
      }
    }
  }
  // the hypothesis is necessary: with both delays 1 the content becomes CK
  const BdtfFrame control = build_bdtf_frame(fixtures::refinement_spec(2, 6, false));
  Bits b(control.frame->point_count());
  for (std::size_t k = 0; k < b.size(); ++k) {
    const Point p = control.frame->point_at(k);
    b[k] = control.history(p.history).o == 0 && p.time >= 2;
  }
  const Event x_known(control.frame, b);
  const Event ck = ck_traditional(control.frame->players(), x_known);
  c.expect(!ck.is_empty() && !ck.contains(Point{HistoryId{0}, 0}), "control attains new CK");
  bool rejected = false;
  try {
    verify_no_new_ck(control, HistoryId{0}, x_known);
  } catch (const HypothesisViolation&) {
    rejected = true;
  }
  c.expect(rejected, "control is reported as outside the hypothesis");
  return std::to_string(specs) + " specs, " + std::to_string(targets) + " (history, target) pairs";
}

std::string c5(Check& c) {
  random::Rng rng(5);
  std::size_t specs = 0, histories = 0, max_h = 0, max_o = 0;
  while (specs < 60) {
    const BdtfSpec spec = random::random_timestamped_spec(rng);
    ++specs;
    max_h = std::max(max_h, spec.horizon);
    max_o = std::max(max_o, spec.initial_conditions.size());
    c.expect(spec.horizon <= 24 && spec.initial_conditions.size() <= 4, "generator bounds");
    try {
      const BdtfFrame bf = build_bdtf_frame(spec);
      for (std::size_t h = 0; h < bf.histories.size(); ++h) {
        ++histories;
        const RoundTrip rt = roundtrip_ck_facts(bf, HistoryId{h});
        c.expect(rt.verified(), "round trip of " + history_label(spec, bf.histories[h]));
        c.expect(rt.sigma_d_ck && rt.sigma_z_ck, "sigma_D / sigma_Z common knowledge");
        const GetCkTimes g = getck_times(bf, HistoryId{h});
        c.expect(g.verified, "getck verification of " + history_label(spec, bf.histories[h]));
      }
    } catch (const std::exception& e) {
      c.expect(false, std::string("pipeline error: ") + e.what());
    }
  }
  return std::to_string(specs) + " specs, " + std::to_string(histories) + " histories, max |O| " +
         std::to_string(max_o) + ", max H " + std::to_string(max_h);
}

std::string c6(Check& c) {
  random::Rng rng(6);
  std::size_t frames = 0, nonempty = 0;
  while (frames < 600) {
    const FramePtr f = random::random_frame(rng, random::FrameLimits{6, 8, 2});
    if (f->player_count() < 2) continue;
    const Event a = random::random_singular_local_event(rng, f, kAlpha);
    const Event b = random::random_singular_local_event(rng, f, kBeta);
    if (a.is_empty() || b.is_empty()) continue;
    ++frames;
    const ProbFrame pf = random::random_prob_frame(rng, f);
    const Profile prof(f, {{kAlpha, a}, {kBeta, b}});
    const Event phi = random::random_time_invariant_event(rng, f);
    const auto pa = a.points(), pb = b.points();
    const Rational qa = posterior(pf, kAlpha, phi, pa[rng() % pa.size()]);
    const Rational qb = posterior(pf, kBeta, phi, pb[rng() % pb.size()]);
    const AgreementReport r = verify_agreement(pf, prof, phi, qa, qb);
    c.expect(r.ck_nonempty == !oracle::empty(oracle::ck_at(prof, oracle::to_set(r.fact))), "CK differs from oracle");
    if (r.ck_nonempty) ++nonempty;
    c.expect(!r.ck_nonempty || qa == qb, "agreement");
  }
  const Gp82Result g = gp82_dialogue(fixtures::gp82_spec());
  c.expect(g.verdict, "posterior dialogue verdict");
  for (const Gp82Row& row : g.rows) {
    c.expect(row.q[0] == row.q[1], "posteriors equal at the anchors");
    c.expect(row.ck_nonempty, "posteriors relaxed CK at the anchors");
    c.expect(row.traditional_empty_after_zero, "no traditional CK of the posteriors after time 0");
  }
  return std::to_string(frames) + " frames (" + std::to_string(nonempty) + " with CK), dialogue over " +
         std::to_string(g.rows.size()) + " histories";
}

std::string c7(Check& c) {
  const GameFrame g = build_game_frame(fixtures::example1_spec());
  const SckResult s = compute_sck(g);
  std::size_t attacked = 0;
  for (std::size_t h = 0; h < g.frame->history_count(); ++h) {
    const Outcome o = play(g, s.strategies, HistoryId{h});
    const bool q1 = g.state(HistoryId{h}).q == 1;
    c.expect(o.attacked == q1 && o.success == q1, "attack pattern in " + g.state(HistoryId{h}).name);
    attacked += o.attacked;
  }
  c.expect(attacked == 2, "exactly two attacking histories");
  c.expect(verify_never_unsuccessful(g, s.strategies), "never unsuccessful");
  c.expect(expected_welfare(g, s.strategies).expected == ExtendedRational(Rational(1, 2)), "welfare 1/2");
  // traditional CK of the prospect is absent after time 0
  const Event prospect = g.prospect_one();
  const Event ck = ck_traditional(g.frame->players(), prospect);
  for (std::size_t k = 0; k < g.frame->point_count(); ++k)
    if (ck.contains_index(k)) c.expect(g.frame->point_at(k).time == 0, "traditional CK of the prospect after 0");
  return "welfare " + to_string(expected_welfare(g, s.strategies).expected);
}

std::string c8(Check& c) {
  const GameFrame g = build_game_frame(fixtures::example2_spec());
  const SckResult s = compute_sck(g);
  std::size_t included = 0, excluded = 0;
  for (std::size_t h = 0; h < g.frame->history_count(); ++h) {
    const StateOfNature& st = g.state(HistoryId{h});
    const Outcome o = play(g, s.strategies, HistoryId{h});
    if (st.q == 0) {
      c.expect(!o.attacked, "attack in a prospect-0 state");
      continue;
    }
    const std::size_t d = st.delays[kBeta.index][0];
    if (d >= g.spec.periods) continue;  // never delivered
    const std::size_t receipt = d;
    const std::size_t subjective = receipt - st.birth[kBeta.index];
    // beta's decision at the receipt point
    const KenId ken = g.frame->ken_of(kBeta, Point{HistoryId{h}, receipt});
    const bool initiates = s.strategies.initiate[kBeta.index][ken] != 0;
    if (subjective <= 46) {
      ++included;
      c.expect(initiates && o.attack_time[kBeta.index] == receipt, "receipt at subjective time " +
                                                                         std::to_string(subjective) + " excluded");
      c.expect(o.success, "success at subjective time " + std::to_string(subjective));
    } else {
      ++excluded;
      c.expect(!initiates && !o.attacked, "receipt at subjective time " + std::to_string(subjective) + " included");
    }
  }
  c.expect(included > 0 && excluded > 0, "both sides of the boundary occur");
  c.expect(verify_never_unsuccessful(g, s.strategies), "never unsuccessful");
  return std::to_string(included) + " receipts at <= 46 attack, " + std::to_string(excluded) + " later do not";
}

std::string c9(Check& c) {
  const GameFrame g = build_game_frame(fixtures::example3_spec());
  const SckResult s = compute_sck(g);
  for (std::size_t h = 0; h < g.frame->history_count(); ++h) {
    const StateOfNature& st = g.state(HistoryId{h});
    const Outcome o = play(g, s.strategies, HistoryId{h});
    const bool alive = st.birth[kBeta.index] < g.spec.periods;
    if (st.q == 1 && alive) {
      // alpha hears "I'm alive" and beta hears the prospect one period after beta's birth
      const std::size_t expected = st.birth[kBeta.index] + 1;
      c.expect(o.success, "success when beta is alive");
      c.expect(o.attack_time[kAlpha.index] == expected, "alpha attacks on the alive message");
      c.expect(o.attack_time[kBeta.index] == expected, "beta attacks on the prospect message");
    } else {
      c.expect(!o.attacked, "no attack in " + st.name);
    }
  }
  // alpha never attacks before hearing from beta
  for (std::size_t h = 0; h < g.frame->history_count(); ++h) {
    const Outcome o = play(g, s.strategies, HistoryId{h});
    if (o.attack_time[kAlpha.index]) c.expect(*o.attack_time[kAlpha.index] >= 1, "alpha attacks blind");
  }
  return "welfare " + to_string(expected_welfare(g, s.strategies).expected);
}

std::string c10(Check& c) {
  random::Rng rng(10);
  std::size_t games = 0, skipped = 0, nonempty = 0;
  auto check = [&](const AttackGameSpec& spec, const std::string& name) {
    const GameFrame g = build_game_frame(spec);
    try {
      const FrontierReport r = brute_force_frontier(g);
      ++games;
      nonempty += r.ck_nonempty;
      c.expect(r.sck_never_unsuccessful, name + ": never unsuccessful");
      c.expect(r.pareto, name + ": Pareto");
      c.expect(r.nash, name + ": Nash");
      c.expect(r.corollary, name + ": corollary");
      c.expect(r.earliest && r.success_iff_ck, name + ": earliest / success iff CK");
    } catch (const CapExceeded&) {
      ++skipped;
    }
  };
  check(fixtures::tiny_spec(2), "tiny");
  check(fixtures::tiny_spec(0), "tiny, alpha deadline 0");
  for (int n = 0; games < 32; ++n) check(random::random_tiny_game(rng), "seeded game " + std::to_string(n));
  return std::to_string(games) + " games (" + std::to_string(nonempty) + " with CK), " + std::to_string(skipped) +
         " over the cap";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "operator laws", 60, c1},
      {2, "algorithm agreement and relaxed-CK lemmas", 60, c2},
      {3, "Halpern-Moses message frame", 1, c3},
      {4, "no new traditional CK under timing frictions", 120, c4},
      {5, "getting to common knowledge", 300, c5},
      {6, "agreement and the posterior dialogue", 60, c6},
      {7, "Example 1", 60, c7},
      {8, "Example 2 boundary", 60, c8},
      {9, "Example 3", 60, c9},
      {10, "exhaustive equilibrium check", 600, c10},
  };
  int failures = 0;
  for (const Criterion& cr : criteria) {
    Check c;
    std::string note;
    const auto start = Clock::now();
    try {
      note = cr.body(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    c.expect(secs <= cr.budget_seconds, "runtime over budget");
    const bool ok = c.failed == 0;
    failures += !ok;
    std::printf("%s %2d %s (%.2fs) %s\n", ok ? "PASS" : "FAIL", cr.number, cr.title.c_str(), secs, note.c_str());
    if (!ok) std::printf("%s", c.failures.str().c_str());
    std::fflush(stdout);
  }
  return failures;
}
