#include "rck/relaxed_ck.hpp"

#include <map>

#include "disjoint_sets.hpp"
#include "rck/errors.hpp"
#include "rck/kernel.hpp"

namespace rck {

namespace {

void require_profile_frame(const Profile& profile, const Event& phi) {
  if (profile.frame_ptr() != phi.frame_ptr()) throw FrameMismatch();
}

// occurs[k][h]: anchor k of the profile has a point in history h
std::vector<HistorySet> occurrences(const Profile& profile) {
  std::vector<HistorySet> out;
  for (std::size_t k = 0; k < profile.size(); ++k) out.push_back(histories_of(profile.anchor_at(k)));
  return out;
}

struct ComponentVerdict {
  HistoryPartition comps;
  std::vector<HistorySet> occurs;
  HistorySet any_anchor;
  std::vector<char> cooccur_ok;
  std::vector<char> phi_ok;
};

ComponentVerdict evaluate_components(const Profile& profile, const Event& phi) {
  const Frame& f = profile.frame();
  const std::size_t n = f.history_count();
  const std::size_t H = f.horizon();
  ComponentVerdict v;
  v.comps = reachability_components(profile);
  v.occurs = occurrences(profile);
  v.any_anchor = HistorySet(n);
  for (const auto& o : v.occurs) v.any_anchor |= o;
  v.cooccur_ok.assign(v.comps.cell_count(), 1);
  v.phi_ok.assign(v.comps.cell_count(), 1);
  for (std::size_t h = 0; h < n; ++h) {
    const std::size_t c = v.comps.cell_of(HistoryId{h});
    if (v.any_anchor.test(h))
      for (const auto& o : v.occurs)
        if (!o.test(h)) v.cooccur_ok[c] = 0;
  }
  for (std::size_t k = 0; k < profile.size(); ++k) {
    const Bits outside = profile.anchor_at(k).bits() - phi.bits();
    for (auto p = outside.find_first(); p != Bits::npos; p = outside.find_next(p))
      v.phi_ok[v.comps.cell_of(HistoryId{p / H})] = 0;
  }
  return v;
}

Event ck_reachability(const Profile& profile, const Event& phi) {
  const auto v = evaluate_components(profile, phi);
  HistorySet keep(profile.frame().history_count());
  for (std::size_t h = 0; h < keep.size(); ++h) {
    const std::size_t c = v.comps.cell_of(HistoryId{h});
    keep[h] = v.any_anchor.test(h) && v.cooccur_ok[c] && v.phi_ok[c];
  }
  return Event::cylinder(profile.frame_ptr(), keep);
}

Event ck_kleene(const Profile& profile, const Event& phi, std::vector<Event>* iterates) {
  const std::size_t bound = profile.frame().history_count() + 1;
  Event chi = Event::all(profile.frame_ptr());
  for (std::size_t it = 1;; ++it) {
    Event next = everyone_at(profile, phi & chi);
    if (iterates) iterates->push_back(next);
    if (next == chi) return chi;
    if (it > bound) throw InvariantViolation("relaxed common knowledge iteration exceeded its bound");
    chi = std::move(next);
  }
}

}  // namespace

Event knows_at(PlayerId i, const Event& psi, const Event& phi) {
  psi.require_same_frame(phi);
  psi.frame().require_player(i);
  if (!is_local(i, psi))
    throw PreconditionError("anchor event is not local to player '" + psi.frame().player_name(i) + "'");
  return diamond(psi) & box(implies(psi, knows(i, phi)));
}

Event everyone_at(const Profile& profile, const Event& phi) {
  require_profile_frame(profile, phi);
  // anchors were checked for locality when the profile was built
  Event acc = Event::all(profile.frame_ptr());
  for (std::size_t k = 0; k < profile.size(); ++k) {
    const Event& psi = profile.anchor_at(k);
    acc = acc & diamond(psi) & box(implies(psi, knows(profile.players()[k], phi)));
  }
  return acc;
}

CkAlgorithm parse_algorithm(std::string_view name) {
  if (name == "kleene") return CkAlgorithm::kleene;
  if (name == "reachability") return CkAlgorithm::reachability;
  throw PreconditionError("unknown algorithm '" + std::string(name) + "'");
}

std::string_view to_string(CkAlgorithm a) { return a == CkAlgorithm::kleene ? "kleene" : "reachability"; }

Event ck_at(const Profile& profile, const Event& phi, CkAlgorithm algorithm) {
  require_profile_frame(profile, phi);
  switch (algorithm) {
    case CkAlgorithm::kleene:
      return ck_kleene(profile, phi, nullptr);
    case CkAlgorithm::reachability:
      return ck_reachability(profile, phi);
  }
  throw PreconditionError("unknown algorithm");
}

KleeneTrace ck_at_trace(const Profile& profile, const Event& phi) {
  require_profile_frame(profile, phi);
  KleeneTrace out{Event::empty(profile.frame_ptr()), {}, {}};
  out.result = ck_kleene(profile, phi, &out.iterates);
  // E^m phi over time-invariant events ranges over history subsets; stop at the first repeat
  const std::size_t limit = 64 + 8 * profile.frame().history_count();
  Event layer = everyone_at(profile, phi);
  for (;;) {
    for (const auto& seen : out.layers)
      if (seen == layer) return out;
    out.layers.push_back(layer);
    if (out.layers.size() > limit) throw InvariantViolation("E^m layers did not become periodic");
    layer = everyone_at(profile, layer);
  }
}

Event individualized(PlayerId i, const Profile& profile, const Event& phi, CkAlgorithm algorithm) {
  if (!profile.has(i)) throw PreconditionError("player is not part of the profile");
  const Event c = ck_at(profile, phi, algorithm);
  Event out = profile.anchor(i) & c;
  if (!is_local(i, out)) throw InvariantViolation("individualized event is not local");
  if (histories_of(out) != histories_of(c)) throw InvariantViolation("individualized event lost histories");
  if (!out.subset_of(phi)) throw InvariantViolation("individualized event escapes phi");
  return out;
}

std::string_view to_string(CkDiagnosis::Failure f) {
  switch (f) {
    case CkDiagnosis::Failure::none: return "none";
    case CkDiagnosis::Failure::occurrence: return "occurrence";
    case CkDiagnosis::Failure::cooccurrence: return "cooccurrence";
    case CkDiagnosis::Failure::outside_phi: return "outside_phi";
  }
  return "none";
}

CkDiagnosis diagnose(const Profile& profile, const Event& phi, HistoryId history) {
  require_profile_frame(profile, phi);
  const Frame& f = profile.frame();
  if (history.index >= f.history_count()) throw PreconditionError("unknown history");
  const auto v = evaluate_components(profile, phi);
  CkDiagnosis d;
  d.history = history;
  d.component = v.comps.cell_of(history);
  const std::string name = f.history_name(history);
  if (!v.any_anchor.test(history.index)) {
    d.failure = CkDiagnosis::Failure::occurrence;
    d.message = "no anchor occurs in history '" + name + "'";
    return d;
  }
  for (std::size_t h = 0; h < f.history_count(); ++h) {
    if (v.comps.cell_of(HistoryId{h}) != d.component || !v.any_anchor.test(h)) continue;
    for (std::size_t k = 0; k < profile.size(); ++k)
      if (!v.occurs[k].test(h)) {
        d.failure = CkDiagnosis::Failure::cooccurrence;
        d.witness_history = HistoryId{h};
        d.player = profile.players()[k];
        d.message = "anchor of '" + f.player_name(*d.player) + "' never occurs in reachable history '" +
                    f.history_name(HistoryId{h}) + "'";
        return d;
      }
  }
  for (std::size_t k = 0; k < profile.size(); ++k) {
    const Bits outside = profile.anchor_at(k).bits() - phi.bits();
    for (auto p = outside.find_first(); p != Bits::npos; p = outside.find_next(p)) {
      const Point pt = f.point_at(p);
      if (v.comps.cell_of(pt.history) != d.component) continue;
      d.failure = CkDiagnosis::Failure::outside_phi;
      d.player = profile.players()[k];
      d.witness_point = pt;
      d.message = "reachable anchor point (" + f.history_name(pt.history) + "," + std::to_string(pt.time) +
                  ") of '" + f.player_name(*d.player) + "' lies outside the event";
      return d;
    }
  }
  d.message = "holds";
  return d;
}

InductionReport check_induction_rule(const Profile& profile, const Event& phi, const std::optional<Event>& xi) {
  InductionReport r;
  r.premise_holds = phi.subset_of(everyone_at(profile, phi));
  const Event c = ck_at(profile, phi);
  r.conclusion_holds = phi.subset_of(c);
  if (xi) {
    r.lemma_premise_holds = xi->subset_of(everyone_at(profile, phi & *xi));
    r.lemma_conclusion_holds = xi->subset_of(c);
  }
  return r;
}

bool co_occurs(const Profile& profile, const HistorySet& histories) {
  const auto occ = occurrences(profile);
  if (histories.size() != profile.frame().history_count()) throw PreconditionError("history set size mismatch");
  for (auto h = histories.find_first(); h != HistorySet::npos; h = histories.find_next(h)) {
    bool any = false, all = true;
    for (const auto& o : occ) {
      any = any || o.test(h);
      all = all && o.test(h);
    }
    if (any && !all) return false;
  }
  return true;
}

ReachabilityGraph reachability_graph(const Profile& profile) {
  const Frame& f = profile.frame();
  std::map<std::pair<std::size_t, std::size_t>, ReachabilityEdge> edges;
  for (std::size_t k = 0; k < profile.size(); ++k) {
    const PlayerId i = profile.players()[k];
    const Event& psi = profile.anchor_at(k);
    std::vector<char> done(f.ken_count(i), 0);
    for (auto p = psi.bits().find_first(); p != Bits::npos; p = psi.bits().find_next(p)) {
      const KenId ken = f.ken_of(i, p);
      if (done[ken]) continue;
      done[ken] = 1;
      auto members = f.ken_members(i, ken);
      for (std::size_t x = 0; x < members.size(); ++x)
        for (std::size_t y = x; y < members.size(); ++y) {
          Point a = f.point_at(members[x]), b = f.point_at(members[y]);
          if (b.history < a.history) std::swap(a, b);
          edges.try_emplace({a.history.index, b.history.index}, ReachabilityEdge{a.history, b.history, i, a, b});
        }
    }
  }
  ReachabilityGraph g;
  g.history_count = f.history_count();
  for (auto& [key, e] : edges) g.edges.push_back(e);
  return g;
}

HistoryPartition components(const ReachabilityGraph& g) {
  detail::DisjointSets ds(g.history_count);
  for (const auto& e : g.edges) ds.unite(e.a.index, e.b.index);
  std::vector<std::size_t> labels(g.history_count);
  for (std::size_t h = 0; h < g.history_count; ++h) labels[h] = ds.find(h);
  return HistoryPartition(labels);
}

HistoryPartition reachability_components(const Profile& profile) {
  const Frame& f = profile.frame();
  const std::size_t H = f.horizon();
  detail::DisjointSets ds(f.history_count());
  for (std::size_t k = 0; k < profile.size(); ++k) {
    const PlayerId i = profile.players()[k];
    const Event& psi = profile.anchor_at(k);
    std::vector<std::size_t> rep(f.ken_count(i), HistoryPartition::outside);
    for (auto p = psi.bits().find_first(); p != Bits::npos; p = psi.bits().find_next(p)) {
      auto& r = rep[f.ken_of(i, p)];
      if (r == HistoryPartition::outside) r = p / H;
      else ds.unite(r, p / H);
    }
  }
  std::vector<std::size_t> labels(f.history_count());
  for (std::size_t h = 0; h < labels.size(); ++h) labels[h] = ds.find(h);
  return HistoryPartition(labels);
}

CooccurrenceReport check_cooccurrence_theorem(const Profile& profile, const Event& phi, PlayerId l) {
  require_profile_frame(profile, phi);
  if (!diamond(profile.anchor(l)).subset_of(phi))
    throw HypothesisViolation("the anchor of the designated player must occur only in histories inside the event");
  CooccurrenceReport r;
  const Event c = ck_at(profile, phi);
  r.anchors_in_ck = true;
  for (std::size_t k = 0; k < profile.size(); ++k) r.anchors_in_ck = r.anchors_in_ck && profile.anchor_at(k).subset_of(c);
  HistorySet all(profile.frame().history_count());
  all.set();
  r.cooccurs_everywhere = co_occurs(profile, all);
  return r;
}

}  // namespace rck
