#ifndef RCK_TESTS_ORACLES_HPP
#define RCK_TESTS_ORACLES_HPP

// Deliberately naive reference implementations. They work on plain char
// vectors indexed by point and read the frame only through ken_of, so they
// share no code path with the library operators they check.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "rck/event.hpp"
#include "rck/probability.hpp"
#include "rck/profile.hpp"

namespace oracle {

using rck::Frame;
using rck::PlayerId;
using Set = std::vector<char>;

inline Set to_set(const rck::Event& e) {
  Set s(e.frame().point_count(), 0);
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = e.contains_index(k) ? 1 : 0;
  return s;
}

inline rck::Event to_event(const rck::FramePtr& f, const Set& s) {
  rck::Bits b(f->point_count());
  for (std::size_t k = 0; k < s.size(); ++k)
    if (s[k]) b.set(k);
  return rck::Event(f, b);
}

inline Set intersect(const Set& a, const Set& b) {
  Set r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] && b[k];
  return r;
}

inline bool subset(const Set& a, const Set& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] && !b[k]) return false;
  return true;
}

inline bool empty(const Set& a) { return std::none_of(a.begin(), a.end(), [](char c) { return c != 0; }); }

/// Points grouped by ken, rebuilt from ken_of alone.
inline std::map<rck::KenId, std::vector<std::size_t>> kens(const Frame& f, PlayerId i) {
  std::map<rck::KenId, std::vector<std::size_t>> m;
  for (std::size_t k = 0; k < f.point_count(); ++k) m[f.ken_of(i, k)].push_back(k);
  return m;
}

inline Set knows(const Frame& f, PlayerId i, const Set& phi) {
  Set r(phi.size(), 0);
  for (const auto& [id, pts] : kens(f, i)) {
    const bool inside = std::all_of(pts.begin(), pts.end(), [&](std::size_t k) { return phi[k] != 0; });
    if (inside)
      for (std::size_t k : pts) r[k] = 1;
  }
  return r;
}

inline bool is_local(const Frame& f, PlayerId i, const Set& phi) {
  for (const auto& [id, pts] : kens(f, i))
    for (std::size_t k : pts)
      if (phi[k] != phi[pts.front()]) return false;
  return true;
}

inline Set everyone(const Frame& f, const std::vector<PlayerId>& group, const Set& phi) {
  Set r(phi.size(), 1);
  for (PlayerId i : group) r = intersect(r, knows(f, i, phi));
  return r;
}

/// Literal intersection of E^1, E^2, ... (the layers shrink by the Truth Axiom).
inline Set ck_traditional(const Frame& f, const std::vector<PlayerId>& group, const Set& phi) {
  Set layer = everyone(f, group, phi);
  for (;;) {
    Set next = everyone(f, group, layer);
    if (next == layer) return layer;
    layer = std::move(next);
  }
}

/// Union of every subset of phi that is local to all players of the group,
/// by enumerating unions of the first player's kens. nullopt if too many kens.
inline std::optional<Set> largest_common_local(const Frame& f, const std::vector<PlayerId>& group, const Set& phi,
                                               std::size_t max_kens = 14) {
  std::vector<std::vector<std::size_t>> inside;
  for (const auto& [id, pts] : kens(f, group.front()))
    if (std::all_of(pts.begin(), pts.end(), [&](std::size_t k) { return phi[k] != 0; })) inside.push_back(pts);
  if (inside.size() > max_kens) return std::nullopt;
  Set best(phi.size(), 0);
  for (std::size_t mask = 0; mask < (std::size_t{1} << inside.size()); ++mask) {
    Set cand(phi.size(), 0);
    for (std::size_t b = 0; b < inside.size(); ++b)
      if (mask >> b & 1)
        for (std::size_t k : inside[b]) cand[k] = 1;
    const bool ok = std::all_of(group.begin(), group.end(), [&](PlayerId i) { return is_local(f, i, cand); });
    if (ok)
      for (std::size_t k = 0; k < cand.size(); ++k) best[k] = best[k] || cand[k];
  }
  return best;
}

/// Cells of the finest partition coarser than every player's ken partition.
inline std::vector<std::size_t> common_coarsening(const Frame& f, const std::vector<PlayerId>& group) {
  std::vector<std::size_t> parent(f.point_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (PlayerId i : group)
    for (const auto& [id, pts] : kens(f, i))
      for (std::size_t k : pts) parent[find(k)] = find(pts.front());
  std::vector<std::size_t> cell(f.point_count());
  for (std::size_t k = 0; k < cell.size(); ++k) cell[k] = find(k);
  return cell;
}

inline Set diamond(const Frame& f, const Set& phi) {
  Set r(phi.size(), 0);
  const std::size_t H = f.horizon();
  for (std::size_t h = 0; h < f.history_count(); ++h) {
    bool any = false;
    for (std::size_t t = 0; t < H; ++t) any = any || phi[h * H + t];
    for (std::size_t t = 0; t < H; ++t) r[h * H + t] = any;
  }
  return r;
}

inline Set box(const Frame& f, const Set& phi) {
  Set r(phi.size(), 0);
  const std::size_t H = f.horizon();
  for (std::size_t h = 0; h < f.history_count(); ++h) {
    bool all = true;
    for (std::size_t t = 0; t < H; ++t) all = all && phi[h * H + t];
    for (std::size_t t = 0; t < H; ++t) r[h * H + t] = all;
  }
  return r;
}

inline Set knows_at(const Frame& f, PlayerId i, const Set& psi, const Set& phi) {
  const Set k = knows(f, i, phi);
  Set imp(phi.size());
  for (std::size_t p = 0; p < imp.size(); ++p) imp[p] = !psi[p] || k[p];
  return intersect(diamond(f, psi), box(f, imp));
}

inline Set everyone_at(const rck::Profile& prof, const Set& phi) {
  const Frame& f = prof.frame();
  Set r(phi.size(), 1);
  for (std::size_t k = 0; k < prof.size(); ++k)
    r = intersect(r, knows_at(f, prof.players()[k], to_set(prof.anchor_at(k)), phi));
  return r;
}

/// Literal intersection of E^m over m >= 1. The layer sequence need not be
/// monotone, so iterate until a layer repeats; afterwards it only cycles.
inline Set ck_at(const rck::Profile& prof, const Set& phi) {
  std::set<Set> seen;
  Set layer = everyone_at(prof, phi);
  Set acc = layer;
  while (seen.insert(layer).second) {
    layer = everyone_at(prof, layer);
    acc = intersect(acc, layer);
  }
  return acc;
}

inline rck::Rational posterior(const rck::ProbFrame& pf, PlayerId i, const Set& phi, std::size_t at) {
  const Frame& f = pf.frame();
  const std::size_t H = f.horizon();
  rck::Rational num = 0, den = 0;
  const rck::KenId ken = f.ken_of(i, at);
  for (std::size_t h = 0; h < f.history_count(); ++h) {
    bool in_ken = false, in_phi = false;
    for (std::size_t t = 0; t < H; ++t) {
      in_ken = in_ken || f.ken_of(i, h * H + t) == ken;
      in_phi = in_phi || phi[h * H + t];
    }
    if (!in_ken) continue;
    den += pf.weights()[h];
    if (in_phi) num += pf.weights()[h];
  }
  return num / den;
}

}  // namespace oracle

#endif
