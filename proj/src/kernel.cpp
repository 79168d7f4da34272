#include "rck/kernel.hpp"

#include <cassert>

#include "rck/errors.hpp"

namespace rck {

Event knows(PlayerId i, const Event& phi) {
  const Frame& f = phi.frame();
  f.require_player(i);
  // a ken is bad as soon as one of its points misses phi
  std::vector<char> bad(f.ken_count(i), 0);
  const Bits& b = phi.bits();
  const std::size_t n = f.point_count();
  for (std::size_t p = 0; p < n; ++p)
    if (!b.test(p)) bad[f.ken_of(i, p)] = 1;
  Bits out(n);
  for (std::size_t p = 0; p < n; ++p)
    if (!bad[f.ken_of(i, p)]) out.set(p);
  return Event(phi.frame_ptr(), std::move(out));
}

bool is_local(PlayerId i, const Event& phi) { return knows(i, phi) == phi; }

Event everyone_knows(std::span<const PlayerId> group, const Event& phi) {
  if (group.empty()) throw PreconditionError("player group must be nonempty");
  Event acc = knows(group[0], phi);
  for (std::size_t k = 1; k < group.size(); ++k) acc = acc & knows(group[k], phi);
  return acc;
}

TraditionalCk ck_traditional_layers(std::span<const PlayerId> group, const Event& phi) {
  if (group.empty()) throw PreconditionError("player group must be nonempty");
  const Frame& f = phi.frame();
  std::size_t bound = 1;
  for (PlayerId i : group) {
    f.require_player(i);
    bound += f.ken_count(i);
  }
  TraditionalCk out{phi, {}, 0};
  // E is deflationary (truth axiom), so E^m phi decreases to the fixed point
  Event cur = phi;
  for (;;) {
    Event next = everyone_knows(group, cur);
    out.layers.push_back(next);
    ++out.iterations;
    if (next == cur) break;
    if (out.iterations > bound) throw InvariantViolation("traditional common knowledge did not stabilize");
    cur = std::move(next);
  }
  out.result = out.layers.back();
  return out;
}

Event ck_traditional(std::span<const PlayerId> group, const Event& phi) {
  return ck_traditional_layers(group, phi).result;
}

Event box(const Event& phi) {
  const Frame& f = phi.frame();
  const std::size_t H = f.horizon();
  HistorySet full(f.history_count());
  for (std::size_t h = 0; h < f.history_count(); ++h) {
    bool all = true;
    for (std::size_t t = 0; t < H && all; ++t) all = phi.bits().test(h * H + t);
    full[h] = all;
  }
  return Event::cylinder(phi.frame_ptr(), full);
}

HistorySet histories_of(const Event& phi) {
  const Frame& f = phi.frame();
  HistorySet out(f.history_count());
  const std::size_t H = f.horizon();
  for (auto p = phi.bits().find_first(); p != Bits::npos; p = phi.bits().find_next(p)) out.set(p / H);
  return out;
}

Event diamond(const Event& phi) { return Event::cylinder(phi.frame_ptr(), histories_of(phi)); }

bool is_time_invariant(const Event& phi) { return diamond(phi) == phi; }

bool is_singular(const Event& phi) {
  const std::size_t H = phi.frame().horizon();
  std::size_t last = Bits::npos;
  for (auto p = phi.bits().find_first(); p != Bits::npos; p = phi.bits().find_next(p)) {
    if (last != Bits::npos && last / H == p / H) return false;
    last = p;
  }
  return true;
}

std::size_t first_time(const Event& phi, HistoryId h) {
  const std::size_t H = phi.frame().horizon();
  auto p = h.index * H == 0 ? phi.bits().find_first() : phi.bits().find_next(h.index * H - 1);
  if (p == Bits::npos || p / H != h.index) return H;
  return p % H;
}

}  // namespace rck
