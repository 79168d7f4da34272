#ifndef RCK_KERNEL_HPP
#define RCK_KERNEL_HPP

#include <span>
#include <vector>

#include "rck/event.hpp"

namespace rck {

/// Union of the kens of i wholly contained in phi.
Event knows(PlayerId i, const Event& phi);

/// phi is a union of kens of i.
bool is_local(PlayerId i, const Event& phi);

/// Intersection of knows(i, phi) over the group.
Event everyone_knows(std::span<const PlayerId> group, const Event& phi);

struct TraditionalCk {
  Event result;
  /// E^1 phi, E^2 phi, ... up to and including the first repeated layer.
  std::vector<Event> layers;
  std::size_t iterations = 0;
};

/// Greatest subset of phi local to every player of the group.
Event ck_traditional(std::span<const PlayerId> group, const Event& phi);
TraditionalCk ck_traditional_layers(std::span<const PlayerId> group, const Event& phi);

/// Full histories contained in phi.
Event box(const Event& phi);
/// Full histories touched by phi.
Event diamond(const Event& phi);
bool is_time_invariant(const Event& phi);
HistorySet histories_of(const Event& phi);
/// At most one point per history.
bool is_singular(const Event& phi);
/// Earliest time of phi in history h, or horizon if phi does not occur there.
std::size_t first_time(const Event& phi, HistoryId h);

}  // namespace rck

#endif  // RCK_KERNEL_HPP
