#ifndef RCK_PROFILE_HPP
#define RCK_PROFILE_HPP

#include <utility>
#include <vector>

#include "rck/event.hpp"

namespace rck {

/// One i-local anchor event per player of a nonempty group. Construction
/// rejects non-local anchors instead of repairing them.
class Profile {
 public:
  Profile(FramePtr frame, std::vector<std::pair<PlayerId, Event>> anchors);

  const FramePtr& frame_ptr() const { return frame_; }
  const Frame& frame() const { return *frame_; }
  const std::vector<PlayerId>& players() const { return players_; }
  std::size_t size() const { return players_.size(); }
  bool has(PlayerId i) const;
  const Event& anchor(PlayerId i) const;
  const Event& anchor_at(std::size_t k) const { return anchors_[k]; }

  friend bool operator==(const Profile&, const Profile&);

 private:
  FramePtr frame_;
  std::vector<PlayerId> players_;
  std::vector<Event> anchors_;
};

}  // namespace rck

#endif
