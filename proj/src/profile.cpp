#include "rck/profile.hpp"

#include <algorithm>

#include "rck/errors.hpp"
#include "rck/kernel.hpp"

namespace rck {

Profile::Profile(FramePtr frame, std::vector<std::pair<PlayerId, Event>> anchors) : frame_(std::move(frame)) {
  if (!frame_) throw PreconditionError("profile needs a frame");
  if (anchors.empty()) throw PreconditionError("profile needs at least one player");
  std::sort(anchors.begin(), anchors.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [i, psi] : anchors) {
    frame_->require_player(i);
    if (psi.frame_ptr() != frame_) throw FrameMismatch();
    if (!players_.empty() && players_.back() == i)
      throw PreconditionError("player '" + frame_->player_name(i) + "' appears twice in profile");
    if (!is_local(i, psi))
      throw PreconditionError("anchor of player '" + frame_->player_name(i) + "' is not local to that player");
    players_.push_back(i);
    anchors_.push_back(std::move(psi));
  }
}

bool Profile::has(PlayerId i) const { return std::find(players_.begin(), players_.end(), i) != players_.end(); }

const Event& Profile::anchor(PlayerId i) const {
  auto it = std::find(players_.begin(), players_.end(), i);
  if (it == players_.end()) throw PreconditionError("player is not part of the profile");
  return anchors_[static_cast<std::size_t>(it - players_.begin())];
}

bool operator==(const Profile& a, const Profile& b) { return a.players_ == b.players_ && a.anchors_ == b.anchors_; }

}  // namespace rck
