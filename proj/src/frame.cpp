#include "rck/frame.hpp"

#include <limits>
#include <set>
#include <unordered_map>

#include "rck/errors.hpp"

namespace rck {

Frame::Frame(std::vector<std::string> histories, std::size_t horizon, std::vector<std::string> players,
             const std::vector<std::vector<std::int64_t>>& ken_labels)
    : histories_(std::move(histories)), horizon_(horizon), players_(std::move(players)) {
  if (histories_.empty()) throw PreconditionError("frame needs at least one history");
  if (players_.empty()) throw PreconditionError("frame needs at least one player");
  if (horizon_ == 0) throw PreconditionError("frame horizon must be at least 1");
  if (ken_labels.size() != players_.size())
    throw PreconditionError("one ken assignment per player is required");
  if (point_count() > std::numeric_limits<std::uint32_t>::max())
    throw CapExceeded("frame has too many points");

  std::set<std::string_view> seen;
  for (const auto& h : histories_)
    if (!seen.insert(h).second) throw PreconditionError("duplicate history name '" + h + "'");
  seen.clear();
  for (const auto& p : players_)
    if (!seen.insert(p).second) throw PreconditionError("duplicate player name '" + p + "'");

  const std::size_t n = point_count();
  partitions_.resize(players_.size());
  for (std::size_t i = 0; i < players_.size(); ++i) {
    const auto& labels = ken_labels[i];
    if (labels.size() != n)
      throw PreconditionError("ken assignment for player '" + players_[i] + "' does not cover every point");
    auto& part = partitions_[i];
    part.ken_of.resize(n);
    std::unordered_map<std::int64_t, KenId> canon;
    for (std::size_t p = 0; p < n; ++p) {
      auto [it, fresh] = canon.try_emplace(labels[p], static_cast<KenId>(part.members.size()));
      if (fresh) part.members.emplace_back();
      part.ken_of[p] = it->second;
      part.members[it->second].push_back(static_cast<std::uint32_t>(p));
    }
  }
}

std::optional<HistoryId> Frame::find_history(std::string_view name) const {
  for (std::size_t h = 0; h < histories_.size(); ++h)
    if (histories_[h] == name) return HistoryId{h};
  return std::nullopt;
}

HistoryId Frame::history(std::string_view name) const {
  if (auto h = find_history(name)) return *h;
  throw PreconditionError("unknown history '" + std::string(name) + "'");
}

std::optional<PlayerId> Frame::find_player(std::string_view name) const {
  for (std::size_t i = 0; i < players_.size(); ++i)
    if (players_[i] == name) return PlayerId{i};
  return std::nullopt;
}

PlayerId Frame::player(std::string_view name) const {
  if (auto i = find_player(name)) return *i;
  throw PreconditionError("unknown player '" + std::string(name) + "'");
}

std::vector<PlayerId> Frame::players() const {
  std::vector<PlayerId> out;
  for (std::size_t i = 0; i < players_.size(); ++i) out.push_back(PlayerId{i});
  return out;
}

void Frame::require_player(PlayerId i) const {
  if (i.index >= players_.size()) throw PreconditionError("unknown player index " + std::to_string(i.index));
}

bool operator==(const Frame& a, const Frame& b) {
  if (a.histories_ != b.histories_ || a.horizon_ != b.horizon_ || a.players_ != b.players_) return false;
  for (std::size_t i = 0; i < a.partitions_.size(); ++i)
    if (a.partitions_[i].ken_of != b.partitions_[i].ken_of) return false;
  return true;
}

FramePtr make_frame(std::vector<std::string> histories, std::size_t horizon, std::vector<std::string> players,
                    const std::vector<std::vector<std::int64_t>>& ken_labels) {
  return std::make_shared<const Frame>(std::move(histories), horizon, std::move(players), ken_labels);
}

}  // namespace rck
