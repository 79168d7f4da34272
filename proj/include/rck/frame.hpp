#ifndef RCK_FRAME_HPP
#define RCK_FRAME_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace rck {

using Bits = boost::dynamic_bitset<std::uint64_t>;

/// Set of histories of a frame, indexed by history position.
using HistorySet = Bits;

struct PlayerId {
  std::size_t index = 0;
  auto operator<=>(const PlayerId&) const = default;
};

/// Two-player models (BDTF, attack games) name their players alpha and beta.
inline constexpr PlayerId kAlpha{0};
inline constexpr PlayerId kBeta{1};
inline PlayerId other(PlayerId i) { return PlayerId{1 - i.index}; }

struct HistoryId {
  std::size_t index = 0;
  auto operator<=>(const HistoryId&) const = default;
};

/// A history-time pair. Times run over 0 .. horizon-1.
struct Point {
  HistoryId history;
  std::size_t time = 0;
  auto operator<=>(const Point&) const = default;
};

using KenId = std::uint32_t;

/// Finite history-time frame with one knowledge partition per player.
///
/// Points are laid out history-major: index = history * horizon + time.
/// Ken labels passed to the constructor may be arbitrary integers; they are
/// renumbered to 0..k-1 in order of first appearance, so two frames with the
/// same partitions compare equal regardless of the labels used to build them.
class Frame {
 public:
  Frame(std::vector<std::string> histories, std::size_t horizon, std::vector<std::string> players,
        const std::vector<std::vector<std::int64_t>>& ken_labels);

  std::size_t history_count() const { return histories_.size(); }
  std::size_t horizon() const { return horizon_; }
  std::size_t point_count() const { return histories_.size() * horizon_; }
  std::size_t player_count() const { return players_.size(); }

  std::size_t index_of(Point p) const { return p.history.index * horizon_ + p.time; }
  Point point_at(std::size_t index) const { return Point{HistoryId{index / horizon_}, index % horizon_}; }
  bool valid(Point p) const { return p.history.index < histories_.size() && p.time < horizon_; }

  const std::string& history_name(HistoryId h) const { return histories_.at(h.index); }
  const std::vector<std::string>& history_names() const { return histories_; }
  std::optional<HistoryId> find_history(std::string_view name) const;
  HistoryId history(std::string_view name) const;

  const std::string& player_name(PlayerId i) const { return players_.at(i.index); }
  const std::vector<std::string>& player_names() const { return players_; }
  std::optional<PlayerId> find_player(std::string_view name) const;
  PlayerId player(std::string_view name) const;
  std::vector<PlayerId> players() const;
  void require_player(PlayerId i) const;

  KenId ken_of(PlayerId i, std::size_t point_index) const { return partitions_[i.index].ken_of[point_index]; }
  KenId ken_of(PlayerId i, Point p) const { return ken_of(i, index_of(p)); }
  std::size_t ken_count(PlayerId i) const { return partitions_[i.index].members.size(); }
  /// Point indices of a ken, ascending.
  std::span<const std::uint32_t> ken_members(PlayerId i, KenId k) const { return partitions_[i.index].members[k]; }

  /// Same histories, horizon, players and partitions (after label canonicalization).
  friend bool operator==(const Frame& a, const Frame& b);

 private:
  struct Partition {
    std::vector<KenId> ken_of;
    std::vector<std::vector<std::uint32_t>> members;
  };

  std::vector<std::string> histories_;
  std::size_t horizon_;
  std::vector<std::string> players_;
  std::vector<Partition> partitions_;
};

using FramePtr = std::shared_ptr<const Frame>;

FramePtr make_frame(std::vector<std::string> histories, std::size_t horizon, std::vector<std::string> players,
                    const std::vector<std::vector<std::int64_t>>& ken_labels);

}  // namespace rck

#endif  // RCK_FRAME_HPP
