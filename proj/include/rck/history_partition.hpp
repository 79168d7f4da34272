#ifndef RCK_HISTORY_PARTITION_HPP
#define RCK_HISTORY_PARTITION_HPP

#include <cstddef>
#include <vector>

#include "rck/frame.hpp"

namespace rck {

/// Partition of (a subset of) a frame's histories. Cells are numbered in order
/// of their smallest member; histories outside the domain carry `outside`.
class HistoryPartition {
 public:
  static constexpr std::size_t outside = static_cast<std::size_t>(-1);

  HistoryPartition() = default;
  /// Relabels arbitrary labels canonically; `outside` entries stay outside.
  explicit HistoryPartition(const std::vector<std::size_t>& labels);

  std::size_t history_count() const { return cell_of_.size(); }
  std::size_t cell_count() const { return cell_count_; }
  std::size_t cell_of(HistoryId h) const { return cell_of_.at(h.index); }
  bool in_domain(HistoryId h) const { return cell_of_.at(h.index) != outside; }
  const std::vector<std::size_t>& labels() const { return cell_of_; }
  std::vector<std::vector<HistoryId>> cells() const;
  HistorySet cell_members(std::size_t cell) const;

  /// Same cells over the given domain.
  HistoryPartition restricted(const HistorySet& domain) const;

  friend bool operator==(const HistoryPartition&, const HistoryPartition&) = default;

 private:
  std::vector<std::size_t> cell_of_;
  std::size_t cell_count_ = 0;
};

/// Finest common coarsening. Both partitions must share the same domain.
HistoryPartition partition_meet(const HistoryPartition& p, const HistoryPartition& q);

/// Every cell of `fine` lies inside a cell of `coarse` (over fine's domain).
bool refines(const HistoryPartition& fine, const HistoryPartition& coarse);

}  // namespace rck

#endif
