#include "rck/history_partition.hpp"

#include <unordered_map>

#include "disjoint_sets.hpp"
#include "rck/errors.hpp"

namespace rck {

HistoryPartition::HistoryPartition(const std::vector<std::size_t>& labels) : cell_of_(labels.size(), outside) {
  std::unordered_map<std::size_t, std::size_t> canon;
  for (std::size_t h = 0; h < labels.size(); ++h) {
    if (labels[h] == outside) continue;
    auto [it, fresh] = canon.try_emplace(labels[h], cell_count_);
    if (fresh) ++cell_count_;
    cell_of_[h] = it->second;
  }
}

std::vector<std::vector<HistoryId>> HistoryPartition::cells() const {
  std::vector<std::vector<HistoryId>> out(cell_count_);
  for (std::size_t h = 0; h < cell_of_.size(); ++h)
    if (cell_of_[h] != outside) out[cell_of_[h]].push_back(HistoryId{h});
  return out;
}

HistorySet HistoryPartition::cell_members(std::size_t cell) const {
  HistorySet out(cell_of_.size());
  for (std::size_t h = 0; h < cell_of_.size(); ++h)
    if (cell_of_[h] == cell) out.set(h);
  return out;
}

HistoryPartition HistoryPartition::restricted(const HistorySet& domain) const {
  std::vector<std::size_t> labels(cell_of_.size(), outside);
  for (std::size_t h = 0; h < cell_of_.size(); ++h)
    if (domain.test(h)) labels[h] = cell_of_[h];
  return HistoryPartition(labels);
}

HistoryPartition partition_meet(const HistoryPartition& p, const HistoryPartition& q) {
  const std::size_t n = p.history_count();
  if (q.history_count() != n) throw PreconditionError("partitions cover different frames");
  detail::DisjointSets ds(n);
  std::vector<std::size_t> first_p(p.cell_count(), HistoryPartition::outside);
  std::vector<std::size_t> first_q(q.cell_count(), HistoryPartition::outside);
  for (std::size_t h = 0; h < n; ++h) {
    const bool in_p = p.labels()[h] != HistoryPartition::outside;
    const bool in_q = q.labels()[h] != HistoryPartition::outside;
    if (in_p != in_q) throw PreconditionError("partitions have different domains");
    if (!in_p) continue;
    auto& fp = first_p[p.labels()[h]];
    if (fp == HistoryPartition::outside) fp = h; else ds.unite(fp, h);
    auto& fq = first_q[q.labels()[h]];
    if (fq == HistoryPartition::outside) fq = h; else ds.unite(fq, h);
  }
  std::vector<std::size_t> labels(n, HistoryPartition::outside);
  for (std::size_t h = 0; h < n; ++h)
    if (p.labels()[h] != HistoryPartition::outside) labels[h] = ds.find(h);
  return HistoryPartition(labels);
}

bool refines(const HistoryPartition& fine, const HistoryPartition& coarse) {
  std::vector<std::size_t> image(fine.cell_count(), HistoryPartition::outside);
  for (std::size_t h = 0; h < fine.history_count(); ++h) {
    const std::size_t c = fine.labels()[h];
    if (c == HistoryPartition::outside) continue;
    const std::size_t d = coarse.labels().at(h);
    if (d == HistoryPartition::outside) return false;
    if (image[c] == HistoryPartition::outside) image[c] = d;
    else if (image[c] != d) return false;
  }
  return true;
}

}  // namespace rck
