#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "acowa/sparse_dataset.hpp"

namespace acowa {

/// Derives an independent stream seed from a base seed (splitmix64 step).
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) noexcept;

struct PartitionPlan {
  std::size_t p = 1;
  std::vector<std::size_t> assignment;  // per-row partition id in [0, p)
  std::uint64_t seed = 0;

  /// Row ids of partition `i`, in increasing order.
  std::vector<std::size_t> rows_of(std::size_t i) const;
  std::vector<std::size_t> sizes() const;
};

/// Balanced random assignment: rows are shuffled, then dealt round-robin,
/// so partition sizes differ by at most one. Deterministic in `seed`.
/// Throws PartitionError when p == 0 or p > n_rows.
PartitionPlan partition(const SparseDataset& ds, std::size_t p, std::uint64_t seed);

/// Materializes partition `i` as its own dataset with the parent's width.
SparseDataset extract_partition(const SparseDataset& ds, const PartitionPlan& plan, std::size_t i);

/// Uniform sample of `size` rows without replacement, in sampled order.
/// A size above n_rows is clamped (with a warning event); zero throws.
SparseDataset subsample(const SparseDataset& ds, std::size_t size, std::uint64_t seed);

/// Merge-set size min(n/p, p*n/d) using integer division, at least 1.
std::size_t min_merge_set_size(std::size_t n, std::size_t p, std::size_t d);

}  // namespace acowa
