#include "acowa/partition.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "acowa/error.hpp"
#include "acowa/events.hpp"

namespace acowa {

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) noexcept {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<std::size_t> PartitionPlan::rows_of(std::size_t i) const {
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < assignment.size(); ++r)
    if (assignment[r] == i) rows.push_back(r);
  return rows;
}

std::vector<std::size_t> PartitionPlan::sizes() const {
  std::vector<std::size_t> s(p, 0);
  for (auto a : assignment) ++s[a];
  return s;
}

PartitionPlan partition(const SparseDataset& ds, std::size_t p, std::uint64_t seed) {
  if (p == 0) throw PartitionError("partition count must be at least 1");
  if (p > ds.n_rows())
    throw PartitionError("cannot split " + std::to_string(ds.n_rows()) + " rows into " +
                         std::to_string(p) + " partitions");
  std::vector<std::size_t> order(ds.n_rows());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  PartitionPlan plan{p, std::vector<std::size_t>(ds.n_rows()), seed};
  for (std::size_t k = 0; k < order.size(); ++k) plan.assignment[order[k]] = k % p;
  return plan;
}

SparseDataset extract_partition(const SparseDataset& ds, const PartitionPlan& plan, std::size_t i) {
  if (plan.assignment.size() != ds.n_rows()) throw PartitionError("plan does not match dataset");
  if (i >= plan.p) throw PartitionError("partition id out of range");
  const auto rows = plan.rows_of(i);
  return take_rows(ds, rows);
}

SparseDataset subsample(const SparseDataset& ds, std::size_t size, std::uint64_t seed) {
  if (size == 0) throw InvalidArgument("subsample size must be positive");
  if (size > ds.n_rows()) {
    events::warn("subsample size " + std::to_string(size) + " clamped to " +
                 std::to_string(ds.n_rows()) + " rows");
    size = ds.n_rows();
  }
  std::vector<std::size_t> order(ds.n_rows());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates: the first `size` slots are a uniform sample.
  for (std::size_t k = 0; k < size; ++k) {
    std::uniform_int_distribution<std::size_t> pick(k, order.size() - 1);
    std::swap(order[k], order[pick(rng)]);
  }
  order.resize(size);
  return take_rows(ds, order);
}

std::size_t min_merge_set_size(std::size_t n, std::size_t p, std::size_t d) {
  const std::size_t per_partition = n / std::max<std::size_t>(p, 1);
  const std::size_t by_dim = d == 0 ? per_partition : (p * n) / d;
  return std::max<std::size_t>(1, std::min(per_partition, by_dim));
}

}  // namespace acowa
