#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "acowa/objective.hpp"
#include "acowa/sparse_dataset.hpp"

namespace acowa {

/// Class-conditional means of one partition and the number of rows behind
/// each. A class absent from the partition has valid_* == false, a zero
/// vector and zero mass.
struct CentroidSummary {
  std::size_t partition_id = 0;
  std::vector<double> mu_plus;
  std::vector<double> mu_minus;
  std::size_t mass_plus = 0;
  std::size_t mass_minus = 0;
  bool valid_plus = false;
  bool valid_minus = false;

  bool operator==(const CentroidSummary&) const = default;
};

/// Unweighted mean of the positive rows and of the negative rows.
CentroidSummary compute_centroids(const SparseDataset& part, std::size_t partition_id);

/// The partition's own rows followed by every other partition's valid
/// centroids (ordered by partition id, positive before negative), each
/// appended as one sparse row whose weight is its class mass. The input is
/// not modified. Throws DimensionError on a width mismatch and
/// InvalidArgument when `self_id` is not among the summaries.
SparseDataset augment_partition(const SparseDataset& part, std::span<const CentroidSummary> all,
                                std::size_t self_id);

struct CentroidGap {
  double gap = 0.0;    // L_w(part) - |part| log(1 + exp(-y w.mu))
  double bound = 0.0;  // |part| / 8 * Var(Z), Z = -y w.x over the rows
};

/// Loss lost by replacing a single-class point set with its centroid, and
/// the curvature bound on that loss. Rows count with unit weight and Var is
/// the population variance. Throws InvalidArgument on mixed labels.
CentroidGap centroid_loss_gap(const SparseDataset& part, const ModelVector& w);

}  // namespace acowa
