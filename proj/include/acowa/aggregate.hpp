#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "acowa/message.hpp"
#include "acowa/objective.hpp"
#include "acowa/sparse_dataset.hpp"

namespace acowa {

enum class Round { round1, round2 };

/// Column-stacked per-partition models (d x p), ordered by partition id.
struct ModelMatrix {
  std::vector<ModelVector> columns;
  Round source_round = Round::round1;

  std::size_t p() const noexcept { return columns.size(); }
  std::size_t d() const noexcept { return columns.empty() ? 0 : columns.front().size(); }

  /// Throws InvalidArgument when empty, DimensionError on ragged columns.
  void validate() const;
};

struct FeatureWeights {
  std::vector<double> alpha;             // 1 + beta * P_j
  double beta = 0.0;
  std::vector<double> support_fraction;  // P_j: share of models with w_j != 0
};

/// Row-major dense matrix.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  double operator()(std::size_t i, std::size_t j) const noexcept { return data[i * cols + j]; }
};

/// Unweighted mean of the columns.
ModelVector naive_average(const ModelMatrix& models);

/// Entry (i, j) is the score of merge row i under model j (w_j.x_i + b_j).
DenseMatrix project_models(const SparseDataset& merge_set, const ModelMatrix& models);

struct MergeResult {
  ModelVector model;               // W v
  std::vector<double> combination; // v
  double lambda_cv = 0.0;
  bool cross_validated = false;    // false when every fold was degenerate
  std::vector<double> cv_loss;     // mean validation loss per grid entry
};

/// Learns the combination v of the column models by minimizing the
/// logistic loss of (W v) on the merge set plus lambda_cv * |v|^2, with
/// lambda_cv chosen by k-fold cross-validation over `grid` (mean per-row
/// validation loss, ties to the smallest lambda). v is unconstrained.
///
/// When no fold has both classes in its training split and a nonempty
/// validation split, CV is skipped and the grid median is used.
MergeResult owa_merge(const SparseDataset& merge_set, const ModelMatrix& models,
                      const std::vector<double>& grid, std::size_t cv_folds, std::uint64_t seed);

/// P_j and alpha_j = 1 + beta * P_j over the columns.
FeatureWeights compute_feature_weights(const ModelMatrix& models, double beta);

Message to_message(const FeatureWeights& fw);
FeatureWeights feature_weights_from_message(const Message& m);

}  // namespace acowa
