#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "acowa/sparse_dataset.hpp"

namespace acowa {

/// Linear model: dense coefficients plus an optional unpenalized intercept.
struct ModelVector {
  std::vector<double> coefficients;
  double intercept = 0.0;
  bool has_intercept = false;

  ModelVector() = default;
  explicit ModelVector(std::size_t d) : coefficients(d, 0.0) {}
  explicit ModelVector(std::vector<double> w) : coefficients(std::move(w)) {}

  std::size_t size() const noexcept { return coefficients.size(); }
  std::size_t nnz() const noexcept;

  /// w.x (+ intercept when enabled).
  double predict(RowView x) const noexcept {
    return x.dot(coefficients) + (has_intercept ? intercept : 0.0);
  }

  bool operator==(const ModelVector&) const = default;
};

/// Elastic-net penalty with optional per-feature scales alpha_j:
///   lambda1 * sum_j |w_j| / alpha_j  +  lambda2 * sum_j (w_j / alpha_j)^2
struct Penalty {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  std::vector<double> feature_scale;  // empty means alpha_j = 1

  double l1_weight(std::size_t j) const noexcept {
    return feature_scale.empty() ? lambda1 : lambda1 / feature_scale[j];
  }
  double l2_weight(std::size_t j) const noexcept {
    if (feature_scale.empty()) return lambda2;
    const double inv = 1.0 / feature_scale[j];
    return lambda2 * inv * inv;
  }

  /// Throws InvalidArgument on negative lambdas or nonpositive scales, and
  /// DimensionError when a non-empty scale vector has the wrong length.
  void validate(std::size_t d) const;

  double value(const ModelVector& w) const noexcept;
};

/// log(1 + exp(-z)) without overflow.
inline double logistic_loss_at(double z) noexcept {
  return std::log1p(std::exp(-std::abs(z))) + std::max(0.0, -z);
}

/// 1 / (1 + exp(-z)) without overflow.
inline double sigmoid(double z) noexcept {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

/// Per-row raw scores w.x_i (+ intercept).
std::vector<double> scores(const SparseDataset& ds, const ModelVector& w);

/// sum_i weight_i * log(1 + exp(-y_i w.x_i)).
double logistic_loss(const SparseDataset& ds, const ModelVector& w);

/// logistic_loss plus the penalty. The intercept is never penalized.
double objective(const SparseDataset& ds, const ModelVector& w, const Penalty& pen);

/// Gradient of logistic_loss. The intercept slot carries d/db when the
/// model has an intercept.
ModelVector smooth_gradient(const SparseDataset& ds, const ModelVector& w);

/// Diagonal of the logistic Hessian: sum_i weight_i s_i (1 - s_i) x_ij^2.
std::vector<double> quadratic_diag(const SparseDataset& ds, const ModelVector& w);

/// Smallest lambda1 for which w = 0 is optimal: max_j |grad_j L(0)|.
double lambda_max(const SparseDataset& ds);

namespace detail {

/// Per-row derivative factors of the loss at the given scores:
///   grad[i] = -weight_i y_i sigmoid(-y_i score_i)
///   curv[i] =  weight_i sigmoid(score_i) sigmoid(-score_i)
struct RowFactors {
  std::vector<double> grad;
  std::vector<double> curv;
};
RowFactors row_factors(const SparseDataset& ds, std::span<const double> raw_scores);

/// X^T v in one CSR pass.
std::vector<double> transpose_times(const SparseDataset& ds, std::span<const double> v);
/// (X o X)^T v in one CSR pass.
std::vector<double> squared_transpose_times(const SparseDataset& ds, std::span<const double> v);

void check_width(const SparseDataset& ds, const ModelVector& w);

}  // namespace detail
}  // namespace acowa
