#include "acowa/objective.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "acowa/error.hpp"

namespace acowa {

std::size_t ModelVector::nnz() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(coefficients.begin(), coefficients.end(), [](double v) { return v != 0.0; }));
}

void Penalty::validate(std::size_t d) const {
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0)) throw InvalidArgument("penalties must be >= 0");
  if (feature_scale.empty()) return;
  if (feature_scale.size() != d)
    throw DimensionError("feature_scale has length " + std::to_string(feature_scale.size()) +
                         ", expected " + std::to_string(d));
  for (double a : feature_scale)
    if (!(a > 0.0) || !std::isfinite(a)) throw InvalidArgument("feature scales must be > 0");
}

double Penalty::value(const ModelVector& w) const noexcept {
  double l1 = 0.0;
  double l2 = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double c = w.coefficients[j];
    if (c == 0.0) continue;
    l1 += l1_weight(j) * std::abs(c);
    l2 += l2_weight(j) * c * c;
  }
  return l1 + l2;
}

namespace detail {

void check_width(const SparseDataset& ds, const ModelVector& w) {
  if (w.size() != ds.n_cols())
    throw DimensionError("model has " + std::to_string(w.size()) + " coefficients, dataset has " +
                         std::to_string(ds.n_cols()) + " columns");
}

RowFactors row_factors(const SparseDataset& ds, std::span<const double> raw_scores) {
  RowFactors f{std::vector<double>(ds.n_rows()), std::vector<double>(ds.n_rows())};
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    const double y = ds.label(i);
    const double wt = ds.weight(i);
    const double s = sigmoid(raw_scores[i]);
    f.grad[i] = -wt * y * sigmoid(-y * raw_scores[i]);
    f.curv[i] = wt * s * sigmoid(-raw_scores[i]);
  }
  return f;
}

std::vector<double> transpose_times(const SparseDataset& ds, std::span<const double> v) {
  std::vector<double> out(ds.n_cols(), 0.0);
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    if (v[i] == 0.0) continue;
    const auto r = ds.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) out[r.indices[k]] += v[i] * r.values[k];
  }
  return out;
}

std::vector<double> squared_transpose_times(const SparseDataset& ds, std::span<const double> v) {
  std::vector<double> out(ds.n_cols(), 0.0);
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    if (v[i] == 0.0) continue;
    const auto r = ds.row(i);
    for (std::size_t k = 0; k < r.size(); ++k)
      out[r.indices[k]] += v[i] * r.values[k] * r.values[k];
  }
  return out;
}

}  // namespace detail

std::vector<double> scores(const SparseDataset& ds, const ModelVector& w) {
  detail::check_width(ds, w);
  std::vector<double> z(ds.n_rows());
  for (std::size_t i = 0; i < ds.n_rows(); ++i) z[i] = w.predict(ds.row(i));
  return z;
}

double logistic_loss(const SparseDataset& ds, const ModelVector& w) {
  detail::check_width(ds, w);
  double loss = 0.0;
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    const double wt = ds.weight(i);
    if (wt == 0.0) continue;
    loss += wt * logistic_loss_at(ds.label(i) * w.predict(ds.row(i)));
  }
  return loss;
}

double objective(const SparseDataset& ds, const ModelVector& w, const Penalty& pen) {
  detail::check_width(ds, w);
  pen.validate(ds.n_cols());
  return logistic_loss(ds, w) + pen.value(w);
}

ModelVector smooth_gradient(const SparseDataset& ds, const ModelVector& w) {
  const auto z = scores(ds, w);
  const auto f = detail::row_factors(ds, z);
  ModelVector g(detail::transpose_times(ds, f.grad));
  g.has_intercept = w.has_intercept;
  if (w.has_intercept) g.intercept = std::accumulate(f.grad.begin(), f.grad.end(), 0.0);
  return g;
}

std::vector<double> quadratic_diag(const SparseDataset& ds, const ModelVector& w) {
  const auto z = scores(ds, w);
  const auto f = detail::row_factors(ds, z);
  return detail::squared_transpose_times(ds, f.curv);
}

double lambda_max(const SparseDataset& ds) {
  const auto g = smooth_gradient(ds, ModelVector(ds.n_cols()));
  double m = 0.0;
  for (double v : g.coefficients) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace acowa
