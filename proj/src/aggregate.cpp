#include "acowa/aggregate.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "acowa/error.hpp"
#include "acowa/events.hpp"
#include "acowa/solver.hpp"

namespace acowa {

void ModelMatrix::validate() const {
  if (columns.empty()) throw InvalidArgument("model matrix has no columns");
  for (const auto& c : columns)
    if (c.size() != columns.front().size()) throw DimensionError("model columns differ in length");
}

ModelVector naive_average(const ModelMatrix& models) {
  models.validate();
  const double inv_p = 1.0 / static_cast<double>(models.p());
  ModelVector avg(models.d());
  for (const auto& c : models.columns) {
    for (std::size_t j = 0; j < avg.size(); ++j) avg.coefficients[j] += c.coefficients[j];
    if (c.has_intercept) {
      avg.has_intercept = true;
      avg.intercept += c.intercept;
    }
  }
  for (auto& v : avg.coefficients) v *= inv_p;
  avg.intercept *= inv_p;
  return avg;
}

DenseMatrix project_models(const SparseDataset& merge_set, const ModelMatrix& models) {
  models.validate();
  if (models.d() != merge_set.n_cols())
    throw DimensionError("models have " + std::to_string(models.d()) +
                         " coefficients, merge set has " + std::to_string(merge_set.n_cols()));
  DenseMatrix out{merge_set.n_rows(), models.p(),
                  std::vector<double>(merge_set.n_rows() * models.p())};
  for (std::size_t j = 0; j < models.p(); ++j) {
    const auto& w = models.columns[j];
    for (std::size_t i = 0; i < merge_set.n_rows(); ++i)
      out.data[i * out.cols + j] = w.predict(merge_set.row(i));
  }
  return out;
}

namespace {

// The p-dimensional logistic problem whose features are the model scores.
SparseDataset projected_dataset(const SparseDataset& merge_set, const DenseMatrix& proj,
                                std::span<const std::size_t> rows) {
  DatasetBuilder b(proj.cols);
  for (auto i : rows)
    b.add_dense_row(merge_set.label(i), std::span(proj.data).subspan(i * proj.cols, proj.cols),
                    merge_set.weight(i));
  return std::move(b).build();
}

bool has_both_classes(const SparseDataset& ds) {
  bool pos = false;
  bool neg = false;
  for (auto y : ds.labels()) (y > 0 ? pos : neg) = true;
  return pos && neg;
}

// Orthogonal V whose columns are the eigenvectors of P^T P. Scores P V have
// orthogonal columns, and |V u| = |u| keeps the ridge penalty unchanged, so
// fitting u on P V and returning V u solves the same problem. Model scores
// are often nearly collinear, which stalls coordinate descent in the
// original basis.
DenseMatrix decorrelating_rotation(const DenseMatrix& proj) {
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> P(proj.data.data(), static_cast<Eigen::Index>(proj.rows),
                                     static_cast<Eigen::Index>(proj.cols));
  const Eigen::MatrixXd gram = P.transpose() * P;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  if (eig.info() != Eigen::Success) throw Error("eigendecomposition of the merge Gram matrix failed");
  DenseMatrix V{proj.cols, proj.cols, std::vector<double>(proj.cols * proj.cols)};
  Eigen::Map<RowMajor>(V.data.data(), static_cast<Eigen::Index>(V.rows),
                       static_cast<Eigen::Index>(V.cols)) = eig.eigenvectors();
  return V;
}

DenseMatrix times(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out{a.rows, b.cols, std::vector<double>(a.rows * b.cols, 0.0)};
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) out.data[i * out.cols + j] += aik * b(k, j);
    }
  return out;
}

std::vector<double> fit_combination(const SparseDataset& projected, double lambda_cv) {
  const auto res = solve_glmnet(projected, SolverConfig::full(Penalty{0.0, lambda_cv, {}}));
  return res.model.coefficients;
}

}  // namespace

MergeResult owa_merge(const SparseDataset& merge_set, const ModelMatrix& models,
                      const std::vector<double>& grid, std::size_t cv_folds, std::uint64_t seed) {
  if (merge_set.n_rows() == 0) throw InvalidArgument("merge set is empty");
  if (grid.empty()) throw InvalidArgument("lambda_cv grid is empty");
  if (cv_folds < 2) throw InvalidArgument("cv_folds must be >= 2");
  for (double l : grid)
    if (!(l >= 0.0)) throw InvalidArgument("lambda_cv values must be >= 0");

  const DenseMatrix scores = project_models(merge_set, models);
  const DenseMatrix V = decorrelating_rotation(scores);
  const DenseMatrix proj = times(scores, V);
  const std::size_t n = merge_set.n_rows();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> fold_of(n);
  for (std::size_t k = 0; k < n; ++k) fold_of[order[k]] = k % cv_folds;

  struct Fold {
    SparseDataset train;
    SparseDataset valid;
  };
  std::vector<Fold> folds;
  for (std::size_t f = 0; f < cv_folds; ++f) {
    std::vector<std::size_t> tr, va;
    for (std::size_t i = 0; i < n; ++i) (fold_of[i] == f ? va : tr).push_back(i);
    auto train = projected_dataset(merge_set, proj, tr);
    if (va.empty() || !has_both_classes(train)) continue;
    folds.push_back({std::move(train), projected_dataset(merge_set, proj, va)});
  }

  MergeResult out;
  std::vector<double> sorted = grid;
  std::sort(sorted.begin(), sorted.end());
  if (folds.empty()) {
    events::warn("merge cross-validation has no usable fold; using the grid median");
    out.lambda_cv = sorted[(sorted.size() - 1) / 2];
  } else {
    out.cross_validated = true;
    double best = std::numeric_limits<double>::infinity();
    for (double lambda : sorted) {
      double total = 0.0;
      for (const auto& fold : folds) {
        ModelVector v(fit_combination(fold.train, lambda));
        total += logistic_loss(fold.valid, v) / fold.valid.total_weight();
      }
      const double mean = total / static_cast<double>(folds.size());
      out.cv_loss.push_back(mean);
      if (mean < best) {  // strict: ties keep the smaller lambda
        best = mean;
        out.lambda_cv = lambda;
      }
    }
  }

  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  const auto u = fit_combination(projected_dataset(merge_set, proj, all), out.lambda_cv);
  out.combination.assign(models.p(), 0.0);
  for (std::size_t j = 0; j < models.p(); ++j)
    for (std::size_t k = 0; k < models.p(); ++k) out.combination[j] += V(j, k) * u[k];

  out.model = ModelVector(models.d());
  for (std::size_t j = 0; j < models.p(); ++j) {
    const double vj = out.combination[j];
    if (vj == 0.0) continue;
    const auto& col = models.columns[j];
    for (std::size_t k = 0; k < out.model.size(); ++k) out.model.coefficients[k] += vj * col.coefficients[k];
    if (col.has_intercept) {
      out.model.has_intercept = true;
      out.model.intercept += vj * col.intercept;
    }
  }
  return out;
}

FeatureWeights compute_feature_weights(const ModelMatrix& models, double beta) {
  models.validate();
  if (!(beta >= 0.0)) throw InvalidArgument("beta must be >= 0");
  FeatureWeights fw;
  fw.beta = beta;
  fw.support_fraction.assign(models.d(), 0.0);
  for (const auto& c : models.columns)
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c.coefficients[j] != 0.0) fw.support_fraction[j] += 1.0;
  fw.alpha.resize(models.d());
  const double p = static_cast<double>(models.p());
  for (std::size_t j = 0; j < models.d(); ++j) {
    fw.support_fraction[j] /= p;
    fw.alpha[j] = 1.0 + beta * fw.support_fraction[j];
  }
  return fw;
}

Message to_message(const FeatureWeights& fw) {
  Message m;
  m.partition_id = 0;
  m.kind = MessageKind::feature_weights;
  m.vectors = {{fw.beta}, fw.alpha, fw.support_fraction};
  return m;
}

FeatureWeights feature_weights_from_message(const Message& m) {
  if (m.kind != MessageKind::feature_weights || m.vectors.size() != 3 || m.vectors[0].size() != 1)
    throw Error("not a feature-weight message");
  return {m.vectors[1], m.vectors[0][0], m.vectors[2]};
}

}  // namespace acowa
