#pragma once

// Shared fixtures and independent oracles for the test binaries. Nothing
// here calls into the library's loss or gradient code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "acowa/objective.hpp"
#include "acowa/sparse_dataset.hpp"
#include "acowa/synth.hpp"

namespace acowa::testing {

/// Random sparse dataset with labels drawn from a noisy random linear model.
inline SparseDataset random_dataset(std::mt19937_64& rng, std::size_t n, std::size_t d,
                                    double density = 0.5, bool random_weights = false) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  std::vector<double> truth(d);
  for (auto& v : truth) v = normal(rng);
  DatasetBuilder b(d);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x(d, 0.0);
    double margin = 0.0;
    for (std::size_t j = 0; j < d; ++j)
      if (unit(rng) < density) {
        x[j] = normal(rng);
        margin += x[j] * truth[j];
      }
    const double y = margin + normal(rng) >= 0.0 ? 1.0 : -1.0;
    b.add_dense_row(y, x, random_weights ? 0.25 + 2.0 * unit(rng) : 1.0);
  }
  return std::move(b).build();
}

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t d, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<double> w(d);
  for (auto& v : w) v = normal(rng);
  return w;
}

/// Dense copy of the feature matrix, row-major.
inline std::vector<std::vector<double>> dense(const SparseDataset& ds) {
  std::vector<std::vector<double>> x(ds.n_rows(), std::vector<double>(ds.n_cols(), 0.0));
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    const auto r = ds.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) x[i][r.indices[k]] = r.values[k];
  }
  return x;
}

/// Weighted logistic loss by direct summation over a dense copy.
inline double direct_loss(const SparseDataset& ds, const std::vector<double>& w, double b = 0.0) {
  const auto x = dense(ds);
  long double total = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    long double z = b;
    for (std::size_t j = 0; j < w.size(); ++j) z += static_cast<long double>(x[i][j]) * w[j];
    const long double m = -ds.label(i) * z;
    const long double term = m > 0 ? m + std::log1p(std::exp(-m)) : std::log1p(std::exp(m));
    total += ds.weight(i) * term;
  }
  return static_cast<double>(total);
}

/// Elastic-net objective by direct summation.
inline double direct_objective(const SparseDataset& ds, const std::vector<double>& w,
                               double lambda1, double lambda2,
                               const std::vector<double>& alpha = {}) {
  double pen = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double a = alpha.empty() ? 1.0 : alpha[j];
    pen += lambda1 * std::abs(w[j]) / a + lambda2 * (w[j] / a) * (w[j] / a);
  }
  return direct_loss(ds, w) + pen;
}

inline double relative_gap(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

/// The planted benchmark used by the distributed-accuracy checks.
struct Benchmark {
  SparseDataset train;
  SparseDataset test;
  double lambda1 = 10.0;
};

inline Benchmark planted_benchmark() {
  SynthOptions opt;
  opt.n = 20000;
  opt.d = 500;
  opt.density = 0.1;
  opt.informative_features = 20;
  opt.noise_sd = 0.5;
  opt.seed = 12345;
  auto data = synth_sparse(opt);
  auto test = synth_rows(data.planted, 10000, opt.density, opt.noise_sd, 999);
  return {std::move(data.data), std::move(test), 10.0};
}

}  // namespace acowa::testing
