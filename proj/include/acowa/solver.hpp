#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "acowa/objective.hpp"
#include "acowa/sparse_dataset.hpp"

namespace acowa {

enum class SolverMode { relaxed, full };

struct SolverConfig {
  Penalty penalty;
  std::size_t max_outer = 20;  // Newton steps
  std::size_t max_inner = 50;  // CD sweeps per Newton step
  double tol = 1e-4;           // relative objective decrease
  double kkt_tol = 1e-3;       // max subgradient violation accepted as converged
  SolverMode mode = SolverMode::relaxed;
  bool shrinking = true;       // skip coordinates parked at zero with slack
  bool shuffle = false;        // randomized CD order instead of cyclic
  std::uint64_t shuffle_seed = 0;
  bool fit_intercept = false;

  /// 20 outer / 50 inner iterations, tol 1e-4, shrinking on.
  static SolverConfig relaxed(Penalty pen = {});
  /// 100 outer / 1000 inner iterations, tol 1e-8, shrinking off.
  static SolverConfig full(Penalty pen = {});

  void validate() const;
};

struct SolveResult {
  ModelVector model;
  std::vector<double> objective_trace;  // initial point, then one entry per accepted step
  std::size_t outer_iters_used = 0;
  bool converged = false;
  std::chrono::duration<double> wall_time{};
};

/// sign(z) * max(|z| - t, 0).
inline double soft_threshold(double z, double t) noexcept {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

/// Largest violation of the optimality conditions of objective(ds, ., pen)
/// at w, i.e. the infinity norm of the minimum-norm subgradient.
double kkt_violation(const SparseDataset& ds, const ModelVector& w, const Penalty& pen);

/// Proximal Newton with coordinate descent on the quadratic model.
///
/// Each outer step linearizes the loss at w using its gradient and the
/// per-row curvature s(1-s), then runs at most max_inner cyclic CD sweeps on
///   g.d + 1/2 d^T (X^T D X + 2 lambda2 A^-2) d + sum_j lambda1/alpha_j |w_j + d_j|
/// (the Hessian is applied implicitly through X d). The step is accepted by
/// Armijo backtracking on the true objective (sigma 0.01, factor 0.5, at most
/// 30 halvings), so objective_trace never increases.
///
/// Converged means the violation reached kkt_tol and the last relative
/// decrease fell below tol (or the violation is already negligible).
SolveResult solve_glmnet(const SparseDataset& ds, const SolverConfig& cfg,
                         const std::optional<ModelVector>& warm_start = std::nullopt);

}  // namespace acowa
