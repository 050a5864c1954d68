#include "acowa/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "acowa/error.hpp"

namespace acowa {
namespace {

constexpr double kCurvatureFloor = 1e-12;
constexpr double kArmijoSigma = 0.01;
constexpr double kBacktrack = 0.5;
constexpr std::size_t kMaxHalvings = 30;
constexpr double kRelaxedInnerStep = 1e-6;

double violation_at(double w, double g, double l1) {
  if (w > 0) return std::abs(g + l1);
  if (w < 0) return std::abs(g - l1);
  return std::max(0.0, std::abs(g) - l1);
}

// Loss + penalty, evaluated from precomputed raw scores.
double objective_from_scores(const SparseDataset& ds, std::span<const double> z,
                             const ModelVector& w, const Penalty& pen) {
  double loss = 0.0;
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    const double wt = ds.weight(i);
    if (wt != 0.0) loss += wt * logistic_loss_at(ds.label(i) * z[i]);
  }
  return loss + pen.value(w);
}

}  // namespace

SolverConfig SolverConfig::relaxed(Penalty pen) {
  SolverConfig c;
  c.penalty = std::move(pen);
  c.max_outer = 20;
  c.max_inner = 50;
  c.tol = 1e-4;
  c.kkt_tol = 1e-3;
  c.mode = SolverMode::relaxed;
  c.shrinking = true;
  return c;
}

SolverConfig SolverConfig::full(Penalty pen) {
  SolverConfig c;
  c.penalty = std::move(pen);
  c.max_outer = 100;
  c.max_inner = 1000;
  c.tol = 1e-8;
  c.kkt_tol = 1e-7;
  c.mode = SolverMode::full;
  c.shrinking = false;
  return c;
}

void SolverConfig::validate() const {
  if (max_outer < 1 || max_inner < 1) throw InvalidArgument("iteration caps must be >= 1");
  if (!(tol > 0.0)) throw InvalidArgument("tol must be > 0");
  if (!(kkt_tol > 0.0)) throw InvalidArgument("kkt_tol must be > 0");
  if (mode == SolverMode::relaxed && (max_outer != 20 || max_inner != 50))
    throw InvalidArgument("relaxed mode fixes max_outer=20 and max_inner=50");
}

double kkt_violation(const SparseDataset& ds, const ModelVector& w, const Penalty& pen) {
  pen.validate(ds.n_cols());
  const auto g = smooth_gradient(ds, w);
  double worst = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double gj = g.coefficients[j] + 2.0 * pen.l2_weight(j) * w.coefficients[j];
    worst = std::max(worst, violation_at(w.coefficients[j], gj, pen.l1_weight(j)));
  }
  if (w.has_intercept) worst = std::max(worst, std::abs(g.intercept));
  return worst;
}

SolveResult solve_glmnet(const SparseDataset& ds, const SolverConfig& cfg,
                         const std::optional<ModelVector>& warm_start) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.validate();
  const std::size_t d = ds.n_cols();
  const std::size_t n = ds.n_rows();
  const Penalty& pen = cfg.penalty;
  pen.validate(d);

  ModelVector w(d);
  if (warm_start) {
    detail::check_width(ds, *warm_start);
    w = *warm_start;
  }
  w.has_intercept = cfg.fit_intercept;
  if (!cfg.fit_intercept) w.intercept = 0.0;

  std::vector<double> l1w(d), l2w(d);
  for (std::size_t j = 0; j < d; ++j) {
    l1w[j] = pen.l1_weight(j);
    l2w[j] = pen.l2_weight(j);
  }

  const CscMatrix csc = CscMatrix::from(ds);
  std::vector<double> z = scores(ds, w);
  double f = objective_from_scores(ds, z, w, pen);
  if (!std::isfinite(f)) throw SolverDiverged("objective is not finite at the starting point");

  SolveResult res;
  res.objective_trace.push_back(f);

  std::vector<std::size_t> order(d);
  std::vector<double> wpd(d), xtd(n), grad(d), hdiag(d);
  std::vector<double> trial_z(n);
  ModelVector trial(d);
  trial.has_intercept = w.has_intercept;
  std::mt19937_64 rng(cfg.shuffle_seed);

  double inner_eps = 1.0;
  double viol_sum_init = -1.0;
  double viol_max_prev = std::numeric_limits<double>::infinity();
  double last_rel_decrease = std::numeric_limits<double>::infinity();

  for (std::size_t outer = 0;; ++outer) {
    // Gradient and curvature of the smooth part (loss + L2) at w.
    const auto rf = detail::row_factors(ds, z);
    grad = detail::transpose_times(ds, rf.grad);
    hdiag = detail::squared_transpose_times(ds, rf.curv);
    double grad_b = 0.0;
    double hess_b = 0.0;
    if (w.has_intercept) {
      grad_b = std::accumulate(rf.grad.begin(), rf.grad.end(), 0.0);
      hess_b = std::max(std::accumulate(rf.curv.begin(), rf.curv.end(), 0.0), kCurvatureFloor);
    }

    double viol_max = w.has_intercept ? std::abs(grad_b) : 0.0;
    double viol_sum = viol_max;
    std::size_t active = 0;
    for (std::size_t j = 0; j < d; ++j) {
      grad[j] += 2.0 * l2w[j] * w.coefficients[j];
      hdiag[j] = std::max(hdiag[j] + 2.0 * l2w[j], kCurvatureFloor);
      const double v = violation_at(w.coefficients[j], grad[j], l1w[j]);
      viol_max = std::max(viol_max, v);
      viol_sum += v;
      const bool parked = cfg.shrinking && w.coefficients[j] == 0.0 && n > 0 &&
                          std::abs(grad[j]) < l1w[j] - viol_max_prev / static_cast<double>(n);
      if (!parked) order[active++] = j;
    }
    if (viol_sum_init < 0) viol_sum_init = viol_sum;

    if (viol_max <= cfg.kkt_tol * 1e-3 ||
        (outer > 0 && last_rel_decrease < cfg.tol && viol_max <= cfg.kkt_tol)) {
      res.converged = true;
      break;
    }
    if (outer >= cfg.max_outer) break;
    res.outer_iters_used = outer + 1;

    // Coordinate descent on the quadratic model.
    std::copy(w.coefficients.begin(), w.coefficients.end(), wpd.begin());
    double bpd = w.intercept;
    std::fill(xtd.begin(), xtd.end(), 0.0);
    std::size_t sweeps = 0;
    while (sweeps < cfg.max_inner) {
      if (cfg.shuffle) std::shuffle(order.begin(), order.begin() + active, rng);
      double qp_viol = 0.0;
      double max_step = 0.0;
      for (std::size_t s = 0; s < active; ++s) {
        const std::size_t j = order[s];
        const double h = hdiag[j];
        double g = grad[j] + 2.0 * l2w[j] * (wpd[j] - w.coefficients[j]);
        for (auto k = csc.col_offsets[j]; k < csc.col_offsets[j + 1]; ++k)
          g += csc.values[k] * rf.curv[csc.row_indices[k]] * xtd[csc.row_indices[k]];
        qp_viol += violation_at(wpd[j], g, l1w[j]);
        const double next = soft_threshold(h * wpd[j] - g, l1w[j]) / h;
        const double step = next - wpd[j];
        if (step == 0.0) continue;
        wpd[j] = next;
        max_step = std::max(max_step, std::abs(step));
        for (auto k = csc.col_offsets[j]; k < csc.col_offsets[j + 1]; ++k)
          xtd[csc.row_indices[k]] += step * csc.values[k];
      }
      if (w.has_intercept) {
        double g = grad_b;
        for (std::size_t i = 0; i < n; ++i) g += rf.curv[i] * xtd[i];
        qp_viol += std::abs(g);
        const double step = -g / hess_b;
        if (step != 0.0) {
          bpd += step;
          max_step = std::max(max_step, std::abs(step));
          for (std::size_t i = 0; i < n; ++i) xtd[i] += step;
        }
      }
      ++sweeps;
      if (max_step == 0.0 || qp_viol <= inner_eps * viol_sum_init) break;
      if (cfg.mode == SolverMode::relaxed && max_step < kRelaxedInnerStep) break;
    }
    if (sweeps == 1) inner_eps *= 0.25;

    // Predicted decrease of the composite model along d = wpd - w.
    double delta = w.has_intercept ? grad_b * (bpd - w.intercept) : 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double dj = wpd[j] - w.coefficients[j];
      if (dj == 0.0 && wpd[j] == 0.0) continue;
      delta += grad[j] * dj + l1w[j] * (std::abs(wpd[j]) - std::abs(w.coefficients[j]));
    }
    if (!(delta < 0.0)) break;  // no descent direction left

    bool accepted = false;
    double t = 1.0;
    double f_new = f;
    for (std::size_t h = 0; h <= kMaxHalvings; ++h, t *= kBacktrack) {
      for (std::size_t j = 0; j < d; ++j)
        trial.coefficients[j] = w.coefficients[j] + t * (wpd[j] - w.coefficients[j]);
      trial.intercept = w.intercept + t * (bpd - w.intercept);
      for (std::size_t i = 0; i < n; ++i) trial_z[i] = trial.predict(ds.row(i));
      f_new = objective_from_scores(ds, trial_z, trial, pen);
      if (!std::isfinite(f_new)) throw SolverDiverged("objective became non-finite in line search");
      if (f_new - f <= kArmijoSigma * t * delta) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;

    last_rel_decrease = (f - f_new) / std::max(std::abs(f), std::numeric_limits<double>::min());
    std::swap(w.coefficients, trial.coefficients);
    w.intercept = trial.intercept;
    std::swap(z, trial_z);
    f = f_new;
    res.objective_trace.push_back(f);
    viol_max_prev = viol_max;
  }

  res.model = std::move(w);
  res.wall_time = std::chrono::steady_clock::now() - t0;
  return res;
}

}  // namespace acowa
