#include "acowa/reference_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "acowa/error.hpp"

namespace acowa {
namespace {

// Gradient of the smooth part (logistic loss + L2 term), written directly
// from the loss definition so it does not share code with the Newton solver.
ModelVector smooth_part_gradient(const SparseDataset& ds, const ModelVector& x, const Penalty& pen) {
  ModelVector g(x.size());
  g.has_intercept = x.has_intercept;
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    const auto r = ds.row(i);
    double m = x.has_intercept ? x.intercept : 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) m += r.values[k] * x.coefficients[r.indices[k]];
    const double y = ds.label(i);
    // d/dm log(1 + exp(-y m)) = -y / (1 + exp(y m))
    const double ym = y * m;
    const double coef = ym > 0 ? -y * std::exp(-ym) / (1.0 + std::exp(-ym)) : -y / (1.0 + std::exp(ym));
    const double c = ds.weight(i) * coef;
    for (std::size_t k = 0; k < r.size(); ++k) g.coefficients[r.indices[k]] += c * r.values[k];
    if (x.has_intercept) g.intercept += c;
  }
  for (std::size_t j = 0; j < x.size(); ++j)
    g.coefficients[j] += 2.0 * pen.l2_weight(j) * x.coefficients[j];
  return g;
}

double smooth_value(const SparseDataset& ds, const ModelVector& x, const Penalty& smooth_pen) {
  return objective(ds, x, smooth_pen);
}

// Prox of step * sum_j l1_j |.|; the intercept is unpenalized.
ModelVector prox_step(const ModelVector& y, const ModelVector& g, double step, const Penalty& pen) {
  ModelVector out(y.size());
  out.has_intercept = y.has_intercept;
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double v = y.coefficients[j] - step * g.coefficients[j];
    const double t = step * pen.l1_weight(j);
    out.coefficients[j] = v > t ? v - t : (v < -t ? v + t : 0.0);
  }
  if (y.has_intercept) out.intercept = y.intercept - step * g.intercept;
  return out;
}

}  // namespace

ReferenceResult solve_reference_traced(const SparseDataset& ds, const Penalty& pen, double tol,
                                       std::size_t max_iter, bool fit_intercept) {
  if (!(tol > 0.0)) throw InvalidArgument("tol must be > 0");
  pen.validate(ds.n_cols());
  const std::size_t d = ds.n_cols();

  Penalty smooth_pen = pen;
  smooth_pen.lambda1 = 0.0;

  ModelVector x(d);
  x.has_intercept = fit_intercept;
  ReferenceResult res;
  double fx = objective(ds, x, pen);
  res.objective_trace.push_back(fx);
  if (ds.n_rows() == 0) {
    res.model = x;
    res.converged = true;
    return res;
  }

  ModelVector y = x;
  double momentum = 1.0;
  double lipschitz = 1.0;

  for (std::size_t it = 0; it < max_iter; ++it) {
    const ModelVector gy = smooth_part_gradient(ds, y, pen);
    const double sy = smooth_value(ds, y, smooth_pen);

    ModelVector cand;
    for (;;) {
      cand = prox_step(y, gy, 1.0 / lipschitz, pen);
      double lin = 0.0;
      double sq = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double diff = cand.coefficients[j] - y.coefficients[j];
        lin += gy.coefficients[j] * diff;
        sq += diff * diff;
      }
      if (fit_intercept) {
        const double diff = cand.intercept - y.intercept;
        lin += gy.intercept * diff;
        sq += diff * diff;
      }
      const double sc = smooth_value(ds, cand, smooth_pen);
      if (sc <= sy + lin + 0.5 * lipschitz * sq + 1e-15 * std::abs(sy)) break;
      lipschitz *= 2.0;
      if (!std::isfinite(lipschitz)) throw SolverDiverged("reference solver step size collapsed");
    }

    const double fc = objective(ds, cand, pen);
    ++res.iterations;
    if (fc > fx) {
      // Momentum overshot: restart from the last accepted iterate.
      if (momentum == 1.0) {
        // A plain prox-gradient step from x failed to descend: stationary.
        res.converged = true;
        break;
      }
      y = x;
      momentum = 1.0;
      continue;
    }

    const double rel = (fx - fc) / std::max(std::abs(fx), std::numeric_limits<double>::min());
    const double next_momentum = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    const double beta = (momentum - 1.0) / next_momentum;
    y = cand;
    for (std::size_t j = 0; j < d; ++j)
      y.coefficients[j] += beta * (cand.coefficients[j] - x.coefficients[j]);
    if (fit_intercept) y.intercept += beta * (cand.intercept - x.intercept);
    momentum = next_momentum;
    x = std::move(cand);
    fx = fc;
    res.objective_trace.push_back(fx);
    lipschitz *= 0.9;  // let the step grow back after conservative backtracking
    if (rel < tol) {
      res.converged = true;
      break;
    }
  }
  res.model = std::move(x);
  return res;
}

ModelVector solve_reference(const SparseDataset& ds, const Penalty& pen, double tol,
                            bool fit_intercept) {
  constexpr std::size_t kIterationCap = 1'000'000;
  auto res = solve_reference_traced(ds, pen, tol, kIterationCap, fit_intercept);
  if (!res.converged) throw NoConvergence("reference solver hit the 1e6 iteration cap");
  return std::move(res.model);
}

}  // namespace acowa
