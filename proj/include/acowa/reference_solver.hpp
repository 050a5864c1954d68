#pragma once

#include <cstddef>
#include <vector>

#include "acowa/objective.hpp"
#include "acowa/sparse_dataset.hpp"

namespace acowa {

struct ReferenceResult {
  ModelVector model;
  std::vector<double> objective_trace;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Accelerated proximal gradient (FISTA) with backtracking on the Lipschitz
/// estimate and function-value restart, which keeps the accepted iterates
/// monotone. Stops when the relative objective change drops below `tol` or
/// after `max_iter` iterations. Independent of solve_glmnet: the only shared
/// code is `objective`.
ReferenceResult solve_reference_traced(const SparseDataset& ds, const Penalty& pen, double tol,
                                       std::size_t max_iter, bool fit_intercept = false);

/// solve_reference_traced with a 1e6 iteration cap; throws NoConvergence
/// when the cap is hit. An empty dataset yields the zero model.
ModelVector solve_reference(const SparseDataset& ds, const Penalty& pen, double tol = 1e-12,
                            bool fit_intercept = false);

}  // namespace acowa
