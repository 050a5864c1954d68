#pragma once

#include <cstddef>
#include <vector>

#include "acowa/objective.hpp"
#include "acowa/sparse_dataset.hpp"

namespace acowa {

/// Fraction of rows with sign(w.x) == y; a score of exactly 0 predicts +1.
/// An empty dataset has accuracy 0.
double accuracy(const SparseDataset& ds, const ModelVector& w);

/// `count` values log-spaced from `lo` to `hi` inclusive, increasing.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

}  // namespace acowa
