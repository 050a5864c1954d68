#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "acowa/sparse_dataset.hpp"

namespace acowa {

struct SynthOptions {
  std::size_t n = 1000;
  std::size_t d = 100;
  double density = 0.1;              // Bernoulli rate of each entry's support
  std::size_t informative_features = 10;
  double noise_sd = 0.5;             // Gaussian noise added to the planted margin
  std::uint64_t seed = 0;
};

/// Planted sparse logistic data. `planted` holds w* with exactly
/// `informative_features` nonzeros (magnitudes in [1, 2], random signs).
struct SynthData {
  SparseDataset data;
  std::vector<double> planted;
};

/// Rows have Bernoulli(density) support with standard normal values; labels
/// are sign(x.w* + noise), with exact ties and the w* = 0 case resolved by a
/// fair coin. Deterministic in `seed`.
SynthData synth_sparse(const SynthOptions& opt);

/// Draws `n` fresh rows from the same planted model (e.g. a test split).
SparseDataset synth_rows(const std::vector<double>& planted, std::size_t n, double density,
                         double noise_sd, std::uint64_t seed);

}  // namespace acowa
