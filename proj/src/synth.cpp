#include "acowa/synth.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "acowa/error.hpp"
#include "acowa/partition.hpp"

namespace acowa {

SparseDataset synth_rows(const std::vector<double>& planted, std::size_t n, double density,
                         double noise_sd, std::uint64_t seed) {
  if (!(density > 0.0 && density <= 1.0)) throw InvalidArgument("density must be in (0, 1]");
  if (noise_sd < 0.0) throw InvalidArgument("noise_sd must be nonnegative");
  const std::size_t d = planted.size();
  const bool signal = std::any_of(planted.begin(), planted.end(), [](double v) { return v != 0.0; });

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution present(density);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);

  DatasetBuilder b(d);
  std::vector<Index> idx;
  std::vector<double> val;
  for (std::size_t i = 0; i < n; ++i) {
    idx.clear();
    val.clear();
    double margin = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      if (!present(rng)) continue;
      const double v = gauss(rng);
      idx.push_back(static_cast<Index>(j));
      val.push_back(v);
      margin += v * planted[j];
    }
    double label;
    if (!signal) {
      label = coin(rng) ? 1.0 : -1.0;
    } else {
      margin += noise_sd * gauss(rng);
      label = margin > 0 ? 1.0 : margin < 0 ? -1.0 : (coin(rng) ? 1.0 : -1.0);
    }
    b.add_row(label, idx, val);
  }
  return std::move(b).build();
}

SynthData synth_sparse(const SynthOptions& opt) {
  if (opt.informative_features > opt.d)
    throw InvalidArgument("informative_features exceeds d");
  std::mt19937_64 rng(mix_seed(opt.seed, 0));
  std::vector<std::size_t> features(opt.d);
  std::iota(features.begin(), features.end(), 0);
  std::shuffle(features.begin(), features.end(), rng);

  std::vector<double> planted(opt.d, 0.0);
  std::uniform_real_distribution<double> magnitude(1.0, 2.0);
  std::bernoulli_distribution sign(0.5);
  for (std::size_t k = 0; k < opt.informative_features; ++k)
    planted[features[k]] = (sign(rng) ? 1.0 : -1.0) * magnitude(rng);

  auto data = synth_rows(planted, opt.n, opt.density, opt.noise_sd, mix_seed(opt.seed, 1));
  return {std::move(data), std::move(planted)};
}

}  // namespace acowa
