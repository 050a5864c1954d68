#include "acowa/metrics.hpp"

#include <cmath>

#include "acowa/error.hpp"

namespace acowa {

double accuracy(const SparseDataset& ds, const ModelVector& w) {
  detail::check_width(ds, w);
  if (ds.n_rows() == 0) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    const double pred = w.predict(ds.row(i)) >= 0.0 ? 1.0 : -1.0;
    hits += pred == ds.label(i);
  }
  return static_cast<double>(hits) / static_cast<double>(ds.n_rows());
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo)) throw InvalidArgument("log_grid needs 0 < lo <= hi");
  if (count == 0) throw InvalidArgument("log_grid needs count >= 1");
  if (count == 1) return {hi};
  std::vector<double> g(count);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t k = 0; k < count; ++k)
    g[k] = std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace acowa
