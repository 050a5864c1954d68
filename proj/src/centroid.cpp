#include "acowa/centroid.hpp"

#include <algorithm>
#include <string>

#include "acowa/error.hpp"
#include "acowa/events.hpp"

namespace acowa {

CentroidSummary compute_centroids(const SparseDataset& part, std::size_t partition_id) {
  const std::size_t d = part.n_cols();
  CentroidSummary c;
  c.partition_id = partition_id;
  c.mu_plus.assign(d, 0.0);
  c.mu_minus.assign(d, 0.0);
  for (std::size_t i = 0; i < part.n_rows(); ++i) {
    const bool pos = part.label(i) > 0;
    auto& acc = pos ? c.mu_plus : c.mu_minus;
    ++(pos ? c.mass_plus : c.mass_minus);
    const auto r = part.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) acc[r.indices[k]] += r.values[k];
  }
  c.valid_plus = c.mass_plus > 0;
  c.valid_minus = c.mass_minus > 0;
  if (c.valid_plus)
    for (auto& v : c.mu_plus) v /= static_cast<double>(c.mass_plus);
  if (c.valid_minus)
    for (auto& v : c.mu_minus) v /= static_cast<double>(c.mass_minus);
  return c;
}

SparseDataset augment_partition(const SparseDataset& part, std::span<const CentroidSummary> all,
                                std::size_t self_id) {
  const bool has_self = std::any_of(all.begin(), all.end(),
                                    [&](const CentroidSummary& c) { return c.partition_id == self_id; });
  if (!has_self) throw InvalidArgument("own partition missing from centroid summaries");

  std::vector<const CentroidSummary*> ordered;
  for (const auto& c : all) {
    if (c.mu_plus.size() != part.n_cols() || c.mu_minus.size() != part.n_cols())
      throw DimensionError("centroid width does not match partition width");
    if (c.partition_id != self_id) ordered.push_back(&c);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](auto* a, auto* b) { return a->partition_id < b->partition_id; });

  DatasetBuilder b(part.n_cols());
  for (std::size_t i = 0; i < part.n_rows(); ++i) b.add_row(part.label(i), part.row(i), part.weight(i));
  for (const auto* c : ordered) {
    if (c->valid_plus)
      b.add_dense_row(+1.0, c->mu_plus, static_cast<double>(c->mass_plus));
    else
      events::warn("partition " + std::to_string(c->partition_id) + " has no positive rows");
    if (c->valid_minus)
      b.add_dense_row(-1.0, c->mu_minus, static_cast<double>(c->mass_minus));
    else
      events::warn("partition " + std::to_string(c->partition_id) + " has no negative rows");
  }
  return std::move(b).build();
}

CentroidGap centroid_loss_gap(const SparseDataset& part, const ModelVector& w) {
  detail::check_width(part, w);
  const std::size_t n = part.n_rows();
  if (n == 0) return {};
  const double y = part.label(0);
  for (std::size_t i = 1; i < n; ++i)
    if (part.label(i) != y) throw InvalidArgument("centroid_loss_gap needs a single-class set");

  std::vector<double> act(n);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    act[i] = -y * w.predict(part.row(i));
    mean += act[i];
  }
  mean /= static_cast<double>(n);

  // The centroid activation is the mean activation, since -y w.mu = mean(Z).
  const double centroid_loss = logistic_loss_at(-mean);
  double gap = 0.0;
  double ss = 0.0;
  for (double a : act) {
    gap += logistic_loss_at(-a) - centroid_loss;
    ss += (a - mean) * (a - mean);
  }
  const double var = ss / static_cast<double>(n);
  return {gap, static_cast<double>(n) / 8.0 * var};
}

}  // namespace acowa
