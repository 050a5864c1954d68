#include <doctest.h>

#include <random>

#include "acowa/centroid.hpp"
#include "acowa/error.hpp"
#include "acowa/events.hpp"
#include "acowa/partition.hpp"
#include "support.hpp"

using namespace acowa;
using doctest::Approx;

TEST_CASE("centroids: two-point mean, empty class, singleton") {
  DatasetBuilder b(2);
  b.add_dense_row(1.0, std::vector<double>{1, 0});
  b.add_dense_row(1.0, std::vector<double>{0, 1});
  b.add_dense_row(-1.0, std::vector<double>{3, -2});
  const auto c = compute_centroids(std::move(b).build(), 4);
  CHECK(c.partition_id == 4);
  CHECK(c.mu_plus == std::vector<double>{0.5, 0.5});
  CHECK(c.mass_plus == 2);
  CHECK(c.mu_minus == std::vector<double>{3, -2});
  CHECK(c.mass_minus == 1);

  DatasetBuilder neg(2);
  neg.add_dense_row(-1.0, std::vector<double>{1, 1});
  const auto only_neg = compute_centroids(std::move(neg).build(), 0);
  CHECK_FALSE(only_neg.valid_plus);
  CHECK(only_neg.mass_plus == 0);
  CHECK(only_neg.valid_minus);
}

TEST_CASE("augment: p=1 leaves the partition unchanged") {
  std::mt19937_64 rng(1);
  const auto part = testing::random_dataset(rng, 12, 5);
  const std::vector<CentroidSummary> all{compute_centroids(part, 0)};
  const auto out = augment_partition(part, all, 0);
  CHECK(std::ranges::equal(out.values(), part.values()));
  CHECK(std::ranges::equal(out.labels(), part.labels()));
  CHECK(out.n_rows() == part.n_rows());
}

TEST_CASE("augment: p=3 appends four weighted rows in id order") {
  std::mt19937_64 rng(2);
  const auto ds = testing::random_dataset(rng, 60, 6, 0.7);
  const auto plan = partition(ds, 3, 5);
  std::vector<SparseDataset> parts;
  std::vector<CentroidSummary> all;
  for (std::size_t i = 0; i < 3; ++i) {
    parts.push_back(extract_partition(ds, plan, i));
    all.push_back(compute_centroids(parts.back(), i));
  }
  const auto aug = augment_partition(parts[1], all, 1);
  REQUIRE(aug.n_rows() == parts[1].n_rows() + 4);
  const std::size_t base = parts[1].n_rows();
  CHECK(aug.label(base) == 1.0);
  CHECK(aug.label(base + 1) == -1.0);
  CHECK(aug.weight(base) == static_cast<double>(all[0].mass_plus));
  CHECK(aug.weight(base + 3) == static_cast<double>(all[2].mass_minus));
  double appended = 0.0;
  for (std::size_t k = base; k < aug.n_rows(); ++k) appended += aug.weight(k);
  CHECK(appended == static_cast<double>(all[0].mass_plus + all[0].mass_minus + all[2].mass_plus +
                                        all[2].mass_minus));
  CHECK(aug.total_weight() == Approx(60.0));
  // The appended row is the centroid itself.
  std::vector<double> row(6, 0.0);
  const auto r = aug.row(base + 2);
  for (std::size_t k = 0; k < r.size(); ++k) row[r.indices[k]] = r.values[k];
  for (std::size_t j = 0; j < 6; ++j) CHECK(row[j] == Approx(all[2].mu_plus[j]));
}

TEST_CASE("augment: invalid centroids are skipped with a warning") {
  DatasetBuilder a(2), b(2);
  a.add_dense_row(1.0, std::vector<double>{1, 0});
  a.add_dense_row(-1.0, std::vector<double>{0, 1});
  b.add_dense_row(1.0, std::vector<double>{2, 2});
  const auto pa = std::move(a).build();
  const auto pb = std::move(b).build();
  const std::vector<CentroidSummary> all{compute_centroids(pa, 0), compute_centroids(pb, 1)};
  events::clear();
  const auto aug = augment_partition(pa, all, 0);
  CHECK(aug.n_rows() == 3);
  CHECK(events::count() == 1);
}

TEST_CASE("augment: errors") {
  std::mt19937_64 rng(3);
  const auto part = testing::random_dataset(rng, 8, 4);
  const std::vector<CentroidSummary> mine{compute_centroids(part, 0)};
  CHECK_THROWS_AS(augment_partition(part, mine, 2), InvalidArgument);
  const auto wide = testing::random_dataset(rng, 8, 5);
  const std::vector<CentroidSummary> mixed{compute_centroids(part, 0), compute_centroids(wide, 1)};
  CHECK_THROWS_AS(augment_partition(part, mixed, 0), DimensionError);
}

TEST_CASE("loss gap: degenerate cases") {
  DatasetBuilder same(2);
  for (int i = 0; i < 4; ++i) same.add_dense_row(1.0, std::vector<double>{0.5, -1});
  const auto g = centroid_loss_gap(std::move(same).build(), ModelVector(std::vector<double>{2, 3}));
  CHECK(g.gap == Approx(0.0));
  CHECK(g.bound == 0.0);

  std::mt19937_64 rng(4);
  DatasetBuilder b(3);
  for (int i = 0; i < 6; ++i) b.add_dense_row(-1.0, testing::random_vector(rng, 3));
  const auto zero_w = centroid_loss_gap(std::move(b).build(), ModelVector(3));
  CHECK(zero_w.gap == 0.0);

  CHECK_THROWS_AS(centroid_loss_gap(testing::random_dataset(rng, 20, 3), ModelVector(3)),
                  InvalidArgument);
}

TEST_CASE("loss gap: sandwich on random 50-point sets") {
  std::mt19937_64 rng(5);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    DatasetBuilder b(4);
    const double y = trial % 2 ? 1.0 : -1.0;
    for (int i = 0; i < 50; ++i) b.add_dense_row(y, testing::random_vector(rng, 4));
    const auto part = std::move(b).build();
    const auto w = testing::random_vector(rng, 4, 2.0);
    const auto g = centroid_loss_gap(part, ModelVector(w));
    const double slack = 1e-10 * (1.0 + g.bound);
    if (g.gap < -slack || g.gap > g.bound + slack) ++violations;
  }
  CHECK(violations == 0);
}
