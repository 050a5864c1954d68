#include <doctest.h>

#include <cmath>
#include <random>

#include "acowa/error.hpp"
#include "acowa/objective.hpp"
#include "support.hpp"

using namespace acowa;
using doctest::Approx;

namespace {

SparseDataset one_row(std::vector<double> x, double y, double weight = 1.0) {
  DatasetBuilder b(x.size());
  b.add_dense_row(y, x, weight);
  return std::move(b).build();
}

}  // namespace

TEST_CASE("loss at the origin is n log 2") {
  std::mt19937_64 rng(1);
  const auto ds = testing::random_dataset(rng, 17, 5);
  CHECK(logistic_loss(ds, ModelVector(5)) == Approx(17 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("loss saturates without overflow") {
  const auto ds = one_row({1.0}, 1.0);
  const double v = logistic_loss(ds, ModelVector(std::vector<double>{50.0}));
  CHECK(std::isfinite(v));
  CHECK(v < 1e-20);
  CHECK(v > 0.0);
}

TEST_CASE("loss stays finite and accurate for |w.x| up to 1e4") {
  for (double z : {1e4, -1e4, 800.0, -800.0, 37.0, -37.0}) {
    const auto ds = one_row({1.0}, 1.0);
    const double v = logistic_loss(ds, ModelVector(std::vector<double>{z}));
    REQUIRE(std::isfinite(v));
    if (z < 0)
      CHECK(v == Approx(-z).epsilon(1e-14));
    else
      CHECK(v == Approx(std::exp(-z)).epsilon(1e-12));
    const auto g = smooth_gradient(ds, ModelVector(std::vector<double>{z}));
    CHECK(std::isfinite(g.coefficients[0]));
    CHECK(std::isfinite(quadratic_diag(ds, ModelVector(std::vector<double>{z}))[0]));
  }
}

TEST_CASE("row weights act linearly") {
  DatasetBuilder twice(2);
  twice.add_dense_row(1.0, std::vector<double>{0.3, -1.2});
  twice.add_dense_row(1.0, std::vector<double>{0.3, -1.2});
  const auto a = std::move(twice).build();
  const auto b = one_row({0.3, -1.2}, 1.0, 2.0);
  const ModelVector w(std::vector<double>{0.7, 0.4});
  CHECK(logistic_loss(a, w) == Approx(logistic_loss(b, w)).epsilon(1e-15));
  CHECK(smooth_gradient(a, w).coefficients[1] == Approx(smooth_gradient(b, w).coefficients[1]));
  CHECK(quadratic_diag(a, w)[0] == Approx(quadratic_diag(b, w)[0]));
}

TEST_CASE("objective: penalty cases") {
  std::mt19937_64 rng(2);
  const auto ds = testing::random_dataset(rng, 12, 4);
  const ModelVector zero(4);
  CHECK(objective(ds, zero, Penalty{3.0, 2.0, {}}) == logistic_loss(ds, zero));
  const ModelVector w(std::vector<double>{1, -2, 0, 0.5});
  CHECK(objective(ds, w, Penalty{0, 0, {}}) == logistic_loss(ds, w));
  const double plain = objective(ds, w, Penalty{1.5, 0, {}}) - logistic_loss(ds, w);
  const double halved = objective(ds, w, Penalty{1.5, 0, {2, 2, 2, 2}}) - logistic_loss(ds, w);
  CHECK(halved == Approx(plain / 2));
  CHECK(objective(ds, w, Penalty{0.3, 0.7, {1, 2, 3, 4}}) ==
        Approx(testing::direct_objective(ds, w.coefficients, 0.3, 0.7, {1, 2, 3, 4})).epsilon(1e-13));
}

TEST_CASE("objective: invalid penalties") {
  std::mt19937_64 rng(3);
  const auto ds = testing::random_dataset(rng, 5, 3);
  const ModelVector w(3);
  CHECK_THROWS_AS(objective(ds, w, Penalty{-1, 0, {}}), InvalidArgument);
  CHECK_THROWS_AS(objective(ds, w, Penalty{1, 0, {1, 0, 1}}), InvalidArgument);
  CHECK_THROWS_AS(objective(ds, w, Penalty{1, 0, {1, 1}}), DimensionError);
  CHECK_THROWS_AS(logistic_loss(ds, ModelVector(4)), DimensionError);
}

TEST_CASE("gradient: symmetric data and a single row") {
  DatasetBuilder b(2);
  b.add_dense_row(1.0, std::vector<double>{1.0, 2.0});
  b.add_dense_row(-1.0, std::vector<double>{-1.0, -2.0});
  b.add_dense_row(1.0, std::vector<double>{-1.0, -2.0});
  b.add_dense_row(-1.0, std::vector<double>{1.0, 2.0});
  const auto g = smooth_gradient(std::move(b).build(), ModelVector(2));
  CHECK(g.coefficients[0] == 0.0);
  CHECK(g.coefficients[1] == 0.0);

  const auto single = smooth_gradient(one_row({1.0, 0.0}, 1.0), ModelVector(2));
  CHECK(single.coefficients[0] == -0.5);
  CHECK(single.coefficients[1] == 0.0);
}

TEST_CASE("gradient matches central finite differences on random 20x10 instances") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto ds = testing::random_dataset(rng, 20, 10, 0.6, true);
    const auto w = testing::random_vector(rng, 10, 0.7);
    const auto g = smooth_gradient(ds, ModelVector(w)).coefficients;
    for (std::size_t j = 0; j < 10; ++j) {
      auto up = w, down = w;
      up[j] += 1e-5;
      down[j] -= 1e-5;
      const double fd = (testing::direct_loss(ds, up) - testing::direct_loss(ds, down)) / 2e-5;
      CHECK(std::abs(g[j] - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("gradient includes the intercept slot") {
  std::mt19937_64 rng(5);
  const auto ds = testing::random_dataset(rng, 20, 4);
  ModelVector w(testing::random_vector(rng, 4));
  w.has_intercept = true;
  w.intercept = 0.3;
  const auto g = smooth_gradient(ds, w);
  const double fd =
      (testing::direct_loss(ds, w.coefficients, 0.3 + 1e-5) - testing::direct_loss(ds, w.coefficients, 0.3 - 1e-5)) /
      2e-5;
  CHECK(g.intercept == Approx(fd).epsilon(1e-6));
}

TEST_CASE("curvature diagonal") {
  std::mt19937_64 rng(6);
  const auto ds = testing::random_dataset(rng, 25, 6, 0.5, true);
  const auto at_zero = quadratic_diag(ds, ModelVector(6));
  const auto x = testing::dense(ds);
  for (std::size_t j = 0; j < 6; ++j) {
    double expect = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) expect += 0.25 * ds.weight(i) * x[i][j] * x[i][j];
    CHECK(at_zero[j] == Approx(expect).epsilon(1e-14));
  }

  DatasetBuilder b(3);
  b.add_dense_row(1.0, std::vector<double>{1.0, 0.0, 2.0});
  b.add_dense_row(-1.0, std::vector<double>{0.5, 0.0, 1.0});
  CHECK(quadratic_diag(std::move(b).build(), ModelVector(std::vector<double>{1, 1, 1}))[1] == 0.0);

  const auto w = testing::random_vector(rng, 6, 0.5);
  const auto h = quadratic_diag(ds, ModelVector(w));
  for (std::size_t j = 0; j < 6; ++j) {
    auto up = w, down = w;
    up[j] += 1e-3;
    down[j] -= 1e-3;
    const double fd = (testing::direct_loss(ds, up) - 2 * testing::direct_loss(ds, w) +
                       testing::direct_loss(ds, down)) / 1e-6;
    CHECK(std::abs(h[j] - fd) <= 1e-4 * std::max(1e-3, std::abs(fd)));
  }
}

TEST_CASE("lambda_max is the largest gradient magnitude at zero") {
  std::mt19937_64 rng(7);
  const auto ds = testing::random_dataset(rng, 30, 8);
  const auto g = smooth_gradient(ds, ModelVector(8)).coefficients;
  double m = 0.0;
  for (double v : g) m = std::max(m, std::abs(v));
  CHECK(lambda_max(ds) == Approx(m));
}
