#include <doctest.h>

#include <random>

#include "acowa/aggregate.hpp"
#include "acowa/error.hpp"
#include "acowa/message.hpp"
#include "acowa/reference_solver.hpp"
#include "acowa/solver.hpp"
#include "support.hpp"

using namespace acowa;
using doctest::Approx;

namespace {

ModelMatrix columns(std::vector<std::vector<double>> cols) {
  ModelMatrix W;
  for (auto& c : cols) W.columns.emplace_back(std::move(c));
  return W;
}

}  // namespace

TEST_CASE("naive average") {
  CHECK(naive_average(columns({{1, 2}, {1, 2}, {1, 2}})).coefficients == std::vector<double>{1, 2});
  CHECK(naive_average(columns({{1, 0}, {-1, 0}})).coefficients == std::vector<double>{0, 0});
  CHECK(naive_average(columns({{3, -4}})).coefficients == std::vector<double>{3, -4});
  CHECK_THROWS_AS(naive_average(ModelMatrix{}), InvalidArgument);
  CHECK_THROWS_AS(naive_average(columns({{1, 2}, {1}})), DimensionError);
}

TEST_CASE("projection") {
  std::mt19937_64 rng(1);
  const auto ds = testing::random_dataset(rng, 20, 10);
  const auto zero = project_models(ds, columns({std::vector<double>(10, 0.0)}));
  for (double v : zero.data) CHECK(v == 0.0);

  DatasetBuilder basis(3);
  basis.add_dense_row(1.0, std::vector<double>{0, 1, 0});
  const auto e = project_models(std::move(basis).build(), columns({{4, 5, 6}, {7, 8, 9}}));
  CHECK(e(0, 0) == 5);
  CHECK(e(0, 1) == 8);

  const auto W = columns({testing::random_vector(rng, 10), testing::random_vector(rng, 10),
                          testing::random_vector(rng, 10)});
  const auto P = project_models(ds, W);
  const auto x = testing::dense(ds);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 10; ++k) s += x[i][k] * W.columns[j].coefficients[k];
      CHECK(std::abs(P(i, j) - s) <= 1e-12 * (1.0 + std::abs(s)));
    }
  CHECK_THROWS_AS(project_models(ds, columns({{1, 2}})), DimensionError);
}

TEST_CASE("merge: single column at its own optimum gets weight one") {
  std::mt19937_64 rng(2);
  const auto ds = testing::random_dataset(rng, 60, 5, 0.8);
  // Unregularized optimum via the reference solver; the data is noisy so it is finite.
  const auto w = solve_reference(ds, Penalty{0.0, 1e-9, {}}, 1e-14);
  ModelMatrix W;
  W.columns.push_back(w);
  const auto r = owa_merge(ds, W, {0.0}, 5, 3);
  CHECK(r.lambda_cv == 0.0);
  CHECK(r.combination[0] == Approx(1.0).epsilon(1e-5));
  for (std::size_t j = 0; j < 5; ++j)
    CHECK(r.model.coefficients[j] == Approx(w.coefficients[j]).epsilon(1e-5));
}

TEST_CASE("merge: duplicated column, output does not depend on which copy") {
  std::mt19937_64 rng(3);
  const auto ds = testing::random_dataset(rng, 80, 6);
  const auto a = testing::random_vector(rng, 6);
  const auto b = testing::random_vector(rng, 6);
  const auto r1 = owa_merge(ds, columns({a, a, b}), {0.01, 0.1, 1.0}, 4, 7);
  const auto r2 = owa_merge(ds, columns({a, b, a}), {0.01, 0.1, 1.0}, 4, 7);
  CHECK(r1.combination[0] == Approx(r1.combination[1]).epsilon(1e-6));
  for (std::size_t j = 0; j < 6; ++j)
    CHECK(std::abs(r1.model.coefficients[j] - r2.model.coefficients[j]) <= 1e-8);
}

TEST_CASE("merge: a huge penalty drives the combination to zero") {
  std::mt19937_64 rng(4);
  const auto ds = testing::random_dataset(rng, 40, 4);
  const auto r = owa_merge(ds, columns({testing::random_vector(rng, 4), testing::random_vector(rng, 4)}),
                           {1e12}, 5, 1);
  for (double v : r.combination) CHECK(std::abs(v) < 1e-9);
  for (double v : r.model.coefficients) CHECK(std::abs(v) < 1e-8);
}

TEST_CASE("merge: combination solves the penalized projected problem") {
  std::mt19937_64 rng(5);
  const auto ds = testing::random_dataset(rng, 120, 8, 0.6);
  // Nearly collinear columns, as produced by partition models that agree.
  const auto base = testing::random_vector(rng, 8);
  ModelMatrix W;
  for (int k = 0; k < 5; ++k) {
    auto c = base;
    for (auto& v : c) v += 1e-3 * std::normal_distribution<double>()(rng);
    W.columns.emplace_back(c);
  }
  const auto r = owa_merge(ds, W, {0.05}, 3, 2);
  // Oracle: reference solver on the raw score matrix.
  const auto P = project_models(ds, W);
  DatasetBuilder b(5);
  for (std::size_t i = 0; i < P.rows; ++i)
    b.add_dense_row(ds.label(i), std::span(P.data).subspan(i * 5, 5));
  const auto projected = std::move(b).build();
  const Penalty pen{0.0, 0.05, {}};
  const auto ref = solve_reference(projected, pen, 1e-14);
  CHECK(testing::relative_gap(objective(projected, ModelVector(r.combination), pen),
                              objective(projected, ref, pen)) <= 1e-8);
}

TEST_CASE("merge: tie in validation loss keeps the smallest lambda") {
  std::mt19937_64 rng(6);
  const auto ds = testing::random_dataset(rng, 30, 3);
  // A zero model gives identical validation loss for every lambda.
  const auto r = owa_merge(ds, columns({{0, 0, 0}}), {1.0, 0.1, 10.0}, 3, 9);
  CHECK(r.cross_validated);
  CHECK(r.lambda_cv == 0.1);
}

TEST_CASE("merge: single-class merge set falls back to the grid median") {
  DatasetBuilder b(2);
  for (int i = 0; i < 10; ++i) b.add_dense_row(1.0, std::vector<double>{1.0, 0.5 * i});
  const auto r = owa_merge(std::move(b).build(), columns({{1, 0}, {0, 1}}), {5, 1, 3, 0.5}, 3, 1);
  CHECK_FALSE(r.cross_validated);
  CHECK(r.lambda_cv == 1.0);
}

TEST_CASE("merge: argument errors") {
  std::mt19937_64 rng(7);
  const auto ds = testing::random_dataset(rng, 10, 2);
  CHECK_THROWS_AS(owa_merge(SparseDataset(2), columns({{1, 0}}), {1.0}, 2, 0), InvalidArgument);
  CHECK_THROWS_AS(owa_merge(ds, columns({{1, 0}}), {}, 2, 0), InvalidArgument);
  CHECK_THROWS_AS(owa_merge(ds, columns({{1, 0}}), {1.0}, 1, 0), InvalidArgument);
}

TEST_CASE("feature weights") {
  const auto W = columns({{1, 0, 2}, {3, 0, 0}, {1, 0, 0}, {0, 0, 5}});
  const auto fw = compute_feature_weights(W, 2.0);
  CHECK(fw.alpha[0] == Approx(2.5));
  CHECK(fw.alpha[1] == 1.0);
  CHECK(fw.alpha[2] == Approx(2.0));
  const auto all = compute_feature_weights(columns({{1, 2}, {3, 4}}), 0.7);
  CHECK(all.alpha == std::vector<double>{1.7, 1.7});
  CHECK_THROWS_AS(compute_feature_weights(W, -1.0), InvalidArgument);
  CHECK(feature_weights_from_message(to_message(fw)).alpha == fw.alpha);
}

TEST_CASE("messages: round-trip through the wire format") {
  std::mt19937_64 rng(8);
  CentroidSummary c;
  c.partition_id = 3;
  c.mu_plus = testing::random_vector(rng, 40);
  c.mu_minus = std::vector<double>(40, 0.0);
  c.mu_minus[7] = -2.5;
  c.mass_plus = 12;
  c.mass_minus = 1;
  c.valid_plus = c.valid_minus = true;
  const auto msg = to_message(c);
  const auto bytes = encode(msg);
  CHECK(decode(bytes) == msg);
  CHECK(centroid_from_message(decode(bytes)) == c);

  ModelVector w(testing::random_vector(rng, 9));
  w.coefficients[2] = 0.0;
  w.has_intercept = true;
  w.intercept = -0.25;
  CHECK(model_from_message(decode(encode(to_message(w, 5)))) == w);

  // Sparse encoding is smaller than dense for a mostly-zero vector.
  Message sparse{0, MessageKind::model, {std::vector<double>(1000, 0.0)}};
  sparse.vectors[0][10] = 1.0;
  CHECK(encode(sparse).size() < 1000 * sizeof(double));
  CHECK(decode(encode(sparse)) == sparse);

  std::vector<std::byte> stream;
  for (const auto& m : {msg, sparse}) {
    const auto b = encode(m);
    stream.insert(stream.end(), b.begin(), b.end());
  }
  const auto recs = split_records(stream);
  REQUIRE(recs.size() == 2);
  CHECK(decode(recs[1]) == sparse);
}

TEST_CASE("messages: malformed input") {
  const auto bytes = encode(Message{1, MessageKind::model, {{1.0, 2.0, 3.0}}});
  CHECK_THROWS_AS(decode(std::span(bytes).first(bytes.size() - 1)), Error);
  auto bad_kind = bytes;
  bad_kind[8] = std::byte{9};
  CHECK_THROWS_AS(decode(bad_kind), Error);
  CHECK_THROWS_AS(model_from_message(Message{0, MessageKind::centroid, {}}), Error);
}
