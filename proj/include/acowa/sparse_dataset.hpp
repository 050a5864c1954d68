#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace acowa {

using Index = std::uint32_t;

/// One CSR row: parallel index/value spans.
struct RowView {
  std::span<const Index> indices;
  std::span<const double> values;

  std::size_t size() const noexcept { return indices.size(); }

  double dot(std::span<const double> w) const noexcept {
    double s = 0.0;
    for (std::size_t k = 0; k < indices.size(); ++k) s += values[k] * w[indices[k]];
    return s;
  }
};

/// Immutable CSR feature matrix with {-1,+1} labels and nonnegative row
/// weights. Every constructor validates the CSR invariants, so a live
/// SparseDataset is always well formed and safe to share across threads.
class SparseDataset {
 public:
  SparseDataset() : row_offsets_{0} {}
  explicit SparseDataset(std::size_t n_cols) : n_cols_(n_cols), row_offsets_{0} {}

  /// Takes ownership of raw CSR arrays. Throws InvalidArgument on any
  /// invariant violation. An empty `row_weights` means unit weights.
  SparseDataset(std::size_t n_cols, std::vector<std::size_t> row_offsets,
                std::vector<Index> col_indices, std::vector<double> values,
                std::vector<double> labels, std::vector<double> row_weights = {});

  std::size_t n_rows() const noexcept { return labels_.size(); }
  std::size_t n_cols() const noexcept { return n_cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  RowView row(std::size_t i) const noexcept {
    const auto b = row_offsets_[i];
    const auto e = row_offsets_[i + 1];
    return {std::span(col_indices_).subspan(b, e - b), std::span(values_).subspan(b, e - b)};
  }

  double label(std::size_t i) const noexcept { return labels_[i]; }
  double weight(std::size_t i) const noexcept { return row_weights_[i]; }

  std::span<const std::size_t> row_offsets() const noexcept { return row_offsets_; }
  std::span<const Index> col_indices() const noexcept { return col_indices_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> labels() const noexcept { return labels_; }
  std::span<const double> row_weights() const noexcept { return row_weights_; }

  double total_weight() const noexcept;

  /// Re-checks every CSR invariant; throws InvalidArgument on failure.
  void validate() const;

 private:
  std::size_t n_cols_ = 0;
  std::vector<std::size_t> row_offsets_;
  std::vector<Index> col_indices_;
  std::vector<double> values_;
  std::vector<double> labels_;
  std::vector<double> row_weights_;
};

/// Row-at-a-time construction of a SparseDataset.
class DatasetBuilder {
 public:
  explicit DatasetBuilder(std::size_t n_cols) : n_cols_(n_cols) {}

  /// Appends a row. Indices must be strictly increasing and < n_cols.
  /// Entries with value exactly zero are kept unless `drop_zeros`.
  DatasetBuilder& add_row(double label, std::span<const Index> indices,
                          std::span<const double> values, double weight = 1.0,
                          bool drop_zeros = false);

  /// Appends a dense row, storing only the nonzero entries.
  DatasetBuilder& add_dense_row(double label, std::span<const double> dense, double weight = 1.0);

  DatasetBuilder& add_row(double label, RowView r, double weight = 1.0) {
    return add_row(label, r.indices, r.values, weight);
  }

  std::size_t n_rows() const noexcept { return labels_.size(); }

  SparseDataset build() &&;

 private:
  std::size_t n_cols_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Index> indices_;
  std::vector<double> values_;
  std::vector<double> labels_;
  std::vector<double> weights_;
};

/// Copies the listed rows (in the given order) into a new dataset with the
/// same column count. Labels and weights travel with their rows.
SparseDataset take_rows(const SparseDataset& ds, std::span<const std::size_t> rows);

/// Multiplies column j by scale[j]. scale.size() must equal n_cols.
SparseDataset scale_cols(const SparseDataset& ds, std::span<const double> scale);

/// Concatenates rows of `a` then `b`; column counts must match.
SparseDataset concat_rows(const SparseDataset& a, const SparseDataset& b);

/// Column-major copy of the feature matrix, built by the coordinate solvers.
struct CscMatrix {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<std::size_t> col_offsets;
  std::vector<Index> row_indices;
  std::vector<double> values;

  static CscMatrix from(const SparseDataset& ds);
};

}  // namespace acowa
