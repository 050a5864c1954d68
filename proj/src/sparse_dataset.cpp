#include "acowa/sparse_dataset.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "acowa/error.hpp"

namespace acowa {

SparseDataset::SparseDataset(std::size_t n_cols, std::vector<std::size_t> row_offsets,
                             std::vector<Index> col_indices, std::vector<double> values,
                             std::vector<double> labels, std::vector<double> row_weights)
    : n_cols_(n_cols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)),
      labels_(std::move(labels)),
      row_weights_(std::move(row_weights)) {
  if (row_weights_.empty()) row_weights_.assign(labels_.size(), 1.0);
  validate();
}

double SparseDataset::total_weight() const noexcept {
  return std::accumulate(row_weights_.begin(), row_weights_.end(), 0.0);
}

void SparseDataset::validate() const {
  const std::size_t n = labels_.size();
  if (row_offsets_.size() != n + 1)
    throw InvalidArgument("row_offsets length " + std::to_string(row_offsets_.size()) +
                          " != n_rows + 1 = " + std::to_string(n + 1));
  if (row_offsets_.front() != 0) throw InvalidArgument("row_offsets must start at 0");
  if (row_offsets_.back() != values_.size() || col_indices_.size() != values_.size())
    throw InvalidArgument("row_offsets end does not match nnz");
  if (row_weights_.size() != n) throw InvalidArgument("row_weights length != n_rows");
  for (std::size_t i = 0; i < n; ++i) {
    if (row_offsets_[i] > row_offsets_[i + 1])
      throw InvalidArgument("row_offsets decreasing at row " + std::to_string(i));
    if (labels_[i] != 1.0 && labels_[i] != -1.0)
      throw InvalidArgument("label of row " + std::to_string(i) + " is not +1/-1");
    if (!(row_weights_[i] >= 0.0) || !std::isfinite(row_weights_[i]))
      throw InvalidArgument("row weight of row " + std::to_string(i) + " is negative or not finite");
    for (auto k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      if (col_indices_[k] >= n_cols_)
        throw InvalidArgument("column index out of range in row " + std::to_string(i));
      if (k > row_offsets_[i] && col_indices_[k] <= col_indices_[k - 1])
        throw InvalidArgument("column indices not strictly increasing in row " + std::to_string(i));
      if (!std::isfinite(values_[k]))
        throw InvalidArgument("non-finite value in row " + std::to_string(i));
    }
  }
}

DatasetBuilder& DatasetBuilder::add_row(double label, std::span<const Index> indices,
                                        std::span<const double> values, double weight,
                                        bool drop_zeros) {
  if (indices.size() != values.size()) throw InvalidArgument("index/value length mismatch");
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= n_cols_) throw DimensionError("column index exceeds dataset width");
    if (k > 0 && indices[k] <= indices[k - 1])
      throw InvalidArgument("column indices must be strictly increasing");
    if (drop_zeros && values[k] == 0.0) continue;
    indices_.push_back(indices[k]);
    values_.push_back(values[k]);
  }
  offsets_.push_back(values_.size());
  labels_.push_back(label > 0 ? 1.0 : -1.0);
  weights_.push_back(weight);
  return *this;
}

DatasetBuilder& DatasetBuilder::add_dense_row(double label, std::span<const double> dense,
                                              double weight) {
  if (dense.size() != n_cols_) throw DimensionError("dense row length != dataset width");
  for (std::size_t j = 0; j < dense.size(); ++j) {
    if (dense[j] != 0.0) {
      indices_.push_back(static_cast<Index>(j));
      values_.push_back(dense[j]);
    }
  }
  offsets_.push_back(values_.size());
  labels_.push_back(label > 0 ? 1.0 : -1.0);
  weights_.push_back(weight);
  return *this;
}

SparseDataset DatasetBuilder::build() && {
  return SparseDataset(n_cols_, std::move(offsets_), std::move(indices_), std::move(values_),
                       std::move(labels_), std::move(weights_));
}

SparseDataset take_rows(const SparseDataset& ds, std::span<const std::size_t> rows) {
  DatasetBuilder b(ds.n_cols());
  for (auto i : rows) {
    if (i >= ds.n_rows()) throw InvalidArgument("row index out of range");
    b.add_row(ds.label(i), ds.row(i), ds.weight(i));
  }
  return std::move(b).build();
}

SparseDataset scale_cols(const SparseDataset& ds, std::span<const double> scale) {
  if (scale.size() != ds.n_cols()) throw DimensionError("scale length != n_cols");
  std::vector<double> values(ds.values().begin(), ds.values().end());
  const auto idx = ds.col_indices();
  for (std::size_t k = 0; k < values.size(); ++k) values[k] *= scale[idx[k]];
  return SparseDataset(ds.n_cols(), {ds.row_offsets().begin(), ds.row_offsets().end()},
                       {idx.begin(), idx.end()}, std::move(values),
                       {ds.labels().begin(), ds.labels().end()},
                       {ds.row_weights().begin(), ds.row_weights().end()});
}

SparseDataset concat_rows(const SparseDataset& a, const SparseDataset& b) {
  if (a.n_cols() != b.n_cols()) throw DimensionError("concat_rows: column counts differ");
  DatasetBuilder out(a.n_cols());
  for (std::size_t i = 0; i < a.n_rows(); ++i) out.add_row(a.label(i), a.row(i), a.weight(i));
  for (std::size_t i = 0; i < b.n_rows(); ++i) out.add_row(b.label(i), b.row(i), b.weight(i));
  return std::move(out).build();
}

CscMatrix CscMatrix::from(const SparseDataset& ds) {
  CscMatrix m;
  m.n_rows = ds.n_rows();
  m.n_cols = ds.n_cols();
  m.col_offsets.assign(m.n_cols + 1, 0);
  for (auto j : ds.col_indices()) ++m.col_offsets[j + 1];
  std::partial_sum(m.col_offsets.begin(), m.col_offsets.end(), m.col_offsets.begin());
  m.row_indices.resize(ds.nnz());
  m.values.resize(ds.nnz());
  std::vector<std::size_t> cursor(m.col_offsets.begin(), m.col_offsets.end() - 1);
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    const auto r = ds.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) {
      const auto pos = cursor[r.indices[k]]++;
      m.row_indices[pos] = static_cast<Index>(i);
      m.values[pos] = r.values[k];
    }
  }
  return m;
}

}  // namespace acowa
