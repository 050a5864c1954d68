#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include "acowa/sparse_dataset.hpp"

namespace acowa {

/// Parses LIBSVM text: one `label idx:val idx:val ...` row per line.
///
/// Indices are 1-based on disk and stored 0-based. Labels are mapped by
/// sign (> 0 is +1, everything else including 0 is -1). Blank lines and
/// `#` comments are ignored. Within a row, indices must be strictly
/// increasing; duplicates are rejected rather than merged.
///
/// The dataset width is the largest index seen, or `expected_dims` when that
/// is larger. An index beyond `expected_dims` raises DimensionError; any
/// other malformed token raises ParseError with the offending line number.
SparseDataset parse_libsvm(std::istream& in, std::optional<std::size_t> expected_dims = {});

/// Reads a LIBSVM file; names ending in `.gz` are decompressed on the fly.
SparseDataset load_libsvm(const std::string& path, std::optional<std::size_t> expected_dims = {});

/// Writes LIBSVM text with round-trip precision. Row weights are not part of
/// the format and are dropped.
void write_libsvm(std::ostream& out, const SparseDataset& ds);

}  // namespace acowa
