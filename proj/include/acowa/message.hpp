#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "acowa/centroid.hpp"
#include "acowa/objective.hpp"

namespace acowa {

enum class MessageKind : std::uint8_t { centroid = 1, model = 2, feature_weights = 3 };

/// Immutable unit of inter-worker traffic: a source partition, a kind tag
/// and a list of real vectors.
struct Message {
  std::uint32_t partition_id = 0;
  MessageKind kind = MessageKind::model;
  std::vector<std::vector<double>> vectors;

  bool operator==(const Message&) const = default;
};

// Wire format, one length-prefixed record per message (host byte order):
//
//   u32 body_length            bytes that follow this field
//   u32 partition_id
//   u8  kind                   MessageKind
//   u32 vector_count
//   vector_count times:
//     u8  format               0 = dense, 1 = sparse
//     u64 dim
//     dense:  dim x f64
//     sparse: u64 nnz, nnz x u32 index, nnz x f64 value
//
// A vector is sent sparse when fewer than half its entries are nonzero.
std::vector<std::byte> encode(const Message& m);

/// Decodes exactly one record. Throws Error on truncated or malformed input.
Message decode(std::span<const std::byte> record);

/// Splits a byte stream holding back-to-back records.
std::vector<std::span<const std::byte>> split_records(std::span<const std::byte> stream);

Message to_message(const CentroidSummary& c);
CentroidSummary centroid_from_message(const Message& m);

Message to_message(const ModelVector& w, std::uint32_t partition_id);
ModelVector model_from_message(const Message& m);

}  // namespace acowa
