#include "acowa/message.hpp"

#include <cstring>
#include <string>

#include "acowa/error.hpp"

namespace acowa {
namespace {

enum : std::uint8_t { kDense = 0, kSparse = 1 };

template <class T>
void put(std::vector<std::byte>& out, T v) {
  const auto old = out.size();
  out.resize(old + sizeof(T));
  std::memcpy(out.data() + old, &v, sizeof(T));
}

class Reader {
 public:
  explicit Reader(std::span<const std::byte> in) : in_(in) {}

  template <class T>
  T get() {
    if (pos_ + sizeof(T) > in_.size()) throw Error("message record truncated");
    T v;
    std::memcpy(&v, in_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }

  bool done() const { return pos_ == in_.size(); }

 private:
  std::span<const std::byte> in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::byte> encode(const Message& m) {
  std::vector<std::byte> out;
  put<std::uint32_t>(out, 0);  // patched below
  put<std::uint32_t>(out, m.partition_id);
  put<std::uint8_t>(out, static_cast<std::uint8_t>(m.kind));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(m.vectors.size()));
  for (const auto& v : m.vectors) {
    std::uint64_t nz = 0;
    for (double x : v) nz += x != 0.0;
    const bool sparse = 2 * nz < v.size();
    put<std::uint8_t>(out, sparse ? kSparse : kDense);
    put<std::uint64_t>(out, v.size());
    if (!sparse) {
      for (double x : v) put<double>(out, x);
      continue;
    }
    put<std::uint64_t>(out, nz);
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0.0) put<std::uint32_t>(out, static_cast<std::uint32_t>(j));
    for (double x : v)
      if (x != 0.0) put<double>(out, x);
  }
  const auto body = static_cast<std::uint32_t>(out.size() - sizeof(std::uint32_t));
  std::memcpy(out.data(), &body, sizeof body);
  return out;
}

Message decode(std::span<const std::byte> record) {
  Reader r(record);
  const auto body = r.get<std::uint32_t>();
  if (body + sizeof(std::uint32_t) != record.size()) throw Error("message length prefix mismatch");
  Message m;
  m.partition_id = r.get<std::uint32_t>();
  const auto kind = r.get<std::uint8_t>();
  if (kind < 1 || kind > 3) throw Error("unknown message kind " + std::to_string(kind));
  m.kind = static_cast<MessageKind>(kind);
  const auto count = r.get<std::uint32_t>();
  m.vectors.resize(count);
  for (auto& v : m.vectors) {
    const auto format = r.get<std::uint8_t>();
    const auto dim = r.get<std::uint64_t>();
    if (format == kDense) {
      if (dim > record.size()) throw Error("message record truncated");
      v.resize(dim);
      for (auto& x : v) x = r.get<double>();
    } else if (format == kSparse) {
      const auto nz = r.get<std::uint64_t>();
      if (nz > dim || nz > record.size()) throw Error("sparse block larger than its dimension");
      v.assign(dim, 0.0);
      std::vector<std::uint32_t> idx(nz);
      for (auto& j : idx) {
        j = r.get<std::uint32_t>();
        if (j >= dim) throw Error("sparse index out of range");
      }
      for (auto j : idx) v[j] = r.get<double>();
    } else {
      throw Error("unknown vector format " + std::to_string(format));
    }
  }
  if (!r.done()) throw Error("trailing bytes in message record");
  return m;
}

std::vector<std::span<const std::byte>> split_records(std::span<const std::byte> stream) {
  std::vector<std::span<const std::byte>> out;
  std::size_t pos = 0;
  while (pos < stream.size()) {
    if (pos + sizeof(std::uint32_t) > stream.size()) throw Error("message stream truncated");
    std::uint32_t body;
    std::memcpy(&body, stream.data() + pos, sizeof body);
    const std::size_t len = sizeof body + body;
    if (pos + len > stream.size()) throw Error("message stream truncated");
    out.push_back(stream.subspan(pos, len));
    pos += len;
  }
  return out;
}

Message to_message(const CentroidSummary& c) {
  Message m;
  m.partition_id = static_cast<std::uint32_t>(c.partition_id);
  m.kind = MessageKind::centroid;
  m.vectors = {{static_cast<double>(c.mass_plus), static_cast<double>(c.mass_minus),
                c.valid_plus ? 1.0 : 0.0, c.valid_minus ? 1.0 : 0.0},
               c.mu_plus,
               c.mu_minus};
  return m;
}

CentroidSummary centroid_from_message(const Message& m) {
  if (m.kind != MessageKind::centroid || m.vectors.size() != 3 || m.vectors[0].size() != 4)
    throw Error("not a centroid message");
  CentroidSummary c;
  c.partition_id = m.partition_id;
  c.mass_plus = static_cast<std::size_t>(m.vectors[0][0]);
  c.mass_minus = static_cast<std::size_t>(m.vectors[0][1]);
  c.valid_plus = m.vectors[0][2] != 0.0;
  c.valid_minus = m.vectors[0][3] != 0.0;
  c.mu_plus = m.vectors[1];
  c.mu_minus = m.vectors[2];
  return c;
}

Message to_message(const ModelVector& w, std::uint32_t partition_id) {
  Message m;
  m.partition_id = partition_id;
  m.kind = MessageKind::model;
  m.vectors = {{w.intercept, w.has_intercept ? 1.0 : 0.0}, w.coefficients};
  return m;
}

ModelVector model_from_message(const Message& m) {
  if (m.kind != MessageKind::model || m.vectors.size() != 2 || m.vectors[0].size() != 2)
    throw Error("not a model message");
  ModelVector w(m.vectors[1]);
  w.intercept = m.vectors[0][0];
  w.has_intercept = m.vectors[0][1] != 0.0;
  return w;
}

}  // namespace acowa
