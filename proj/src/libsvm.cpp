#include "acowa/libsvm.hpp"

#include <zlib.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "acowa/error.hpp"

namespace acowa {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view next_token(std::string_view& rest) {
  std::size_t b = 0;
  while (b < rest.size() && is_space(rest[b])) ++b;
  std::size_t e = b;
  while (e < rest.size() && !is_space(rest[e])) ++e;
  auto tok = rest.substr(b, e - b);
  rest.remove_prefix(e);
  return tok;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

struct ParsedRows {
  std::vector<std::size_t> offsets{0};
  std::vector<Index> indices;
  std::vector<double> values;
  std::vector<double> labels;
  std::size_t max_index = 0;  // 1-based
};

void parse_line(std::string_view line, std::size_t line_no, ParsedRows& rows,
                std::optional<std::size_t> expected_dims) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  auto rest = line;
  auto label_tok = next_token(rest);
  if (label_tok.empty()) return;

  double label = 0.0;
  if (!parse_number(label_tok, label))
    throw ParseError(line_no, "label '" + std::string(label_tok) + "' is not numeric");

  std::size_t prev = 0;
  for (auto tok = next_token(rest); !tok.empty(); tok = next_token(rest)) {
    const auto colon = tok.find(':');
    if (colon == std::string_view::npos)
      throw ParseError(line_no, "expected idx:value, got '" + std::string(tok) + "'");
    long long idx = 0;
    double val = 0.0;
    if (!parse_number(tok.substr(0, colon), idx))
      throw ParseError(line_no, "index in '" + std::string(tok) + "' is not an integer");
    if (!parse_number(tok.substr(colon + 1), val))
      throw ParseError(line_no, "value in '" + std::string(tok) + "' is not numeric");
    if (idx <= 0) throw ParseError(line_no, "index must be positive, got " + std::to_string(idx));
    const auto uidx = static_cast<std::size_t>(idx);
    if (uidx == prev) throw ParseError(line_no, "duplicate index " + std::to_string(idx));
    if (uidx < prev) throw ParseError(line_no, "indices not increasing at " + std::to_string(idx));
    if (expected_dims && uidx > *expected_dims)
      throw DimensionError("line " + std::to_string(line_no) + ": index " + std::to_string(idx) +
                           " exceeds expected dimension " + std::to_string(*expected_dims));
    prev = uidx;
    rows.indices.push_back(static_cast<Index>(uidx - 1));
    rows.values.push_back(val);
  }
  rows.max_index = std::max(rows.max_index, prev);
  rows.offsets.push_back(rows.values.size());
  rows.labels.push_back(label > 0 ? 1.0 : -1.0);
}

SparseDataset finish(ParsedRows rows, std::optional<std::size_t> expected_dims) {
  const std::size_t d = std::max(rows.max_index, expected_dims.value_or(0));
  return SparseDataset(d, std::move(rows.offsets), std::move(rows.indices), std::move(rows.values),
                       std::move(rows.labels));
}

struct GzCloser {
  void operator()(gzFile_s* f) const { gzclose(f); }
};

}  // namespace

SparseDataset parse_libsvm(std::istream& in, std::optional<std::size_t> expected_dims) {
  ParsedRows rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) parse_line(line, ++line_no, rows, expected_dims);
  return finish(std::move(rows), expected_dims);
}

SparseDataset load_libsvm(const std::string& path, std::optional<std::size_t> expected_dims) {
  const bool gz = path.size() >= 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
  if (!gz) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return parse_libsvm(in, expected_dims);
  }
  std::unique_ptr<gzFile_s, GzCloser> f(gzopen(path.c_str(), "rb"));
  if (!f) throw Error("cannot open " + path);
  std::string text;
  std::vector<char> buf(1 << 16);
  int got = 0;
  while ((got = gzread(f.get(), buf.data(), static_cast<unsigned>(buf.size()))) > 0)
    text.append(buf.data(), static_cast<std::size_t>(got));
  if (got < 0) throw Error("gzip read error in " + path);
  std::istringstream in(std::move(text));
  return parse_libsvm(in, expected_dims);
}

void write_libsvm(std::ostream& out, const SparseDataset& ds) {
  char buf[64];
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    out << (ds.label(i) > 0 ? "+1" : "-1");
    const auto r = ds.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) {
      std::snprintf(buf, sizeof buf, " %u:%.17g", r.indices[k] + 1, r.values[k]);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace acowa
