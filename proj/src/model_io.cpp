#include "acowa/model_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>

#include "acowa/error.hpp"

namespace acowa {

void write_model(std::ostream& out, const ModelVector& w) {
  char buf[64];
  if (w.has_intercept) {
    std::snprintf(buf, sizeof buf, "bias:%.17g\n", w.intercept);
    out << buf;
  }
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w.coefficients[j] == 0.0) continue;
    std::snprintf(buf, sizeof buf, "%zu:%.17g\n", j + 1, w.coefficients[j]);
    out << buf;
  }
}

ModelVector read_model(std::istream& in, std::size_t d) {
  ModelVector w(d);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(line_no, "expected idx:value");
    const std::string key = line.substr(0, colon);
    char* end = nullptr;
    const double value = std::strtod(line.c_str() + colon + 1, &end);
    if (end == line.c_str() + colon + 1) throw ParseError(line_no, "value is not numeric");
    if (key == "bias") {
      w.has_intercept = true;
      w.intercept = value;
      continue;
    }
    const long long idx = std::strtoll(key.c_str(), &end, 10);
    if (*end != '\0' || idx <= 0 || static_cast<std::size_t>(idx) > d)
      throw ParseError(line_no, "bad coefficient index '" + key + "'");
    w.coefficients[static_cast<std::size_t>(idx) - 1] = value;
  }
  return w;
}

}  // namespace acowa
