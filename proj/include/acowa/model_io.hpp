#pragma once

#include <cstddef>
#include <iosfwd>

#include "acowa/objective.hpp"

namespace acowa {

// Model text format: one `idx:value` line per nonzero coefficient, 1-based
// indices in increasing order, values printed with 17 significant digits.
// A model with an intercept starts with a `bias:value` line.
void write_model(std::ostream& out, const ModelVector& w);

/// Reads the format above into a length-d model. Throws ParseError.
ModelVector read_model(std::istream& in, std::size_t d);

}  // namespace acowa
