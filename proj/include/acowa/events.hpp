#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace acowa {

// Process-wide sink for non-fatal conditions (clamped sample sizes,
// partitions missing a class, ...). Thread-safe. Events are echoed to
// stderr only when ACOWA_VERBOSE is set in the environment.
namespace events {

void warn(std::string message);
std::size_t count();
std::vector<std::string> snapshot();
void clear();

}  // namespace events
}  // namespace acowa
