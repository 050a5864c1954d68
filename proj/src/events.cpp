#include "acowa/events.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace acowa::events {
namespace {

struct Sink {
  std::mutex mutex;
  std::vector<std::string> log;
  bool echo = std::getenv("ACOWA_VERBOSE") != nullptr;
};

Sink& sink() {
  static Sink s;
  return s;
}

}  // namespace

void warn(std::string message) {
  auto& s = sink();
  std::lock_guard lock(s.mutex);
  if (s.echo) std::cerr << "warning: " << message << '\n';
  s.log.push_back(std::move(message));
}

std::size_t count() {
  auto& s = sink();
  std::lock_guard lock(s.mutex);
  return s.log.size();
}

std::vector<std::string> snapshot() {
  auto& s = sink();
  std::lock_guard lock(s.mutex);
  return s.log;
}

void clear() {
  auto& s = sink();
  std::lock_guard lock(s.mutex);
  s.log.clear();
}

}  // namespace acowa::events
