#include "acowa/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

#include "acowa/error.hpp"

namespace acowa {

WorkerPool::WorkerPool(std::size_t threads) : threads_(std::max<std::size_t>(threads, 1)) {}

std::size_t WorkerPool::default_threads() {
  if (const char* env = std::getenv("ACOWA_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void WorkerPool::run(std::size_t count, const std::function<void(std::size_t)>& task) const {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::min(threads_, count);
  if (n_threads <= 1) {
    drain();
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(drain);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

Exchange::Exchange(std::size_t p) : p_(p) {
  if (p == 0) throw InvalidArgument("exchange needs at least one worker");
}

void Exchange::check_sources(const std::vector<Message>& outgoing) const {
  if (outgoing.size() != p_)
    throw InvalidArgument("collective expects " + std::to_string(p_) + " messages, got " +
                          std::to_string(outgoing.size()));
  for (std::size_t i = 0; i < p_; ++i)
    if (outgoing[i].partition_id != i) throw InvalidArgument("message source does not match slot");
}

SharedMessage Exchange::transmit(const Message& m, std::size_t copies) {
  const auto wire = encode(m);
  counters_.bytes += wire.size() * copies;
  return std::make_shared<const Message>(decode(wire));
}

std::vector<std::vector<SharedMessage>> Exchange::all_to_all(const std::vector<Message>& outgoing) {
  check_sources(outgoing);
  ++counters_.all_to_all_calls;
  std::vector<SharedMessage> delivered;
  delivered.reserve(p_);
  for (const auto& m : outgoing) delivered.push_back(transmit(m, p_ - 1));
  counters_.all_to_all_messages += p_ * (p_ - 1);
  return std::vector<std::vector<SharedMessage>>(p_, delivered);
}

std::vector<SharedMessage> Exchange::gather(const std::vector<Message>& outgoing) {
  check_sources(outgoing);
  ++counters_.gather_calls;
  std::vector<SharedMessage> at_main;
  at_main.reserve(p_);
  for (const auto& m : outgoing) at_main.push_back(transmit(m, 1));
  counters_.gather_messages += p_;
  return at_main;
}

std::vector<SharedMessage> Exchange::broadcast(const Message& from_main) {
  ++counters_.broadcast_calls;
  counters_.broadcast_messages += p_;
  return std::vector<SharedMessage>(p_, transmit(from_main, p_));
}

}  // namespace acowa
