#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "acowa/message.hpp"

namespace acowa {

/// Runs p logical workers on at most `threads` OS threads. Workers pull
/// partition ids from a shared counter, so a pool smaller than p simply
/// processes several partitions per thread.
class WorkerPool {
 public:
  explicit WorkerPool(std::size_t threads);

  std::size_t threads() const noexcept { return threads_; }

  /// Calls task(i) for every i in [0, count) and waits for all of them.
  /// If any task throws, the exception from the lowest failing id is
  /// rethrown once every task has stopped.
  void run(std::size_t count, const std::function<void(std::size_t)>& task) const;

  /// Pool size from ACOWA_THREADS, else hardware concurrency (at least 1).
  static std::size_t default_threads();

 private:
  std::size_t threads_;
};

struct ExchangeCounters {
  std::size_t all_to_all_calls = 0;
  std::size_t all_to_all_messages = 0;  // point-to-point deliveries, self excluded
  std::size_t gather_calls = 0;
  std::size_t gather_messages = 0;
  std::size_t broadcast_calls = 0;
  std::size_t broadcast_messages = 0;
  std::size_t bytes = 0;  // encoded bytes put on the wire
};

using SharedMessage = std::shared_ptr<const Message>;

/// In-process transport for the three collectives the pipelines use. Every
/// message is encoded to the wire format and decoded on delivery; delivery
/// order is always by source partition id, and each call is a barrier.
class Exchange {
 public:
  explicit Exchange(std::size_t p);

  std::size_t size() const noexcept { return p_; }

  /// outgoing[i] is worker i's message. Each worker receives all p messages,
  /// its own included, ordered by partition id.
  std::vector<std::vector<SharedMessage>> all_to_all(const std::vector<Message>& outgoing);

  /// Collects one message per worker at the main worker (id 0).
  std::vector<SharedMessage> gather(const std::vector<Message>& outgoing);

  /// Sends the main worker's message to all p workers.
  std::vector<SharedMessage> broadcast(const Message& from_main);

  const ExchangeCounters& counters() const noexcept { return counters_; }

 private:
  SharedMessage transmit(const Message& m, std::size_t copies);
  void check_sources(const std::vector<Message>& outgoing) const;

  std::size_t p_;
  ExchangeCounters counters_;
};

}  // namespace acowa
