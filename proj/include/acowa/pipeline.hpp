#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acowa/aggregate.hpp"
#include "acowa/error.hpp"
#include "acowa/harness.hpp"
#include "acowa/solver.hpp"
#include "acowa/sparse_dataset.hpp"

namespace acowa {

enum class Method { naive, owa, acowa, acowa_centroid_only, acowa_fw_only };
enum class MergeSetPolicy { paper_min, main_partition };

std::string to_string(Method m);
std::string to_string(MergeSetPolicy m);
/// Throws InvalidArgument on an unknown name.
Method parse_method(const std::string& name);
MergeSetPolicy parse_merge_policy(const std::string& name);

/// Ten log-spaced values in [1e-4, 1e2].
std::vector<double> default_lambda_cv_grid();

struct MethodSpec {
  Method method = Method::acowa;
  std::size_t p = 1;
  double beta = 1.0;
  std::vector<double> lambda_cv_grid = default_lambda_cv_grid();
  std::size_t cv_folds = 5;
  MergeSetPolicy merge_set_policy = MergeSetPolicy::main_partition;
  std::uint64_t seed = 0;

  void validate() const;
};

using Seconds = std::chrono::duration<double>;

/// Wall-clock time per pipeline stage, measured at the barriers.
struct RunTimings {
  Seconds centroids{};
  Seconds all_to_all{};
  Seconds round1{};
  Seconds gather1{};
  Seconds alpha{};
  Seconds round2{};
  Seconds gather2{};
  Seconds merge{};
  Seconds total{};

  /// (label, duration) rows in pipeline order, labelled like the usual
  /// ACOWA runtime breakdown ("Centroids", "All-to-all", ... "Total").
  std::vector<std::pair<std::string, Seconds>> rows() const;
};

struct Diagnostics {
  std::size_t final_nnz = 0;
  std::vector<std::size_t> round1_nnz;  // per partition
  std::vector<std::size_t> round2_nnz;  // empty unless a second round ran
  std::size_t merge_set_rows = 0;
  std::optional<double> lambda_cv;
  bool merge_cross_validated = false;
  ExchangeCounters exchange;
  std::vector<std::string> notes;  // single-class partitions and the like
};

struct PipelineResult {
  ModelVector model;
  RunTimings timings;
  Diagnostics diagnostics;
};

/// Raised when a worker fails; carries whatever timings were collected.
class PipelineAborted : public Error {
 public:
  PipelineAborted(const std::string& what, RunTimings partial)
      : Error(what), partial_(partial) {}
  const RunTimings& partial_timings() const noexcept { return partial_; }

 private:
  RunTimings partial_;
};

/// Runs one distributed training method end to end.
///
///   naive  partition, solve each partition, average.
///   owa    partition, solve, merge on the merge set.
///   acowa  partition, class centroids per worker, all-to-all exchange,
///          round-1 solves on centroid-augmented partitions, gather,
///          feature weights at the main worker, broadcast, round-2
///          feature-weighted solves, gather, merge of the round-2 models.
///   acowa_centroid_only / acowa_fw_only drop round 2 / the augmentation.
///
/// Partition solves use `solver_cfg`; the merge always runs in full mode.
/// The result is bit-identical for any `threads` value.
PipelineResult run_pipeline(const SparseDataset& ds, const MethodSpec& spec,
                            const SolverConfig& solver_cfg,
                            std::size_t threads = WorkerPool::default_threads());

}  // namespace acowa
