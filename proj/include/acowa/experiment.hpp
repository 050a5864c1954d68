#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "acowa/pipeline.hpp"
#include "acowa/solver.hpp"
#include "acowa/sparse_dataset.hpp"

namespace acowa {

/// Default lambda1 grid: `count` log-spaced points over
/// [lambda_max * 1e-4, lambda_max].
std::vector<double> default_lambda1_grid(const SparseDataset& train, std::size_t count = 20);

struct SweepConfig {
  std::vector<Method> methods{Method::naive, Method::owa, Method::acowa};
  std::size_t p = 4;
  std::size_t seeds = 10;
  std::uint64_t seed_base = 0;
  std::vector<double> lambda1_grid;  // empty: default_lambda1_grid(train)
  double lambda2 = 0.0;
  bool elastic_net = false;          // lambda2 := lambda1 at every grid point
  std::vector<double> betas{1.0};
  MergeSetPolicy merge_policy = MergeSetPolicy::main_partition;
  SolverMode solver_mode = SolverMode::relaxed;
  std::size_t threads = 1;

  void validate() const;
};

/// One line of the sweep CSV. Aggregate rows have seed == -1 and carry the
/// mean in nnz/accuracy/time_total and the spread in the *_std columns.
struct SweepRow {
  std::string method;
  std::size_t p = 0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double beta = 0.0;
  long long seed = 0;
  double nnz = 0.0;
  double accuracy = 0.0;
  double time_total = 0.0;
  std::string status = "ok";
  double nnz_std = 0.0;
  double accuracy_std = 0.0;

  bool operator==(const SweepRow&) const = default;
};

// Sweep CSV columns, in order:
//   method,p,lambda1,lambda2,beta,seed,nnz,accuracy,time_total,status,nnz_std,accuracy_std
std::string sweep_csv_header();
std::string to_csv(const SweepRow& row);
/// Inverse of to_csv. Throws ParseError on a malformed line.
SweepRow parse_sweep_row(const std::string& line);

struct SweepOutcome {
  std::vector<SweepRow> rows;  // detail rows followed by aggregate rows
  bool all_ok = true;
};

/// For every (method, beta, lambda1, seed): run the pipeline on `train`,
/// score held-out accuracy on `test`. A failed run becomes a row whose
/// status holds the error and the sweep carries on. When `csv` is given
/// the header and every row are streamed to it.
SweepOutcome run_sweep(const SparseDataset& train, const SparseDataset& test,
                       const SweepConfig& cfg, std::ostream* csv = nullptr);

struct TuneResult {
  double lambda1 = 0.0;
  std::size_t nnz = 0;
  bool hit_target = false;  // nnz within +-10% of the target
  std::size_t steps = 0;
  PipelineResult run;
};

/// Finds lambda1 whose final model has about `target_nnz` nonzeros by
/// bisection in log(lambda1), starting from lambda_max(ds). Gives up after
/// `max_steps` pipeline runs and returns the closest run seen.
TuneResult tune_lambda_for_nnz(const SparseDataset& ds, const MethodSpec& spec,
                               const SolverConfig& base_cfg, std::size_t target_nnz,
                               std::size_t threads, std::size_t max_steps = 30);

/// `stage,seconds` CSV of a timing breakdown.
void write_timings_csv(std::ostream& out, const RunTimings& t);

}  // namespace acowa
