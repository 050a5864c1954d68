#include "acowa/pipeline.hpp"

#include <cmath>
#include <string>

#include "acowa/centroid.hpp"
#include "acowa/error.hpp"
#include "acowa/events.hpp"
#include "acowa/partition.hpp"

namespace acowa {

std::string to_string(Method m) {
  switch (m) {
    case Method::naive: return "naive";
    case Method::owa: return "owa";
    case Method::acowa: return "acowa";
    case Method::acowa_centroid_only: return "acowa_centroid_only";
    case Method::acowa_fw_only: return "acowa_fw_only";
  }
  return "?";
}

std::string to_string(MergeSetPolicy m) {
  return m == MergeSetPolicy::paper_min ? "paper_min" : "main_partition";
}

Method parse_method(const std::string& name) {
  for (auto m : {Method::naive, Method::owa, Method::acowa, Method::acowa_centroid_only,
                 Method::acowa_fw_only})
    if (to_string(m) == name) return m;
  throw InvalidArgument("unknown method '" + name + "'");
}

MergeSetPolicy parse_merge_policy(const std::string& name) {
  if (name == "paper_min") return MergeSetPolicy::paper_min;
  if (name == "main_partition") return MergeSetPolicy::main_partition;
  throw InvalidArgument("unknown merge-set policy '" + name + "'");
}

std::vector<double> default_lambda_cv_grid() {
  std::vector<double> g(10);
  for (std::size_t k = 0; k < g.size(); ++k)
    g[k] = std::pow(10.0, -4.0 + 6.0 * static_cast<double>(k) / 9.0);
  return g;
}

void MethodSpec::validate() const {
  if (p < 1) throw InvalidArgument("p must be >= 1");
  if (!(beta >= 0.0)) throw InvalidArgument("beta must be >= 0");
  if (lambda_cv_grid.empty()) throw InvalidArgument("lambda_cv grid is empty");
  if (cv_folds < 2) throw InvalidArgument("cv_folds must be >= 2");
}

std::vector<std::pair<std::string, Seconds>> RunTimings::rows() const {
  return {{"Centroids", centroids},   {"All-to-all", all_to_all}, {"Round 1", round1},
          {"Model gather", gather1},  {"Compute α", alpha},       {"Round 2", round2},
          {"Model gather", gather2},  {"Round 3", merge},         {"Total", total}};
}

namespace {

using Clock = std::chrono::steady_clock;

// Stream ids for seeds derived from MethodSpec::seed.
enum : std::uint64_t { kPartitionStream = 1, kMergeSampleStream = 2, kCvStream = 3 };

bool single_class(const SparseDataset& ds) {
  if (ds.n_rows() == 0) return true;
  for (auto y : ds.labels())
    if (y != ds.label(0)) return false;
  return true;
}

class Stopwatch {
 public:
  explicit Stopwatch(Seconds& slot) : slot_(slot), start_(Clock::now()) {}
  ~Stopwatch() { slot_ += Clock::now() - start_; }

 private:
  Seconds& slot_;
  Clock::time_point start_;
};

}  // namespace

PipelineResult run_pipeline(const SparseDataset& ds, const MethodSpec& spec,
                            const SolverConfig& solver_cfg, std::size_t threads) {
  spec.validate();
  solver_cfg.validate();
  solver_cfg.penalty.validate(ds.n_cols());
  if (!solver_cfg.penalty.feature_scale.empty())
    throw InvalidArgument("feature scales are computed by the pipeline, not supplied");

  const auto t_start = Clock::now();
  const std::size_t p = spec.p;
  const WorkerPool pool(threads);
  Exchange exchange(p);
  PipelineResult out;
  RunTimings& tm = out.timings;
  Diagnostics& diag = out.diagnostics;

  const bool augment = spec.method == Method::acowa || spec.method == Method::acowa_centroid_only;
  const bool second_round = spec.method == Method::acowa || spec.method == Method::acowa_fw_only;

  const auto plan = partition(ds, p, mix_seed(spec.seed, kPartitionStream));
  try {
    std::vector<SparseDataset> parts(p);
    pool.run(p, [&](std::size_t i) { parts[i] = extract_partition(ds, plan, i); });
    for (std::size_t i = 0; i < p; ++i)
      if (single_class(parts[i])) {
        diag.notes.push_back("partition " + std::to_string(i) + " has a single class");
        events::warn(diag.notes.back());
      }

    // Centroid augmentation: compute, exchange all-to-all, append.
    std::vector<SparseDataset> train = parts;
    if (augment) {
      std::vector<Message> outgoing(p);
      {
        Stopwatch sw(tm.centroids);
        pool.run(p, [&](std::size_t i) { outgoing[i] = to_message(compute_centroids(parts[i], i)); });
      }
      std::vector<std::vector<SharedMessage>> inbox;
      {
        Stopwatch sw(tm.all_to_all);
        inbox = exchange.all_to_all(outgoing);
      }
      Stopwatch sw(tm.centroids);
      pool.run(p, [&](std::size_t i) {
        std::vector<CentroidSummary> all;
        all.reserve(p);
        for (const auto& m : inbox[i]) all.push_back(centroid_from_message(*m));
        train[i] = augment_partition(parts[i], all, i);
      });
    }

    auto solve_round = [&](const SolverConfig& cfg, Seconds& solve_slot, Seconds& gather_slot,
                           Round round) {
      std::vector<Message> outgoing(p);
      {
        Stopwatch sw(solve_slot);
        pool.run(p, [&](std::size_t i) {
          outgoing[i] = to_message(solve_glmnet(train[i], cfg).model, static_cast<std::uint32_t>(i));
        });
      }
      ModelMatrix W;
      W.source_round = round;
      Stopwatch sw(gather_slot);
      for (const auto& m : exchange.gather(outgoing)) W.columns.push_back(model_from_message(*m));
      return W;
    };

    ModelMatrix W = solve_round(solver_cfg, tm.round1, tm.gather1, Round::round1);
    for (const auto& c : W.columns) diag.round1_nnz.push_back(c.nnz());

    if (second_round) {
      std::vector<SharedMessage> delivered;
      {
        Stopwatch sw(tm.alpha);
        delivered = exchange.broadcast(to_message(compute_feature_weights(W, spec.beta)));
      }
      // Every worker reads its own delivered copy; they are identical by construction.
      SolverConfig cfg2 = solver_cfg;
      cfg2.penalty.feature_scale = feature_weights_from_message(*delivered[0]).alpha;
      for (std::size_t i = 1; i < p; ++i)
        if (feature_weights_from_message(*delivered[i]).alpha != cfg2.penalty.feature_scale)
          throw Error("feature weights differ across workers");
      W = solve_round(cfg2, tm.round2, tm.gather2, Round::round2);
      for (const auto& c : W.columns) diag.round2_nnz.push_back(c.nnz());
    }

    if (spec.method == Method::naive) {
      Stopwatch sw(tm.merge);
      out.model = naive_average(W);
    } else {
      Stopwatch sw(tm.merge);
      const SparseDataset merge_set =
          spec.merge_set_policy == MergeSetPolicy::main_partition
              ? parts[0]
              : subsample(ds, min_merge_set_size(ds.n_rows(), p, ds.n_cols()),
                          mix_seed(spec.seed, kMergeSampleStream));
      diag.merge_set_rows = merge_set.n_rows();
      auto merged = owa_merge(merge_set, W, spec.lambda_cv_grid, spec.cv_folds,
                              mix_seed(spec.seed, kCvStream));
      diag.lambda_cv = merged.lambda_cv;
      diag.merge_cross_validated = merged.cross_validated;
      out.model = std::move(merged.model);
    }
  } catch (const Error& e) {
    tm.total = Clock::now() - t_start;
    throw PipelineAborted(std::string("pipeline aborted: ") + e.what(), tm);
  }

  diag.final_nnz = out.model.nnz();
  diag.exchange = exchange.counters();
  tm.total = Clock::now() - t_start;
  return out;
}

}  // namespace acowa
