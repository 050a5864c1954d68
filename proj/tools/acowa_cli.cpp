// acowa: train, sweep and benchmark distributed sparse logistic regression.
//
// Exit codes: 0 all runs completed, 1 a run or argument failed,
// 2 an input file is missing or unreadable.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "acowa/error.hpp"
#include "acowa/experiment.hpp"
#include "acowa/harness.hpp"
#include "acowa/libsvm.hpp"
#include "acowa/metrics.hpp"
#include "acowa/model_io.hpp"
#include "acowa/partition.hpp"
#include "acowa/pipeline.hpp"
#include "acowa/synth.hpp"

namespace {

using namespace acowa;

constexpr int kExitFailure = 1;
constexpr int kExitMissingInput = 2;

struct MissingInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string method = "acowa";
  std::size_t p = 1;
  double beta = 1.0;
  double lambda1 = 1.0;
  double lambda2 = 0.0;
  std::uint64_t seed = 0;
  std::string merge_policy = "main_partition";
  std::string solver_mode = "relaxed";
  std::string train;
  std::string test;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool single_run) {
  cmd->add_option("--train", c.train, "training data (LIBSVM, optionally .gz)")->required();
  cmd->add_option("--test", c.test, "held-out data (LIBSVM)");
  cmd->add_option("--p", c.p, "number of partitions")->check(CLI::PositiveNumber);
  cmd->add_option("--lambda2", c.lambda2, "L2 penalty")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", c.seed, "seed for partitioning and the merge");
  cmd->add_option("--merge-policy", c.merge_policy, "merge set")
      ->check(CLI::IsMember({"paper_min", "main_partition"}));
  cmd->add_option("--solver-mode", c.solver_mode, "partition solver budget")
      ->check(CLI::IsMember({"relaxed", "full"}));
  cmd->add_option("--out", c.out, "output path");
  if (single_run) {
    cmd->add_option("--method", c.method, "naive, owa, acowa, acowa_centroid_only, acowa_fw_only");
    cmd->add_option("--beta", c.beta, "feature-weight strength")->check(CLI::NonNegativeNumber);
  }
}

SparseDataset load(const std::string& path, std::optional<std::size_t> dims = {}) {
  if (!std::filesystem::is_regular_file(path)) throw MissingInput("no such file: " + path);
  return load_libsvm(path, dims);
}

SolverConfig solver_config(const Common& c, double lambda1, double lambda2) {
  Penalty pen{lambda1, lambda2, {}};
  return c.solver_mode == "full" ? SolverConfig::full(pen) : SolverConfig::relaxed(pen);
}

MethodSpec method_spec(const Common& c) {
  MethodSpec spec;
  spec.method = parse_method(c.method);
  spec.p = c.p;
  spec.beta = c.beta;
  spec.seed = c.seed;
  spec.merge_set_policy = parse_merge_policy(c.merge_policy);
  return spec;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  return f;
}

int cmd_train(const Common& c) {
  const auto train = load(c.train);
  std::optional<SparseDataset> test;
  if (!c.test.empty()) test = load(c.test, train.n_cols());

  const auto res = run_pipeline(train, method_spec(c), solver_config(c, c.lambda1, c.lambda2),
                                WorkerPool::default_threads());
  if (!c.out.empty()) {
    auto f = open_out(c.out);
    write_model(f, res.model);
  }
  std::printf("nnz %zu\n", res.model.nnz());
  std::printf("train_accuracy %.6f\n", accuracy(train, res.model));
  if (test) std::printf("test_accuracy %.6f\n", accuracy(*test, res.model));
  std::printf("time_total %.6f\n", res.timings.total.count());
  for (const auto& note : res.diagnostics.notes) std::fprintf(stderr, "note: %s\n", note.c_str());
  return 0;
}

struct SweepArgs {
  std::vector<std::string> methods{"naive", "owa", "acowa"};
  std::size_t seeds = 10;
  std::optional<double> lambda1_min;
  std::optional<double> lambda1_max;
  std::size_t lambda1_count = 20;
  bool elastic_net = false;
  std::vector<double> betas{1.0};
};

int cmd_sweep(const Common& c, const SweepArgs& s) {
  if (c.test.empty()) throw InvalidArgument("sweep needs --test");
  const auto train = load(c.train);
  const auto test = load(c.test, train.n_cols());

  SweepConfig cfg;
  cfg.methods.clear();
  for (const auto& m : s.methods) cfg.methods.push_back(parse_method(m));
  cfg.p = c.p;
  cfg.seeds = s.seeds;
  cfg.seed_base = c.seed;
  cfg.lambda2 = c.lambda2;
  cfg.elastic_net = s.elastic_net;
  cfg.betas = s.betas;
  cfg.merge_policy = parse_merge_policy(c.merge_policy);
  cfg.solver_mode = c.solver_mode == "full" ? SolverMode::full : SolverMode::relaxed;
  cfg.threads = WorkerPool::default_threads();
  if (s.lambda1_min || s.lambda1_max) {
    const auto def = default_lambda1_grid(train, 2);
    cfg.lambda1_grid = log_grid(s.lambda1_min.value_or(def.front()),
                                s.lambda1_max.value_or(def.back()), s.lambda1_count);
  } else {
    cfg.lambda1_grid = default_lambda1_grid(train, s.lambda1_count);
  }

  SweepOutcome outcome;
  if (c.out.empty()) {
    outcome = run_sweep(train, test, cfg, &std::cout);
  } else {
    auto f = open_out(c.out);
    outcome = run_sweep(train, test, cfg, &f);
  }
  return outcome.all_ok ? 0 : kExitFailure;
}

int cmd_bench(const Common& c, std::size_t target_nnz, std::size_t max_steps) {
  const auto train = load(c.train);
  auto spec = method_spec(c);
  const auto tuned = tune_lambda_for_nnz(train, spec, solver_config(c, 1.0, c.lambda2), target_nnz,
                                         WorkerPool::default_threads(), max_steps);
  std::fprintf(stderr, "lambda1 %.6g nnz %zu target %zu%s after %zu runs\n", tuned.lambda1,
               tuned.nnz, target_nnz, tuned.hit_target ? "" : " (nearest achieved)", tuned.steps);
  if (c.out.empty()) {
    write_timings_csv(std::cout, tuned.run.timings);
  } else {
    auto f = open_out(c.out);
    write_timings_csv(f, tuned.run.timings);
  }
  return 0;
}

struct SynthArgs {
  SynthOptions opt;
  std::size_t n_test = 5000;
  std::string train_out;
  std::string test_out;
};

int cmd_synth(const SynthArgs& a) {
  const auto data = synth_sparse(a.opt);
  const auto test = synth_rows(data.planted, a.n_test, a.opt.density, a.opt.noise_sd,
                               mix_seed(a.opt.seed, 2));
  auto f = open_out(a.train_out);
  write_libsvm(f, data.data);
  if (!a.test_out.empty()) {
    auto g = open_out(a.test_out);
    write_libsvm(g, test);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed sparse logistic regression (naive, OWA, ACOWA)"};
  app.require_subcommand(1);

  Common train_args;
  auto* train = app.add_subcommand("train", "train one model and write it out");
  add_common(train, train_args, true);
  train->add_option("--lambda1", train_args.lambda1, "L1 penalty")->check(CLI::NonNegativeNumber);

  Common sweep_args;
  SweepArgs sweep_extra;
  auto* sweep = app.add_subcommand("sweep", "lambda1 sweep over methods and seeds, CSV out");
  add_common(sweep, sweep_args, false);
  sweep->add_option("--methods", sweep_extra.methods, "methods to compare")->delimiter(',');
  sweep->add_option("--seeds", sweep_extra.seeds, "trials per grid point")->check(CLI::PositiveNumber);
  sweep->add_option("--lambda1-min", sweep_extra.lambda1_min, "grid lower end");
  sweep->add_option("--lambda1-max", sweep_extra.lambda1_max, "grid upper end");
  sweep->add_option("--lambda1-count", sweep_extra.lambda1_count, "grid size")
      ->check(CLI::PositiveNumber);
  sweep->add_flag("--elastic-net", sweep_extra.elastic_net, "set lambda2 = lambda1");
  sweep->add_option("--beta", sweep_extra.betas, "feature-weight strengths")->delimiter(',');

  Common bench_args;
  std::size_t target_nnz = 1000;
  std::size_t max_steps = 30;
  auto* bench = app.add_subcommand("bench", "tune lambda1 to a target nnz, emit stage timings");
  add_common(bench, bench_args, true);
  bench->add_option("--target-nnz", target_nnz, "desired nonzeros in the final model");
  bench->add_option("--max-steps", max_steps, "tuning budget")->check(CLI::PositiveNumber);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "write planted synthetic train/test data");
  synth->add_option("--n", synth_args.opt.n, "training rows");
  synth->add_option("--n-test", synth_args.n_test, "test rows");
  synth->add_option("--d", synth_args.opt.d, "features");
  synth->add_option("--density", synth_args.opt.density, "feature density");
  synth->add_option("--informative", synth_args.opt.informative_features, "planted nonzeros");
  synth->add_option("--noise", synth_args.opt.noise_sd, "margin noise sd");
  synth->add_option("--seed", synth_args.opt.seed, "seed");
  synth->add_option("--out", synth_args.train_out, "training file")->required();
  synth->add_option("--test-out", synth_args.test_out, "test file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train) return cmd_train(train_args);
    if (*sweep) return cmd_sweep(sweep_args, sweep_extra);
    if (*bench) return cmd_bench(bench_args, target_nnz, max_steps);
    if (*synth) return cmd_synth(synth_args);
  } catch (const MissingInput& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitMissingInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
  return kExitFailure;
}
