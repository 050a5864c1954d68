#include "acowa/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "acowa/error.hpp"
#include "acowa/metrics.hpp"
#include "acowa/objective.hpp"

namespace acowa {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SolverConfig config_for(SolverMode mode, double lambda1, double lambda2) {
  Penalty pen{lambda1, lambda2, {}};
  return mode == SolverMode::full ? SolverConfig::full(pen) : SolverConfig::relaxed(pen);
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double stddev_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

std::vector<double> default_lambda1_grid(const SparseDataset& train, std::size_t count) {
  const double top = lambda_max(train);
  if (!(top > 0.0)) return {1.0};
  return log_grid(top * 1e-4, top, count);
}

void SweepConfig::validate() const {
  if (methods.empty()) throw InvalidArgument("sweep needs at least one method");
  if (seeds < 1) throw InvalidArgument("sweep needs at least one seed");
  if (betas.empty()) throw InvalidArgument("beta grid is empty");
  if (p < 1) throw InvalidArgument("p must be >= 1");
  for (double l : lambda1_grid)
    if (!(l >= 0.0)) throw InvalidArgument("lambda1 values must be >= 0");
}

std::string sweep_csv_header() {
  return "method,p,lambda1,lambda2,beta,seed,nnz,accuracy,time_total,status,nnz_std,accuracy_std";
}

std::string to_csv(const SweepRow& r) {
  std::string status = r.status;
  for (auto& c : status)
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  std::ostringstream os;
  os << r.method << ',' << r.p << ',' << fmt(r.lambda1) << ',' << fmt(r.lambda2) << ','
     << fmt(r.beta) << ',' << r.seed << ',' << fmt(r.nnz) << ',' << fmt(r.accuracy) << ','
     << fmt(r.time_total) << ',' << status << ',' << fmt(r.nnz_std) << ','
     << fmt(r.accuracy_std);
  return os.str();
}

SweepRow parse_sweep_row(const std::string& line) {
  std::vector<std::string> f;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) f.push_back(cell);
  if (f.size() != 12) throw ParseError(1, "expected 12 CSV fields, got " + std::to_string(f.size()));
  auto num = [&](const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0') throw ParseError(1, "'" + s + "' is not numeric");
    return v;
  };
  SweepRow r;
  r.method = f[0];
  r.p = static_cast<std::size_t>(num(f[1]));
  r.lambda1 = num(f[2]);
  r.lambda2 = num(f[3]);
  r.beta = num(f[4]);
  r.seed = static_cast<long long>(num(f[5]));
  r.nnz = num(f[6]);
  r.accuracy = num(f[7]);
  r.time_total = num(f[8]);
  r.status = f[9];
  r.nnz_std = num(f[10]);
  r.accuracy_std = num(f[11]);
  return r;
}

SweepOutcome run_sweep(const SparseDataset& train, const SparseDataset& test,
                       const SweepConfig& cfg, std::ostream* csv) {
  cfg.validate();
  const auto grid = cfg.lambda1_grid.empty() ? default_lambda1_grid(train) : cfg.lambda1_grid;
  if (csv) *csv << sweep_csv_header() << '\n';

  SweepOutcome out;
  // (method index, beta index, lambda index) -> ok detail rows
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::vector<SweepRow>> groups;

  for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
    for (std::size_t bi = 0; bi < cfg.betas.size(); ++bi) {
      for (std::size_t li = 0; li < grid.size(); ++li) {
        const double l1 = grid[li];
        const double l2 = cfg.elastic_net ? l1 : cfg.lambda2;
        for (std::size_t s = 0; s < cfg.seeds; ++s) {
          SweepRow row;
          row.method = to_string(cfg.methods[mi]);
          row.p = cfg.p;
          row.lambda1 = l1;
          row.lambda2 = l2;
          row.beta = cfg.betas[bi];
          row.seed = static_cast<long long>(cfg.seed_base + s);
          try {
            MethodSpec spec;
            spec.method = cfg.methods[mi];
            spec.p = cfg.p;
            spec.beta = cfg.betas[bi];
            spec.merge_set_policy = cfg.merge_policy;
            spec.seed = cfg.seed_base + s;
            const auto res = run_pipeline(train, spec, config_for(cfg.solver_mode, l1, l2), cfg.threads);
            row.nnz = static_cast<double>(res.model.nnz());
            row.accuracy = accuracy(test, res.model);
            row.time_total = res.timings.total.count();
            groups[{mi, bi, li}].push_back(row);
          } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
            out.all_ok = false;
          }
          if (csv) *csv << to_csv(row) << '\n';
          out.rows.push_back(std::move(row));
        }
      }
    }
  }

  for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
    for (std::size_t bi = 0; bi < cfg.betas.size(); ++bi) {
      for (std::size_t li = 0; li < grid.size(); ++li) {
        const auto& ok = groups[{mi, bi, li}];
        SweepRow agg;
        agg.method = to_string(cfg.methods[mi]);
        agg.p = cfg.p;
        agg.lambda1 = grid[li];
        agg.lambda2 = cfg.elastic_net ? grid[li] : cfg.lambda2;
        agg.beta = cfg.betas[bi];
        agg.seed = -1;
        std::vector<double> nnz, acc, time;
        for (const auto& r : ok) {
          nnz.push_back(r.nnz);
          acc.push_back(r.accuracy);
          time.push_back(r.time_total);
        }
        agg.nnz = mean_of(nnz);
        agg.accuracy = mean_of(acc);
        agg.time_total = mean_of(time);
        agg.nnz_std = stddev_of(nnz);
        agg.accuracy_std = stddev_of(acc);
        if (ok.size() != cfg.seeds)
          agg.status = ok.empty() ? "error: no successful runs"
                                  : "partial: " + std::to_string(ok.size()) + " of " +
                                        std::to_string(cfg.seeds) + " runs";
        if (csv) *csv << to_csv(agg) << '\n';
        out.rows.push_back(std::move(agg));
      }
    }
  }
  return out;
}

TuneResult tune_lambda_for_nnz(const SparseDataset& ds, const MethodSpec& spec,
                               const SolverConfig& base_cfg, std::size_t target_nnz,
                               std::size_t threads, std::size_t max_steps) {
  if (max_steps < 1) throw InvalidArgument("max_steps must be >= 1");
  const double tolerance = 0.1 * static_cast<double>(target_nnz);
  TuneResult best;
  double best_err = std::numeric_limits<double>::infinity();

  auto attempt = [&](double lambda1) {
    SolverConfig cfg = base_cfg;
    cfg.penalty.lambda1 = lambda1;
    auto run = run_pipeline(ds, spec, cfg, threads);
    const std::size_t nnz = run.model.nnz();
    ++best.steps;
    const double err = std::abs(static_cast<double>(nnz) - static_cast<double>(target_nnz));
    if (err < best_err) {
      best_err = err;
      best.lambda1 = lambda1;
      best.nnz = nnz;
      best.run = std::move(run);
    }
    best.hit_target = best_err <= tolerance;
    return nnz;
  };

  double hi = lambda_max(ds);
  if (!(hi > 0.0)) hi = 1.0;
  // Grow the upper end until it is sparse enough.
  std::size_t nnz_hi = attempt(hi);
  while (!best.hit_target && nnz_hi > target_nnz && best.steps < max_steps) {
    hi *= 4.0;
    nnz_hi = attempt(hi);
  }
  double lo = hi * 1e-6;
  while (!best.hit_target && best.steps < max_steps) {
    const double mid = std::sqrt(lo * hi);
    if (attempt(mid) > target_nnz)
      lo = mid;
    else
      hi = mid;
  }
  return best;
}

void write_timings_csv(std::ostream& out, const RunTimings& t) {
  out << "stage,seconds\n";
  for (const auto& [name, secs] : t.rows()) out << name << ',' << fmt(secs.count()) << '\n';
}

}  // namespace acowa
