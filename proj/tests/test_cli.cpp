#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "acowa/experiment.hpp"
#include "acowa/model_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const fs::path& workdir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("acowa_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run cli(const std::string& args) {
  const auto out = workdir() / "stdout.txt";
  const auto err = workdir() / "stderr.txt";
  const std::string cmd = std::string(ACOWA_CLI_PATH) + " " + args + " >" + out.string() + " 2>" +
                          err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string data(const char* name) { return (workdir() / name).string(); }

void ensure_data() {
  static bool done = false;
  if (done) return;
  const auto r = cli("synth --n 1200 --n-test 400 --d 60 --informative 6 --seed 3 --out " +
                     data("train.svm") + " --test-out " + data("test.svm"));
  REQUIRE(r.code == 0);
  done = true;
}

}  // namespace

TEST_CASE("cli: huge lambda1 gives an empty model file") {
  ensure_data();
  const auto r = cli("train --method naive --p 1 --lambda1 1e9 --train " + data("train.svm") +
                     " --out " + data("empty.model"));
  CHECK(r.code == 0);
  CHECK(slurp(workdir() / "empty.model").empty());
  CHECK(r.out.find("nnz 0") != std::string::npos);
}

TEST_CASE("cli: repeated training is byte-identical") {
  ensure_data();
  const std::string base = "train --method acowa --p 4 --seed 7 --lambda1 1 --train " + data("train.svm") +
                           " --test " + data("test.svm") + " --out ";
  REQUIRE(cli(base + data("a.model")).code == 0);
  const auto r = cli(base + data("b.model"));
  REQUIRE(r.code == 0);
  const auto a = slurp(workdir() / "a.model");
  CHECK_FALSE(a.empty());
  CHECK(a == slurp(workdir() / "b.model"));
  CHECK(r.out.find("test_accuracy") != std::string::npos);
  std::istringstream in(a);
  CHECK(acowa::read_model(in, 60).nnz() > 0);
}

TEST_CASE("cli: missing test file exits with 2") {
  ensure_data();
  const auto r = cli("train --train " + data("train.svm") + " --test " + data("nope.svm"));
  CHECK(r.code == 2);
  CHECK(r.err.find("nope.svm") != std::string::npos);
}

TEST_CASE("cli: bad flags fail") {
  ensure_data();
  CHECK(cli("train --train " + data("train.svm") + " --method bogus").code != 0);
  CHECK(cli("train --train " + data("train.svm") + " --solver-mode turbo").code != 0);
  CHECK(cli("frobnicate").code != 0);
}

TEST_CASE("cli: sweep writes a parseable CSV") {
  ensure_data();
  const auto r = cli("sweep --methods naive,owa --p 3 --seeds 2 --lambda1-min 0.5 --lambda1-max 5 "
                     "--lambda1-count 3 --train " + data("train.svm") + " --test " + data("test.svm") +
                     " --out " + data("sweep.csv"));
  CHECK(r.code == 0);
  std::istringstream in(slurp(workdir() / "sweep.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == acowa::sweep_csv_header());
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    const auto row = acowa::parse_sweep_row(line);
    CHECK(row.status == "ok");
    ++rows;
  }
  CHECK(rows == 12 + 6);
}

TEST_CASE("cli: sweep exit code reflects failed runs") {
  ensure_data();
  const auto r = cli("sweep --methods naive --p 5000 --seeds 1 --lambda1-count 1 --train " +
                     data("train.svm") + " --test " + data("test.svm") + " --out " + data("bad.csv"));
  CHECK(r.code == 1);
}

TEST_CASE("cli: bench emits all nine stages") {
  ensure_data();
  const auto r = cli("bench --method acowa --p 4 --target-nnz 10 --train " + data("train.svm") +
                     " --out " + data("timings.csv"));
  CHECK(r.code == 0);
  const auto csv = slurp(workdir() / "timings.csv");
  for (const char* stage : {"Centroids", "All-to-all", "Round 1", "Model gather", "Compute α",
                            "Round 2", "Round 3", "Total"})
    CHECK(csv.find(stage) != std::string::npos);
  std::istringstream in(csv);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 10);
}
