// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cvhnn/dynamics.hpp"
#include "cvhnn/harness.hpp"
#include "cvhnn/report_io.hpp"
#include "cvhnn/weights.hpp"
#include "transition_oracle.hpp"

using namespace cvhnn;
namespace fs = std::filesystem;

namespace {

constexpr double kTolerance = 1e-9;

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string num(double x) { return format_double(x); }

void energy_descent_experiments() {
  bool ok = true;
  std::ostringstream detail;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& spec : {ActivationSpec(ActivationKind::CoCeil, 4, 3, 2.0), ActivationSpec::cosign(3, 2.0, 4)}) {
    ExperimentConfig config;
    config.activation = spec;
    const auto result = run_experiment(config);
    ok = ok && result.summary.converged == config.trials &&
         result.summary.max_energy_increase <= kTolerance;
    detail << to_string(spec.kind()) << " converged " << result.summary.converged << "/" << config.trials
           << ", max energy rise " << num(result.summary.max_energy_increase) << "; ";
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ok = ok && seconds < 1.0;
  detail << "runtime " << num(seconds) << " s";
  report(1, ok, "default coceil/cosign experiments descend and converge: " + detail.str());
}

ConjectureSuiteConfig suite(ActivationKind kind) {
  ConjectureSuiteConfig config;
  config.kinds = {kind};
  config.sizes = {2, 3, 4, 5, 6, 7, 8, 9, 10};
  config.resolution_factors = {2, 3, 4, 8};
  config.Q = 3;
  config.R = 2.0;
  config.trials = 100;
  config.max_sweeps = 1000;
  config.seed = 1;
  config.tolerance = kTolerance;
  return config;
}

std::string describe(const ModeTally& t) {
  std::ostringstream out;
  out << "converged " << t.converged << "/" << t.total();
  for (const auto& [length, count] : t.cycles) out << ", Cycle(" << length << ") " << count;
  if (t.unresolved) out << ", unresolved " << t.unresolved;
  return out.str();
}

void csign_suite() {
  const auto r = conjecture_suite(suite(ActivationKind::CSign)).row(ActivationKind::CSign);
  const bool ok = r.serial.converged == 100 && r.serial.runs_with_energy_increase == 0;
  report(2, ok,
         "csign serial: " + describe(r.serial) + ", runs with energy rise " +
             std::to_string(r.serial.runs_with_energy_increase) + ", max rise " +
             num(r.serial.max_energy_increase));
}

void split_sign_suite() {
  const auto r = conjecture_suite(suite(ActivationKind::SplitSign)).row(ActivationKind::SplitSign);
  bool parallel_ok = r.parallel.unresolved == 0;
  for (const auto& [length, count] : r.parallel.cycles) parallel_ok = parallel_ok && length == 2;
  const bool ok = r.serial.converged == 100 && parallel_ok;
  report(3, ok, "split-sign serial: " + describe(r.serial) + "; parallel: " + describe(r.parallel));
}

void ceiling_activation_suites() {
  bool ok = true;
  std::ostringstream detail;
  for (const auto kind : {ActivationKind::CoCeil, ActivationKind::CoSign}) {
    const auto result = conjecture_suite(suite(kind));
    const auto& r = result.row(kind);
    ok = ok && r.serial.converged == 100 && r.serial.max_energy_increase <= kTolerance;
    detail << to_string(kind) << " serial: " << describe(r.serial) << ", max rise "
           << num(r.serial.max_energy_increase) << " in " << r.serial.runs_with_energy_increase
           << " runs; parallel: " << describe(r.parallel) << "; ";
    for (const auto& c : result.counterexamples) {
      if (c.mode != UpdateMode::Parallel) continue;
      std::printf("  parallel counterexample: %s trial %zu, N=%zu, K=%d, %s\n",
                  std::string(to_string(c.kind)).c_str(), c.trial, c.n, c.K, c.verdict.label().c_str());
    }
  }
  report(4, ok, detail.str());
}

void staircase_equivalence() {
  const std::pair<int, double> params[] = {{1, 1.0}, {3, 2.0}, {5, 0.5}};
  const int points = 20000;
  bool ok = true;
  std::size_t checked = 0;
  for (const auto& [Q, R] : params) {
    const double lo = -2.0 * Q * R, hi = 2.0 * Q * R;
    for (int k = 0; k <= points; ++k) {
      const double x = lo + (hi - lo) * k / points;
      ok = ok && ceil_qr(x, Q, R) == ceil_qr_superposed(x, Q, R);
      ok = ok && step(x) == (sign_real(x) + 1.0) / 2.0;
      ++checked;
    }
    // Level edges themselves.
    for (int q = 0; q <= Q; ++q) {
      ok = ok && ceil_qr(q * R, Q, R) == ceil_qr_superposed(q * R, Q, R);
      ++checked;
    }
  }
  report(5, ok, "staircase equals its step-function sum and step matches sign on " + std::to_string(checked) +
                    " points");
}

void image_cardinalities() {
  bool ok = true;
  std::ostringstream detail;
  auto check = [&](const ActivationSpec& spec, std::size_t expected) {
    const auto codes = image_set(spec);
    const auto values = image_values(spec);
    std::set<StateCode> distinct(codes.begin(), codes.end());
    std::set<std::pair<double, double>> distinct_values;
    for (auto v : values) distinct_values.insert({v.real(), v.imag()});
    const bool good = codes.size() == expected && distinct.size() == expected &&
                      distinct_values.size() == expected && image_size(spec) == expected;
    ok = ok && good;
    if (!good) detail << to_string(spec.kind()) << " got " << codes.size() << " want " << expected << "; ";
  };
  for (int K : {1, 2, 3, 4, 8, 16}) check(ActivationSpec::csign(K), K);
  check(ActivationSpec::split_sign(), 4);
  for (int Q : {1, 3, 5}) check(ActivationSpec::coceil(Q, 0.5), (Q + 1) * (Q + 1));
  for (int Q : {1, 3, 5})
    for (int K : {2, 4, 7}) check(ActivationSpec::cosign(Q, 2.0, K), Q * K);
  report(6, ok, ok ? "K, 4, (Q+1)^2 and QK elements across 19 parameter sets" : detail.str());
}

void oracle_equivalence() {
  struct Case {
    ActivationSpec spec;
    std::vector<Complex> alphabet;
    std::vector<StateCode> codes;
    oracle::ValueMap act;
  };
  const Case cases[] = {
      {ActivationSpec::split_sign(),
       {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}},
       {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}},
       oracle::split_sign},
      {ActivationSpec::cosign(1, 2.0, 2), {{1, 0}, {-1, 0}}, {{1, 0}, {1, 1}}, oracle::two_sector},
  };

  std::vector<ComplexMatrix> weights;
  for (Complex c : {Complex{-1, 0}, Complex{1, 0}, Complex{0, 1}, Complex{0.5, -2}}) {
    ComplexMatrix w(2);
    w(0, 1) = c;
    w(1, 0) = std::conj(c);
    weights.push_back(w);
  }
  for (std::uint64_t seed = 1; seed <= 200; ++seed) weights.push_back(random_hermitian({2, seed}));

  bool ok = true;
  std::size_t runs = 0, mismatches = 0;
  for (const auto& c : cases) {
    for (const auto& w : weights) {
      const oracle::TransitionMap map({{w(0, 0), w(0, 1)}, {w(1, 0), w(1, 1)}}, c.alphabet, c.act);
      const Network net(NetworkModel(w, c.spec));
      ok = ok && map.states() == c.alphabet.size() * c.alphabet.size();
      for (std::size_t s = 0; s < map.states(); ++s) {
        const StateVector initial{c.codes[s % c.alphabet.size()], c.codes[s / c.alphabet.size()]};
        for (const auto mode : {UpdateMode::Serial, UpdateMode::Parallel}) {
          const auto want = mode == UpdateMode::Serial ? map.serial_outcome(s) : map.parallel_outcome(s);
          const auto got = net.run(initial, {mode, OrderPolicy::Cyclic, 0, 100}).verdict;
          const auto kind =
              want.kind == oracle::Outcome::Converged ? Verdict::Kind::Converged : Verdict::Kind::Cycle;
          ++runs;
          if (!(got == Verdict{kind, want.length, want.t0})) ++mismatches;
        }
      }
    }
  }
  ok = ok && mismatches == 0;
  report(7, ok,
         "N=2 split-sign (16 states) and cosign Q=1 K=2 (4 states), " + std::to_string(runs) +
             " runs against the transition map, " + std::to_string(mismatches) + " mismatches");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool run_cli(const std::string& args, const fs::path& stdout_file) {
  const std::string command =
      std::string("\"") + CVHNN_CLI_PATH + "\" " + args + " > \"" + stdout_file.string() + "\" 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) && WEXITSTATUS(status) == 0;
}

void cli_determinism() {
  const auto root = fs::temp_directory_path() / "cvhnn_acceptance";
  fs::remove_all(root);
  const std::vector<std::string> kinds{"csign", "split-sign", "coceil", "cosign"};

  bool ok = true;
  std::size_t files = 0;
  for (int rep = 0; rep < 2; ++rep) {
    const auto dir = root / std::to_string(rep);
    fs::create_directories(dir);
    auto q = [&](const std::string& name) { return "\"" + (dir / name).string() + "\""; };
    for (const auto& kind : kinds) {
      const std::string act = " --kind " + kind + " --K 4 --Q 3 --R 2";
      ok = ok && run_cli("gen-weights --n 8 --seed 7" + act + " --out " + q(kind + "_model.json"),
                         dir / (kind + "_gen.txt"));
      for (const std::string mode : {"serial", "parallel"}) {
        ok = ok && run_cli("run --model " + q(kind + "_model.json") + " --mode " + mode +
                               " --sweeps 50 --state-seed 9 --trace " + q(kind + "_" + mode + ".csv"),
                           dir / (kind + "_" + mode + "_run.json"));
      }
      ok = ok && run_cli("run --model " + q(kind + "_model.json") +
                             " --order random --order-seed 4 --sweeps 50 --trace " + q(kind + "_random.csv"),
                         dir / (kind + "_random_run.json"));
      ok = ok && run_cli("experiment" + act + " --trials 3 --sweeps 6 --out-dir " + q(kind + "_exp"),
                         dir / (kind + "_exp.txt"));
    }
  }
  const auto first = root / "0", second = root / "1";
  for (const auto& entry : fs::recursive_directory_iterator(first)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), first);
    ++files;
    if (read_file(entry.path()) != read_file(second / rel)) {
      ok = false;
      std::printf("  differs: %s\n", rel.string().c_str());
    }
  }
  ok = ok && files > 0;
  fs::remove_all(root);
  report(8, ok, "two identical rounds of CLI invocations, " + std::to_string(files) + " output files compared");
}

}  // namespace

int main() {
  energy_descent_experiments();
  csign_suite();
  split_sign_suite();
  ceiling_activation_suites();
  staircase_equivalence();
  image_cardinalities();
  oracle_equivalence();
  cli_determinism();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
