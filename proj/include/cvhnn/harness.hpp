#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "cvhnn/activations.hpp"
#include "cvhnn/dynamics.hpp"
#include "cvhnn/random.hpp"

namespace cvhnn {

/// Energy-descent experiment on one random Hermitian network. Defaults are
/// N = 10, Q = 3, R = 2, K = 4, five initial states, five serial sweeps.
struct ExperimentConfig {
  std::size_t n = 10;
  ActivationSpec activation{ActivationKind::CoCeil, 4, 3, 2.0};
  std::size_t trials = 5;
  std::size_t sweeps = 5;
  UpdateMode mode = UpdateMode::Serial;
  OrderPolicy order = OrderPolicy::Cyclic;
  std::uint64_t weight_seed = 1;
  std::uint64_t state_seed = 2;

  /// CoCeil initial points are uniform on [rect_min, rect_max)².
  double rect_min = -3.0;
  double rect_max = 7.0;
  /// CoSign initial radii are uniform on [0, disk_radius); defaults to Q·R.
  std::optional<double> disk_radius;

  double effective_disk_radius() const;
  /// Throws std::invalid_argument on n, trials or sweeps of zero, an empty
  /// rectangle, or a non-positive disk radius.
  void validate() const;
};

/// S_i(0) = coceil(a + b i), a, b uniform on the configured rectangle.
StateVector sample_initial_coceil(const ExperimentConfig& config, Rng& rng);

/// S_i(0) = cosign(r e^{θ i}), θ uniform on [0, 2π), r uniform on
/// [0, disk_radius). Draws landing where cosign is undefined are redrawn.
StateVector sample_initial_cosign(const ExperimentConfig& config, Rng& rng);

/// Each neuron uniform over the image set.
StateVector sample_uniform_state(const ActivationSpec& spec, std::size_t n, Rng& rng);

/// Sampler matching the activation: rectangle for CoCeil, disk for CoSign,
/// uniform over the image set otherwise.
StateVector sample_initial(const ExperimentConfig& config, Rng& rng);

struct TrialResult {
  std::uint64_t seed = 0;
  StateVector initial;
  TrajectoryRecord trajectory;
};

struct ExperimentSummary {
  std::size_t converged = 0;
  std::size_t cycles = 0;
  std::size_t unresolved = 0;
  /// Largest energy rise across one update, over all trials.
  double max_energy_increase = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  NetworkModel model;
  std::vector<TrialResult> trials;
  ExperimentSummary summary;
};

/// Per-trial sub-seed for the initial state; trials are independent of each
/// other and of evaluation order.
std::uint64_t trial_seed(std::uint64_t state_seed, std::size_t trial);

/// Fully determined by the config. Zero thresholds.
ExperimentReport run_experiment(const ExperimentConfig& config);

struct ConjectureSuiteConfig {
  std::vector<ActivationKind> kinds{ActivationKind::CSign, ActivationKind::SplitSign,
                                    ActivationKind::CoCeil, ActivationKind::CoSign};
  /// Each trial draws N uniformly from `sizes` and K from `resolution_factors`.
  std::vector<std::size_t> sizes{10};
  std::vector<int> resolution_factors{4};
  int Q = 3;
  double R = 2.0;
  std::size_t trials = 100;
  /// Budget for both modes (sweeps in serial, steps in parallel).
  std::size_t max_sweeps = 1000;
  std::uint64_t seed = 1;
  /// Serial energy rises above this count as violations.
  double tolerance = 1e-9;

  /// Throws std::invalid_argument on empty lists, sizes outside [1, 16],
  /// K < 1, or zero trials/budget.
  void validate() const;
};

struct ModeTally {
  std::size_t converged = 0;
  std::size_t unresolved = 0;
  /// Cycle length -> count.
  std::map<std::size_t, std::size_t> cycles;
  double max_energy_increase = 0.0;
  /// Runs containing an update that raised the energy above tolerance.
  std::size_t runs_with_energy_increase = 0;

  std::size_t total() const;
};

/// Run with an unexpected verdict: anything but Converged in serial mode,
/// anything but Converged or Cycle(2) in parallel mode.
struct Counterexample {
  ActivationKind kind;
  UpdateMode mode;
  std::size_t trial = 0;
  std::size_t n = 0;
  int K = 0;
  Verdict verdict;
};

struct ConjectureRow {
  ActivationKind kind;
  ModeTally serial;
  ModeTally parallel;
};

struct ConjectureReport {
  ConjectureSuiteConfig config;
  std::vector<ConjectureRow> rows;
  std::vector<Counterexample> counterexamples;

  const ConjectureRow& row(ActivationKind kind) const;
};

/// Random Hermitian zero-diagonal networks, each run from one random initial
/// state in cyclic serial mode and in parallel mode.
ConjectureReport conjecture_suite(const ConjectureSuiteConfig& config);

}  // namespace cvhnn
