#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cvhnn/activations.hpp"
#include "cvhnn/matrix.hpp"
#include "cvhnn/weights.hpp"

namespace cvhnn {

/// Weights W, thresholds T and the activation of an N-neuron network.
struct NetworkModel {
  ComplexMatrix weights;
  std::vector<Complex> thresholds;
  ActivationSpec activation;

  /// Throws std::invalid_argument unless W is N×N and T has length N, N >= 1.
  NetworkModel(ComplexMatrix weights, std::vector<Complex> thresholds, ActivationSpec activation);

  /// Zero thresholds.
  NetworkModel(ComplexMatrix weights, ActivationSpec activation);

  std::size_t size() const { return weights.size(); }
  WeightReport validate_hermitian() const { return validate(weights); }
};

enum class UpdateMode { Serial, Parallel };
enum class OrderPolicy { Cyclic, RandomPermutation };

std::string_view to_string(UpdateMode mode);
UpdateMode parse_update_mode(std::string_view name);

struct RunOptions {
  UpdateMode mode = UpdateMode::Serial;
  OrderPolicy order = OrderPolicy::Cyclic;
  std::uint64_t order_seed = 0;
  /// Full serial sweeps, or parallel steps.
  std::size_t max_sweeps = 5;
};

/// Outcome of a run. Times and lengths count full sweeps in serial mode and
/// synchronous steps in parallel mode.
struct Verdict {
  enum class Kind { Converged, Cycle, Unresolved };

  Kind kind = Kind::Unresolved;
  /// 1 for a stable state, the exact recurrence gap for a cycle, 0 otherwise.
  std::size_t length = 0;
  /// First sweep/step index from which the stable state or cycle holds.
  std::size_t t0 = 0;

  /// "Converged", "Cycle(L)" or "Unresolved".
  std::string label() const;
  bool operator==(const Verdict&) const = default;
};

struct TrajectoryStep {
  /// Number of neuron updates (serial) or steps (parallel) so far; 0 is the
  /// initial state.
  std::size_t update = 0;
  /// Updated neuron in serial mode; empty for the initial entry and for
  /// parallel steps, which touch every neuron.
  std::optional<std::size_t> neuron;
  StateVector state;
  /// Empty when the weights are not Hermitian and the energy is undefined.
  std::optional<double> energy;
};

struct TrajectoryRecord {
  std::vector<TrajectoryStep> steps;
  Verdict verdict;
  std::size_t sweeps = 0;

  const StateVector& final_state() const { return steps.back().state; }
  /// Largest energy rise between consecutive entries (0 if none, or if the
  /// energy is undefined).
  double max_energy_increase() const;
};

/// Update engine for one network. Immutable after construction.
class Network {
 public:
  explicit Network(NetworkModel model);

  const NetworkModel& model() const { return model_; }
  const ActivationSpec& activation() const { return model_.activation; }
  std::size_t size() const { return model_.size(); }
  /// W_ij == conj(W_ji) exactly, so the energy is real.
  bool has_real_energy() const { return hermitian_; }

  /// Σ_j W_ij S_j - T_i.
  Complex net_contribution(const StateVector& state, std::size_t i) const;

  /// Updates neuron i in place; returns whether its state changed. An
  /// undefined activation leaves the neuron untouched.
  bool update_in_place(StateVector& state, std::size_t i) const;

  struct Update {
    StateVector state;
    bool changed = false;
  };

  Update update_neuron(StateVector state, std::size_t i) const;
  /// Serial updates in `order`, each one seeing the latest state.
  Update serial_sweep(StateVector state, std::span<const std::size_t> order) const;
  /// All neurons computed from `state`, then replaced together.
  StateVector parallel_step(const StateVector& state) const;

  /// E(S) = -1/2 Σ_i Σ_j conj(S_i) W_ij S_j. Throws std::domain_error when
  /// the weights are not Hermitian.
  double energy(const StateVector& state) const;

  /// Iterates from `initial` until a stable state, a cycle, or the sweep
  /// budget. Cycles are only detected for cyclic serial order and parallel
  /// mode; with random order a run ends Converged or Unresolved.
  /// Throws std::invalid_argument on an invalid initial state or a zero budget.
  TrajectoryRecord run(const StateVector& initial, const RunOptions& options) const;

 private:
  void check_state(const StateVector& state) const;
  std::optional<double> energy_or_empty(const StateVector& state) const;

  NetworkModel model_;
  Codebook codebook_;
  bool hermitian_;
};

struct StateHash {
  std::size_t operator()(const StateVector& state) const noexcept;
};

}  // namespace cvhnn
