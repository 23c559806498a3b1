#include "cvhnn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "cvhnn/random.hpp"

namespace cvhnn {

NetworkModel::NetworkModel(ComplexMatrix w, std::vector<Complex> t, ActivationSpec act)
    : weights(std::move(w)), thresholds(std::move(t)), activation(act) {
  if (weights.size() == 0) throw std::invalid_argument("network needs at least one neuron");
  if (thresholds.size() != weights.size()) {
    throw std::invalid_argument("threshold vector length " + std::to_string(thresholds.size()) +
                                " does not match " + std::to_string(weights.size()) +
                                " neurons");
  }
}

NetworkModel::NetworkModel(ComplexMatrix w, ActivationSpec act)
    : NetworkModel(w, std::vector<Complex>(w.size()), act) {}

std::string_view to_string(UpdateMode mode) {
  return mode == UpdateMode::Serial ? "serial" : "parallel";
}

UpdateMode parse_update_mode(std::string_view name) {
  if (name == "serial") return UpdateMode::Serial;
  if (name == "parallel") return UpdateMode::Parallel;
  throw std::invalid_argument("unknown update mode '" + std::string(name) + "'");
}

std::string Verdict::label() const {
  switch (kind) {
    case Kind::Converged: return "Converged";
    case Kind::Cycle: return "Cycle(" + std::to_string(length) + ")";
    case Kind::Unresolved: return "Unresolved";
  }
  return "Unresolved";
}

double TrajectoryRecord::max_energy_increase() const {
  double worst = 0.0;
  for (std::size_t k = 1; k < steps.size(); ++k) {
    if (steps[k].energy && steps[k - 1].energy) {
      worst = std::max(worst, *steps[k].energy - *steps[k - 1].energy);
    }
  }
  return worst;
}

std::size_t StateHash::operator()(const StateVector& state) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& code : state) {
    const auto packed = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(code.x)) << 32) |
                        static_cast<std::uint32_t>(code.y);
    h = (h ^ packed) * 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

Network::Network(NetworkModel model)
    : model_(std::move(model)),
      codebook_(model_.activation),
      hermitian_(model_.validate_hermitian().is_hermitian) {}

void Network::check_state(const StateVector& state) const {
  if (state.size() != size()) {
    throw std::invalid_argument("state has " + std::to_string(state.size()) + " entries, network has " +
                                std::to_string(size()) + " neurons");
  }
  if (!is_valid_state(activation(), state)) {
    throw std::invalid_argument("state holds a value outside the activation's image set");
  }
}

Complex Network::net_contribution(const StateVector& state, std::size_t i) const {
  if (i >= size()) throw std::out_of_range("neuron index out of range");
  Complex sum{0.0, 0.0};
  for (std::size_t j = 0; j < size(); ++j) {
    sum += model_.weights(i, j) * codebook_.value(state[j]);
  }
  return sum - model_.thresholds[i];
}

bool Network::update_in_place(StateVector& state, std::size_t i) const {
  const auto next = quantize(activation(), net_contribution(state, i));
  if (!next || *next == state[i]) return false;
  state[i] = *next;
  return true;
}

Network::Update Network::update_neuron(StateVector state, std::size_t i) const {
  check_state(state);
  const bool changed = update_in_place(state, i);
  return {std::move(state), changed};
}

Network::Update Network::serial_sweep(StateVector state, std::span<const std::size_t> order) const {
  check_state(state);
  std::vector<bool> seen(size(), false);
  for (auto i : order) {
    if (i >= size() || seen[i]) throw std::invalid_argument("sweep order is not a permutation");
    seen[i] = true;
  }
  if (order.size() != size()) throw std::invalid_argument("sweep order is not a permutation");

  bool any = false;
  for (auto i : order) any = update_in_place(state, i) || any;
  return {std::move(state), any};
}

StateVector Network::parallel_step(const StateVector& state) const {
  StateVector next = state;
  for (std::size_t i = 0; i < size(); ++i) {
    if (const auto code = quantize(activation(), net_contribution(state, i))) next[i] = *code;
  }
  return next;
}

double Network::energy(const StateVector& state) const {
  if (!hermitian_) {
    throw std::domain_error("energy is only real for Hermitian weights (W_ij == conj(W_ji))");
  }
  check_state(state);
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < size(); ++i) {
    const Complex si = std::conj(codebook_.value(state[i]));
    for (std::size_t j = 0; j < size(); ++j) {
      sum += si * model_.weights(i, j) * codebook_.value(state[j]);
    }
  }
  const double real = -0.5 * sum.real();
  // Hermitian weights cancel the imaginary part up to summation rounding.
  if (0.5 * std::abs(sum.imag()) > 1e-9 * (1.0 + std::abs(real))) {
    throw std::logic_error("energy has a non-negligible imaginary part");
  }
  return real + 0.0;  // no -0 in the output files
}

std::optional<double> Network::energy_or_empty(const StateVector& state) const {
  if (!hermitian_) return std::nullopt;
  return energy(state);
}

TrajectoryRecord Network::run(const StateVector& initial, const RunOptions& options) const {
  check_state(initial);
  if (options.max_sweeps == 0) throw std::invalid_argument("max_sweeps must be >= 1");

  TrajectoryRecord record;
  StateVector state = initial;
  record.steps.push_back({0, std::nullopt, state, energy_or_empty(state)});

  std::unordered_map<StateVector, std::size_t, StateHash> seen;
  seen.emplace(state, 0);
  const bool detect_cycles =
      options.mode == UpdateMode::Parallel || options.order == OrderPolicy::Cyclic;

  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng order_rng(options.order_seed);
  std::size_t updates = 0;

  for (std::size_t sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    record.sweeps = sweep;
    bool changed = false;
    if (options.mode == UpdateMode::Serial) {
      if (options.order == OrderPolicy::RandomPermutation) {
        order_rng.shuffle(std::span<std::size_t>(order));
      }
      for (auto i : order) {
        changed = update_in_place(state, i) || changed;
        record.steps.push_back({++updates, i, state, energy_or_empty(state)});
      }
    } else {
      StateVector next = parallel_step(state);
      changed = next != state;
      state = std::move(next);
      record.steps.push_back({++updates, std::nullopt, state, energy_or_empty(state)});
    }

    if (!changed) {
      record.verdict = {Verdict::Kind::Converged, 1, sweep - 1};
      return record;
    }
    if (detect_cycles) {
      const auto [it, inserted] = seen.emplace(state, sweep);
      if (!inserted) {
        record.verdict = {Verdict::Kind::Cycle, sweep - it->second, it->second};
        return record;
      }
    }
  }
  record.verdict = {Verdict::Kind::Unresolved, 0, 0};
  return record;
}

}  // namespace cvhnn
