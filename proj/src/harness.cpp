#include "cvhnn/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cvhnn/weights.hpp"

namespace cvhnn {

double ExperimentConfig::effective_disk_radius() const {
  return disk_radius ? *disk_radius : activation.Q() * activation.R();
}

void ExperimentConfig::validate() const {
  if (n == 0) throw std::invalid_argument("n must be >= 1");
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (sweeps == 0) throw std::invalid_argument("sweeps must be >= 1");
  if (!(rect_min < rect_max)) throw std::invalid_argument("sampling rectangle is empty");
  const double radius = effective_disk_radius();
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("disk radius must be positive");
  }
}

StateVector sample_initial_coceil(const ExperimentConfig& config, Rng& rng) {
  const auto& spec = config.activation;
  if (spec.kind() != ActivationKind::CoCeil) {
    throw std::invalid_argument("rectangle sampler needs a coceil activation");
  }
  StateVector state;
  state.reserve(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    const double re = rng.uniform(config.rect_min, config.rect_max);
    const double im = rng.uniform(config.rect_min, config.rect_max);
    state.push_back(*quantize(spec, {re, im}));
  }
  return state;
}

StateVector sample_initial_cosign(const ExperimentConfig& config, Rng& rng) {
  const auto& spec = config.activation;
  if (spec.kind() != ActivationKind::CoSign) {
    throw std::invalid_argument("disk sampler needs a cosign activation");
  }
  const double radius = config.effective_disk_radius();
  StateVector state;
  state.reserve(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    std::optional<StateCode> code;
    while (!code) {
      const double r = rng.uniform(0.0, radius);
      const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
      code = quantize(spec, std::polar(r, theta));
    }
    state.push_back(*code);
  }
  return state;
}

StateVector sample_uniform_state(const ActivationSpec& spec, std::size_t n, Rng& rng) {
  const auto codes = image_set(spec);
  StateVector state;
  state.reserve(n);
  for (std::size_t i = 0; i < n; ++i) state.push_back(codes[rng.below(codes.size())]);
  return state;
}

StateVector sample_initial(const ExperimentConfig& config, Rng& rng) {
  switch (config.activation.kind()) {
    case ActivationKind::CoCeil: return sample_initial_coceil(config, rng);
    case ActivationKind::CoSign: return sample_initial_cosign(config, rng);
    default: return sample_uniform_state(config.activation, config.n, rng);
  }
}

std::uint64_t trial_seed(std::uint64_t state_seed, std::size_t trial) {
  return mix_seed(state_seed, trial);
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  NetworkModel model(random_hermitian({config.n, config.weight_seed}), config.activation);
  const Network network(model);

  ExperimentReport report{config, std::move(model), {}, {}};
  for (std::size_t t = 0; t < config.trials; ++t) {
    const std::uint64_t seed = trial_seed(config.state_seed, t);
    Rng rng(seed);
    StateVector initial = sample_initial(config, rng);
    RunOptions options{config.mode, config.order, mix_seed(seed, 0x6f72646572ULL), config.sweeps};
    TrajectoryRecord trajectory = network.run(initial, options);

    switch (trajectory.verdict.kind) {
      case Verdict::Kind::Converged: ++report.summary.converged; break;
      case Verdict::Kind::Cycle: ++report.summary.cycles; break;
      case Verdict::Kind::Unresolved: ++report.summary.unresolved; break;
    }
    report.summary.max_energy_increase =
        std::max(report.summary.max_energy_increase, trajectory.max_energy_increase());
    report.trials.push_back({seed, std::move(initial), std::move(trajectory)});
  }
  return report;
}

void ConjectureSuiteConfig::validate() const {
  if (kinds.empty()) throw std::invalid_argument("no activation kinds selected");
  if (sizes.empty()) throw std::invalid_argument("no network sizes selected");
  for (auto n : sizes) {
    if (n < 1 || n > 16) throw std::invalid_argument("network sizes must lie in [1, 16]");
  }
  if (resolution_factors.empty()) throw std::invalid_argument("no resolution factors selected");
  for (auto k : resolution_factors) {
    if (k < 1) throw std::invalid_argument("resolution factors must be >= 1");
  }
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (max_sweeps == 0) throw std::invalid_argument("max_sweeps must be >= 1");
}

std::size_t ModeTally::total() const {
  std::size_t sum = converged + unresolved;
  for (const auto& [length, count] : cycles) sum += count;
  return sum;
}

const ConjectureRow& ConjectureReport::row(ActivationKind kind) const {
  for (const auto& r : rows) {
    if (r.kind == kind) return r;
  }
  throw std::out_of_range("activation kind not in conjecture report");
}

namespace {

void tally(ModeTally& into, const TrajectoryRecord& record, double tolerance) {
  switch (record.verdict.kind) {
    case Verdict::Kind::Converged: ++into.converged; break;
    case Verdict::Kind::Cycle: ++into.cycles[record.verdict.length]; break;
    case Verdict::Kind::Unresolved: ++into.unresolved; break;
  }
  const double rise = record.max_energy_increase();
  into.max_energy_increase = std::max(into.max_energy_increase, rise);
  if (rise > tolerance) ++into.runs_with_energy_increase;
}

}  // namespace

ConjectureReport conjecture_suite(const ConjectureSuiteConfig& config) {
  config.validate();
  ConjectureReport report{config, {}, {}};

  for (const auto kind : config.kinds) {
    ConjectureRow row{kind, {}, {}};
    for (std::size_t t = 0; t < config.trials; ++t) {
      const auto stream = (static_cast<std::uint64_t>(kind) << 32) | t;
      Rng rng(mix_seed(config.seed, stream));
      const std::size_t n = config.sizes[rng.below(config.sizes.size())];
      const int K = config.resolution_factors[rng.below(config.resolution_factors.size())];

      ExperimentConfig sampling;
      sampling.n = n;
      sampling.activation = ActivationSpec(kind, K, config.Q, config.R);
      const Network network(
          NetworkModel(random_hermitian({n, rng.next_u64()}), sampling.activation));
      const StateVector initial = sample_initial(sampling, rng);

      const auto serial =
          network.run(initial, {UpdateMode::Serial, OrderPolicy::Cyclic, 0, config.max_sweeps});
      const auto parallel =
          network.run(initial, {UpdateMode::Parallel, OrderPolicy::Cyclic, 0, config.max_sweeps});
      tally(row.serial, serial, config.tolerance);
      tally(row.parallel, parallel, config.tolerance);

      if (serial.verdict.kind != Verdict::Kind::Converged) {
        report.counterexamples.push_back({kind, UpdateMode::Serial, t, n, K, serial.verdict});
      }
      const bool parallel_ok =
          parallel.verdict.kind == Verdict::Kind::Converged ||
          (parallel.verdict.kind == Verdict::Kind::Cycle && parallel.verdict.length == 2);
      if (!parallel_ok) {
        report.counterexamples.push_back({kind, UpdateMode::Parallel, t, n, K, parallel.verdict});
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace cvhnn
