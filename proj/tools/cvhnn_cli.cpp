// Command-line front end for complex-valued Hopfield networks.
//
// Exit codes: 0 ok, 1 input/output error, 2 usage error, 3 validation failed.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvhnn/activations.hpp"
#include "cvhnn/dynamics.hpp"
#include "cvhnn/harness.hpp"
#include "cvhnn/model_io.hpp"
#include "cvhnn/report_io.hpp"
#include "cvhnn/weights.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const auto kAtLeastOne = CLI::Range(1.0, 1e18, "POSITIVE INTEGER");

const std::vector<std::string> kKinds = {"csign", "split-sign", "coceil", "cosign"};

struct ActivationFlags {
  std::string kind = "coceil";
  int K = 4;
  int Q = 3;
  double R = 2.0;
  double boundary_epsilon = 0.0;

  void add_to(CLI::App& cmd, bool overrides) {
    auto* k = cmd.add_option("--kind", kind, "Activation: csign, split-sign, coceil, cosign")
                  ->check(CLI::IsMember(kKinds));
    auto* rk = cmd.add_option("--K", K, "Resolution factor (phase sectors)")->check(kAtLeastOne);
    auto* q = cmd.add_option("--Q", Q, "Magnitude levels")->check(kAtLeastOne);
    auto* r = cmd.add_option("--R", R, "Magnitude quantum")->check(CLI::PositiveNumber);
    auto* e = cmd.add_option("--boundary-epsilon", boundary_epsilon,
                             "Phase distance to a sector boundary treated as undefined")
                  ->check(CLI::NonNegativeNumber);
    if (!overrides) {
      for (auto* opt : {k, rk, q, r, e}) opt->capture_default_str();
    }
    options = {k, rk, q, r, e};
  }

  bool any_given() const {
    for (const auto* opt : options) {
      if (opt->count() > 0) return true;
    }
    return false;
  }

  cvhnn::ActivationSpec spec() const {
    try {
      return {cvhnn::parse_activation_kind(kind), K, Q, R, boundary_epsilon};
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  /// Start from `base` and apply only the flags given on the command line.
  cvhnn::ActivationSpec override(const cvhnn::ActivationSpec& base) const {
    ActivationFlags merged;
    merged.kind = options[0]->count() ? kind : std::string(cvhnn::to_string(base.kind()));
    merged.K = options[1]->count() ? K : base.K();
    merged.Q = options[2]->count() ? Q : base.Q();
    merged.R = options[3]->count() ? R : base.R();
    merged.boundary_epsilon = options[4]->count() ? boundary_epsilon : base.boundary_epsilon();
    return merged.spec();
  }

  std::vector<const CLI::Option*> options;
};

cvhnn::NetworkModel load_model_or_throw(const std::string& path) {
  try {
    return cvhnn::load_model(path);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("failed writing " + path.string());
}

cvhnn::StateVector read_initial_state(const std::string& path, const cvhnn::ActivationSpec& spec,
                                      std::size_t n) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open initial state file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  if (!doc.is_array() || doc.size() != n) {
    throw InputError("initial state must be an array of " + std::to_string(n) + " [re, im] pairs");
  }
  cvhnn::StateVector state;
  for (const auto& v : doc) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw InputError("initial state entries must be [re, im] number pairs");
    }
    const auto code = cvhnn::quantize(spec, {v[0].get<double>(), v[1].get<double>()});
    if (!code) throw InputError("initial state entry lies where the activation is undefined");
    state.push_back(*code);
  }
  return state;
}

cvhnn::OrderPolicy parse_order(const std::string& name) {
  return name == "random" ? cvhnn::OrderPolicy::RandomPermutation : cvhnn::OrderPolicy::Cyclic;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Complex-valued Hopfield networks with phase and magnitude quantization.\n"
      "Exit codes: 0 ok, 1 input/output error, 2 usage error, 3 validation failed."};
  app.require_subcommand(1);

  // gen-weights
  auto* gen = app.add_subcommand("gen-weights", "Write a random Hermitian network model (JSON)");
  std::size_t gen_n = 10;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  ActivationFlags gen_act;
  gen->add_option("--n", gen_n, "Neuron count")->check(kAtLeastOne)->capture_default_str();
  gen->add_option("--seed", gen_seed, "Weight seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output model path")->required();
  gen_act.add_to(*gen, false);

  // run
  auto* run = app.add_subcommand("run", "Run the dynamics of a stored model");
  std::string run_model;
  ActivationFlags run_act;
  std::string run_mode = "serial";
  std::string run_order = "cyclic";
  std::uint64_t run_order_seed = 0;
  std::size_t run_sweeps = 5;
  std::uint64_t run_state_seed = 2;
  std::string run_init;
  std::string run_trace;
  run->add_option("--model", run_model, "Model JSON path")->required();
  run_act.add_to(*run, true);
  run->add_option("--mode", run_mode, "serial or parallel")
      ->check(CLI::IsMember({"serial", "parallel"}))
      ->capture_default_str();
  run->add_option("--order", run_order, "Serial order: cyclic or random")
      ->check(CLI::IsMember({"cyclic", "random"}))
      ->capture_default_str();
  run->add_option("--order-seed", run_order_seed, "Seed for random serial order")->capture_default_str();
  run->add_option("--sweeps", run_sweeps, "Serial sweeps / parallel steps budget")
      ->check(kAtLeastOne)
      ->capture_default_str();
  auto* seed_opt = run->add_option("--state-seed", run_state_seed, "Seed for the sampled initial state")
                       ->capture_default_str();
  run->add_option("--init", run_init,
                  "JSON file of [re, im] points; the activation is applied to each")
      ->excludes(seed_opt);
  run->add_option("--trace", run_trace, "Write the energy trace CSV here");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Energy-descent experiment on a random Hermitian network");
  cvhnn::ExperimentConfig exp_cfg;
  ActivationFlags exp_act;
  std::string exp_mode = "serial";
  std::string exp_order = "cyclic";
  std::optional<double> exp_disk;
  std::string exp_out = "experiment_out";
  exp_act.add_to(*exp, false);
  exp->add_option("--n", exp_cfg.n, "Neuron count")->check(kAtLeastOne)->capture_default_str();
  exp->add_option("--trials", exp_cfg.trials, "Initial states")->check(kAtLeastOne)->capture_default_str();
  exp->add_option("--sweeps", exp_cfg.sweeps, "Serial sweeps / parallel steps per trial")
      ->check(kAtLeastOne)
      ->capture_default_str();
  exp->add_option("--mode", exp_mode, "serial or parallel")
      ->check(CLI::IsMember({"serial", "parallel"}))
      ->capture_default_str();
  exp->add_option("--order", exp_order, "Serial order: cyclic or random")
      ->check(CLI::IsMember({"cyclic", "random"}))
      ->capture_default_str();
  exp->add_option("--weight-seed", exp_cfg.weight_seed, "Weight seed")->capture_default_str();
  exp->add_option("--state-seed", exp_cfg.state_seed, "Initial-state seed")->capture_default_str();
  exp->add_option("--rect-min", exp_cfg.rect_min, "CoCeil sampling rectangle lower bound")->capture_default_str();
  exp->add_option("--rect-max", exp_cfg.rect_max, "CoCeil sampling rectangle upper bound")->capture_default_str();
  exp->add_option("--disk-radius", exp_disk, "CoSign sampling radius (default Q*R)")
      ->check(CLI::PositiveNumber);
  exp->add_option("--out-dir", exp_out, "Directory for report.json, trace.csv, energy.svg")
      ->capture_default_str();

  // validate
  auto* val = app.add_subcommand("validate", "Check the Hermitian weight conditions of a model");
  std::string val_model;
  val->add_option("--model", val_model, "Model JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) {
      const cvhnn::NetworkModel model(cvhnn::random_hermitian({gen_n, gen_seed}), gen_act.spec());
      write_text(gen_out, cvhnn::dump_model(model));
      return kExitOk;
    }

    if (*run) {
      cvhnn::NetworkModel model = load_model_or_throw(run_model);
      if (run_act.any_given()) model.activation = run_act.override(model.activation);
      const cvhnn::Network network(model);

      cvhnn::StateVector initial;
      if (!run_init.empty()) {
        initial = read_initial_state(run_init, model.activation, model.size());
      } else {
        cvhnn::ExperimentConfig sampling;
        sampling.n = model.size();
        sampling.activation = model.activation;
        cvhnn::Rng rng(run_state_seed);
        initial = cvhnn::sample_initial(sampling, rng);
      }

      const cvhnn::RunOptions options{cvhnn::parse_update_mode(run_mode), parse_order(run_order),
                                      run_order_seed, run_sweeps};
      const auto record = network.run(initial, options);

      if (!run_trace.empty()) {
        std::ostringstream csv;
        csv << "trial,update_index,neuron,energy\n";
        cvhnn::write_trace_rows(csv, record, 0);
        write_text(run_trace, csv.str());
      }

      json out = cvhnn::verdict_to_json(record.verdict);
      out["mode"] = run_mode;
      out["sweeps"] = record.sweeps;
      out["updates"] = record.steps.back().update;
      out["final_state"] = cvhnn::state_to_json(model.activation, record.final_state());
      out["final_energy"] = record.steps.back().energy ? json(*record.steps.back().energy) : json(nullptr);
      std::cout << out.dump() << '\n';
      return kExitOk;
    }

    if (*exp) {
      exp_cfg.activation = exp_act.spec();
      exp_cfg.mode = cvhnn::parse_update_mode(exp_mode);
      exp_cfg.order = parse_order(exp_order);
      exp_cfg.disk_radius = exp_disk;
      try {
        exp_cfg.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const auto report = cvhnn::run_experiment(exp_cfg);

      std::error_code ec;
      fs::create_directories(exp_out, ec);
      if (ec) throw InputError("cannot create output directory " + exp_out + ": " + ec.message());
      const fs::path dir(exp_out);

      std::ostringstream csv;
      cvhnn::write_trace_csv(csv, report);
      write_text(dir / "trace.csv", csv.str());
      std::ostringstream svg;
      cvhnn::write_energy_svg(svg, report);
      write_text(dir / "energy.svg", svg.str());
      write_text(dir / "report.json",
                 cvhnn::report_to_json(report, "trace.csv", "energy.svg").dump(2) + "\n");

      std::cout << "converged " << report.summary.converged << "/" << exp_cfg.trials
                << ", cycles " << report.summary.cycles << ", unresolved "
                << report.summary.unresolved << ", max energy increase "
                << cvhnn::format_double(report.summary.max_energy_increase) << '\n';
      return kExitOk;
    }

    if (*val) {
      const auto model = load_model_or_throw(val_model);
      const auto report = model.validate_hermitian();
      std::cout << "hermitian: " << (report.is_hermitian ? "yes" : "no") << '\n'
                << "diagonal real and non-negative: " << (report.diagonal_real_nonneg ? "yes" : "no")
                << '\n'
                << "max violation: " << cvhnn::format_double(report.max_violation) << '\n';
      return report.is_hermitian && report.diagonal_real_nonneg ? kExitOk : kExitValidation;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitUsage;
}
