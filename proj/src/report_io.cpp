#include "cvhnn/report_io.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>

#include "cvhnn/model_io.hpp"

namespace cvhnn {

using nlohmann::json;

std::string format_double(double x) { return json(x).dump(); }

json verdict_to_json(const Verdict& verdict) {
  return {{"verdict", verdict.label()}, {"length", verdict.length}, {"t0", verdict.t0}};
}

json state_to_json(const ActivationSpec& spec, const StateVector& state) {
  json out = json::array();
  for (const auto& code : state) {
    const Complex z = value_of(spec, code);
    out.push_back(json::array({z.real(), z.imag()}));
  }
  return out;
}

void write_trace_rows(std::ostream& out, const TrajectoryRecord& trajectory, std::size_t trial) {
  for (const auto& step : trajectory.steps) {
    out << trial << ',' << step.update << ',';
    if (step.neuron) {
      out << *step.neuron;
    } else if (step.update > 0) {
      out << "all";
    }
    out << ',';
    if (step.energy) out << format_double(*step.energy);
    out << '\n';
  }
}

void write_trace_csv(std::ostream& out, const ExperimentReport& report) {
  out << "trial,update_index,neuron,energy\n";
  for (std::size_t t = 0; t < report.trials.size(); ++t) {
    write_trace_rows(out, report.trials[t].trajectory, t);
  }
}

json report_to_json(const ExperimentReport& report, std::string_view trace_file,
                    std::string_view chart_file) {
  const auto& c = report.config;
  json config = {{"n", c.n},
                 {"activation", activation_to_json(c.activation)},
                 {"trials", c.trials},
                 {"sweeps", c.sweeps},
                 {"mode", std::string(to_string(c.mode))},
                 {"order", c.order == OrderPolicy::Cyclic ? "cyclic" : "random"},
                 {"weight_seed", c.weight_seed},
                 {"state_seed", c.state_seed},
                 {"rect_min", c.rect_min},
                 {"rect_max", c.rect_max},
                 {"disk_radius", c.effective_disk_radius()}};

  json trials = json::array();
  for (std::size_t t = 0; t < report.trials.size(); ++t) {
    const auto& trial = report.trials[t];
    const auto& traj = trial.trajectory;
    json entry = verdict_to_json(traj.verdict);
    entry["trial"] = t;
    entry["seed"] = trial.seed;
    entry["sweeps"] = traj.sweeps;
    entry["updates"] = traj.steps.back().update;
    entry["initial_state"] = state_to_json(c.activation, trial.initial);
    entry["final_state"] = state_to_json(c.activation, traj.final_state());
    if (traj.steps.front().energy) {
      entry["initial_energy"] = *traj.steps.front().energy;
      entry["final_energy"] = *traj.steps.back().energy;
    }
    entry["max_energy_increase"] = traj.max_energy_increase();
    trials.push_back(std::move(entry));
  }

  const auto& s = report.summary;
  return {{"config", std::move(config)},
          {"trials", std::move(trials)},
          {"summary",
           {{"converged", s.converged},
            {"cycles", s.cycles},
            {"unresolved", s.unresolved},
            {"max_energy_increase", s.max_energy_increase}}},
          {"files", {{"trace", std::string(trace_file)}, {"chart", std::string(chart_file)}}}};
}

namespace {

std::string fixed2(double x) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.2f", x);
  return buf.data();
}

}  // namespace

void write_energy_svg(std::ostream& out, const ExperimentReport& report) {
  constexpr double width = 720, height = 440;
  constexpr double left = 70, right = 20, top = 30, bottom = 50;
  constexpr std::array<const char*, 8> palette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

  double x_max = 1.0;
  double y_min = std::numeric_limits<double>::infinity();
  double y_max = -std::numeric_limits<double>::infinity();
  for (const auto& trial : report.trials) {
    for (const auto& step : trial.trajectory.steps) {
      if (!step.energy) continue;
      x_max = std::max(x_max, static_cast<double>(step.update));
      y_min = std::min(y_min, *step.energy);
      y_max = std::max(y_max, *step.energy);
    }
  }
  if (!(y_min <= y_max)) {
    y_min = -1.0;
    y_max = 1.0;
  }
  if (y_max - y_min < 1e-12) {
    y_min -= 1.0;
    y_max += 1.0;
  }
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  auto px = [&](double x) { return left + plot_w * x / x_max; };
  auto py = [&](double y) { return top + plot_h * (y_max - y) / (y_max - y_min); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << fixed2(left) << "\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\">"
      << "Energy, " << to_string(report.config.activation.kind()) << " network, N = "
      << report.config.n << "</text>\n";
  out << "<line x1=\"" << fixed2(left) << "\" y1=\"" << fixed2(top + plot_h) << "\" x2=\""
      << fixed2(left + plot_w) << "\" y2=\"" << fixed2(top + plot_h) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << fixed2(left) << "\" y1=\"" << fixed2(top) << "\" x2=\"" << fixed2(left)
      << "\" y2=\"" << fixed2(top + plot_h) << "\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 4; ++k) {
    const double y = y_min + (y_max - y_min) * k / 4.0;
    out << "<text x=\"" << fixed2(left - 6) << "\" y=\"" << fixed2(py(y) + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << fixed2(y)
        << "</text>\n";
    const double x = x_max * k / 4.0;
    out << "<text x=\"" << fixed2(px(x)) << "\" y=\"" << fixed2(top + plot_h + 16)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << fixed2(x)
        << "</text>\n";
  }
  out << "<text x=\"" << fixed2(left + plot_w / 2) << "\" y=\"" << fixed2(height - 10)
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">update</text>\n";

  for (std::size_t t = 0; t < report.trials.size(); ++t) {
    out << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" << palette[t % palette.size()]
        << "\" points=\"";
    bool first = true;
    for (const auto& step : report.trials[t].trajectory.steps) {
      if (!step.energy) continue;
      if (!first) out << ' ';
      out << fixed2(px(static_cast<double>(step.update))) << ',' << fixed2(py(*step.energy));
      first = false;
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

json conjecture_to_json(const ConjectureReport& report) {
  auto tally_json = [](const ModeTally& m) {
    json cycles = json::object();
    for (const auto& [length, count] : m.cycles) cycles[std::to_string(length)] = count;
    return json{{"converged", m.converged},
                {"cycles", std::move(cycles)},
                {"unresolved", m.unresolved},
                {"max_energy_increase", m.max_energy_increase},
                {"runs_with_energy_increase", m.runs_with_energy_increase}};
  };
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"kind", std::string(to_string(row.kind))},
                    {"serial", tally_json(row.serial)},
                    {"parallel", tally_json(row.parallel)}});
  }
  json counter = json::array();
  for (const auto& c : report.counterexamples) {
    json entry = verdict_to_json(c.verdict);
    entry["kind"] = std::string(to_string(c.kind));
    entry["mode"] = std::string(to_string(c.mode));
    entry["trial"] = c.trial;
    entry["n"] = c.n;
    entry["K"] = c.K;
    counter.push_back(std::move(entry));
  }
  json kinds = json::array();
  for (auto k : report.config.kinds) kinds.push_back(std::string(to_string(k)));
  return {{"config",
           {{"kinds", std::move(kinds)},
            {"sizes", report.config.sizes},
            {"resolution_factors", report.config.resolution_factors},
            {"Q", report.config.Q},
            {"R", report.config.R},
            {"trials", report.config.trials},
            {"max_sweeps", report.config.max_sweeps},
            {"seed", report.config.seed},
            {"tolerance", report.config.tolerance}}},
          {"rows", std::move(rows)},
          {"counterexamples", std::move(counter)}};
}

}  // namespace cvhnn
