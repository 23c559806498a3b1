#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cvhnn/dynamics.hpp"
#include "cvhnn/harness.hpp"

namespace cvhnn {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

nlohmann::json verdict_to_json(const Verdict& verdict);
/// [[re, im], ...] values of the state.
nlohmann::json state_to_json(const ActivationSpec& spec, const StateVector& state);

/// Header `trial,update_index,neuron,energy`, then one row per trajectory
/// entry. update_index 0 is the initial state and leaves `neuron` empty;
/// parallel steps write `all`. Undefined energies are left empty.
void write_trace_csv(std::ostream& out, const ExperimentReport& report);

/// Rows of one trajectory in the trace format, without the header.
void write_trace_rows(std::ostream& out, const TrajectoryRecord& trajectory, std::size_t trial);

/// Config echo, per-trial verdicts and final states, summary, and the names
/// of the companion trace and chart files.
nlohmann::json report_to_json(const ExperimentReport& report, std::string_view trace_file,
                              std::string_view chart_file);

/// Line chart of energy against update index, one polyline per trial.
void write_energy_svg(std::ostream& out, const ExperimentReport& report);

nlohmann::json conjecture_to_json(const ConjectureReport& report);

}  // namespace cvhnn
