#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cvhnn/dynamics.hpp"

namespace cvhnn {

/// Malformed or inconsistent model document.
class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Document layout:
// {"n": int,
//  "activation": {"kind": str, "K": int, "Q": int, "R": float, "boundary_epsilon": float},
//  "weights": [[[re, im], ...], ...],   row-major
//  "thresholds": [[re, im], ...]}

nlohmann::json activation_to_json(const ActivationSpec& spec);
ActivationSpec activation_from_json(const nlohmann::json& doc);

nlohmann::json model_to_json(const NetworkModel& model);
/// Throws ModelFormatError on schema or dimension problems.
NetworkModel model_from_json(const nlohmann::json& doc);

/// Serialized text, terminated by a newline. Doubles round-trip exactly.
std::string dump_model(const NetworkModel& model);

/// Throws ModelFormatError on parse failures and std::runtime_error on I/O.
NetworkModel load_model(const std::filesystem::path& path);
void save_model(const std::filesystem::path& path, const NetworkModel& model);

}  // namespace cvhnn
