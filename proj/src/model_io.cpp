#include "cvhnn/model_io.hpp"

#include <fstream>
#include <sstream>

namespace cvhnn {

using nlohmann::json;

namespace {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& v, const char* what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ModelFormatError(std::string(what) + " entries must be [re, im] number pairs");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

template <typename T>
T required(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ModelFormatError(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ModelFormatError(std::string("field '") + key + "': " + e.what());
  }
}

int required_int(const json& doc, const char* key) {
  if (!doc.at(key).is_number_integer()) {
    throw ModelFormatError(std::string("field '") + key + "' must be an integer");
  }
  return required<int>(doc, key);
}

}  // namespace

json activation_to_json(const ActivationSpec& spec) {
  return {{"kind", std::string(to_string(spec.kind()))},
          {"K", spec.K()},
          {"Q", spec.Q()},
          {"R", spec.R()},
          {"boundary_epsilon", spec.boundary_epsilon()}};
}

ActivationSpec activation_from_json(const json& doc) {
  if (!doc.is_object()) throw ModelFormatError("activation must be an object");
  const auto kind_name = required<std::string>(doc, "kind");
  const auto K = doc.contains("K") ? required_int(doc, "K") : 1;
  const auto Q = doc.contains("Q") ? required_int(doc, "Q") : 1;
  const auto R = doc.contains("R") ? required<double>(doc, "R") : 1.0;
  const auto eps = doc.contains("boundary_epsilon") ? required<double>(doc, "boundary_epsilon") : 0.0;
  try {
    return ActivationSpec(parse_activation_kind(kind_name), K, Q, R, eps);
  } catch (const std::invalid_argument& e) {
    throw ModelFormatError(std::string("activation: ") + e.what());
  }
}

json model_to_json(const NetworkModel& model) {
  const std::size_t n = model.size();
  json rows = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j) row.push_back(complex_to_json(model.weights(i, j)));
    rows.push_back(std::move(row));
  }
  json thresholds = json::array();
  for (const auto& t : model.thresholds) thresholds.push_back(complex_to_json(t));

  json doc = json::object();
  doc["n"] = n;
  doc["activation"] = activation_to_json(model.activation);
  doc["weights"] = std::move(rows);
  doc["thresholds"] = std::move(thresholds);
  return doc;
}

NetworkModel model_from_json(const json& doc) {
  if (!doc.is_object()) throw ModelFormatError("model document must be a JSON object");
  const auto n_signed = required<long long>(doc, "n");
  if (n_signed < 1) throw ModelFormatError("n must be >= 1");
  const auto n = static_cast<std::size_t>(n_signed);
  if (!doc.contains("activation")) throw ModelFormatError("missing field 'activation'");
  const ActivationSpec activation = activation_from_json(doc.at("activation"));

  if (!doc.contains("weights") || !doc.at("weights").is_array()) {
    throw ModelFormatError("missing or non-array field 'weights'");
  }
  const json& rows = doc.at("weights");
  if (rows.size() != n) throw ModelFormatError("weights must have n rows");
  ComplexMatrix w(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) {
      throw ModelFormatError("weights row " + std::to_string(i) + " must have n entries");
    }
    for (std::size_t j = 0; j < n; ++j) w(i, j) = complex_from_json(rows[i][j], "weights");
  }

  std::vector<Complex> thresholds(n);
  if (doc.contains("thresholds")) {
    const json& t = doc.at("thresholds");
    if (!t.is_array() || t.size() != n) throw ModelFormatError("thresholds must have n entries");
    for (std::size_t i = 0; i < n; ++i) thresholds[i] = complex_from_json(t[i], "thresholds");
  }
  return NetworkModel(std::move(w), std::move(thresholds), activation);
}

std::string dump_model(const NetworkModel& model) { return model_to_json(model).dump() + "\n"; }

NetworkModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ModelFormatError(path.string() + ": " + e.what());
  }
  return model_from_json(doc);
}

void save_model(const std::filesystem::path& path, const NetworkModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write model file " + path.string());
  out << dump_model(model);
  if (!out) throw std::runtime_error("failed writing model file " + path.string());
}

}  // namespace cvhnn
