#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "aamr/experiment.hpp"

namespace aamr {

namespace {

using nlohmann::json;

Interval parse_interval(const json& j, const char* key) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument(std::string("config: ") + key + " must be a two-element array");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<double> parse_beta_grid(const json& j) {
  if (j.is_array()) return j.get<std::vector<double>>();
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (k != "min" && k != "max" && k != "step") throw std::invalid_argument("config: unknown beta_grid key '" + k + "'");
    }
    return ExperimentConfig::make_beta_grid(j.at("min").get<double>(), j.at("max").get<double>(),
                                            j.at("step").get<double>());
  }
  throw std::invalid_argument("config: beta_grid must be an array or {min, max, step}");
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");

  static const std::set<std::string> known{"dim",  "constraint_counts", "instances_per_count", "beta_grid",
                                           "lambda", "tol", "max_iter", "seed", "coord_range", "radius_pad"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw std::invalid_argument("config: unknown key '" + key + "'");
  }

  ExperimentConfig c;
  try {
    if (j.contains("dim")) c.dim = j["dim"].get<std::size_t>();
    if (j.contains("constraint_counts")) c.constraint_counts = j["constraint_counts"].get<std::vector<std::size_t>>();
    if (j.contains("instances_per_count")) c.instances_per_count = j["instances_per_count"].get<std::size_t>();
    if (j.contains("beta_grid")) c.beta_grid = parse_beta_grid(j["beta_grid"]);
    if (j.contains("lambda")) c.lambda = j["lambda"].get<double>();
    if (j.contains("tol")) c.tol = j["tol"].get<double>();
    if (j.contains("max_iter")) c.max_iter = j["max_iter"].get<std::size_t>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("coord_range")) c.coord_range = parse_interval(j["coord_range"], "coord_range");
    if (j.contains("radius_pad")) c.radius_pad = parse_interval(j["radius_pad"], "radius_pad");
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const ExperimentConfig& c) {
  json j;
  j["dim"] = c.dim;
  j["constraint_counts"] = c.constraint_counts;
  j["instances_per_count"] = c.instances_per_count;
  j["beta_grid"] = c.beta_grid;
  j["lambda"] = c.lambda;
  j["tol"] = c.tol;
  j["max_iter"] = c.max_iter;
  j["seed"] = c.seed;
  j["coord_range"] = {c.coord_range.lo, c.coord_range.hi};
  j["radius_pad"] = {c.radius_pad.lo, c.radius_pad.hi};
  return j.dump(2) + "\n";
}

}  // namespace aamr
