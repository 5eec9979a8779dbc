#include "trendlab/generator_json.hpp"

#include <stdexcept>

namespace trendlab::sim {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& why) {
  throw std::invalid_argument("generator spec: field '" + field + "' " + why);
}

double require_number(const json& j, const std::string& field) {
  if (!j.contains(field)) field_error(field, "is missing");
  if (!j[field].is_number()) field_error(field, "must be a number");
  return j[field].get<double>();
}

int require_int(const json& j, const std::string& field) {
  if (!j.contains(field)) field_error(field, "is missing");
  if (!j[field].is_number_integer()) field_error(field, "must be an integer");
  return j[field].get<int>();
}

std::vector<double> optional_number_array(const json& j, const std::string& field) {
  if (!j.contains(field)) return {};
  if (!j[field].is_array()) field_error(field, "must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j[field]) {
    if (!v.is_number()) field_error(field, "must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

GeneratorSpec generator_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("generator spec: document must be a JSON object");
  }
  if (!j.contains("type") || !j["type"].is_string()) {
    field_error("type", "is missing or not a string");
  }
  const std::string type = j["type"].get<std::string>();
  if (type == "arma") {
    ArmaSpec spec;
    spec.intercept = j.contains("phi0") ? require_number(j, "phi0") : 0.0;
    spec.ar = optional_number_array(j, "phi");
    spec.ma = optional_number_array(j, "theta");
    spec.noise_variance = require_number(j, "sigma2_eps");
    if (!(spec.noise_variance > 0.0)) field_error("sigma2_eps", "must be > 0");
    return spec;
  }
  if (type == "osc") {
    OscSpec spec;
    spec.drift = require_number(j, "mu");
    spec.amplitude = require_number(j, "A");
    spec.period = require_int(j, "T");
    if (!j.contains("noise") || !j["noise"].is_object()) {
      field_error("noise", "is missing or not an object");
    }
    const json& noise = j["noise"];
    if (!noise.contains("type") || !noise["type"].is_string()) {
      field_error("noise.type", "is missing or not a string");
    }
    const std::string ntype = noise["type"].get<std::string>();
    spec.noise_sigma = require_number(noise, "sigma");
    if (ntype == "ma") {
      if (!noise.contains("targets") || !noise["targets"].is_array()) {
        field_error("noise.targets", "is missing or not an array");
      }
      for (const auto& t : noise["targets"]) {
        if (!t.is_object()) field_error("noise.targets", "entries must be objects");
        NoiseTarget target;
        target.lag = require_int(t, "lag");
        target.autocorr = require_number(t, "rho");
        spec.noise_targets.push_back(target);
      }
    } else if (ntype != "iid") {
      field_error("noise.type", "must be 'iid' or 'ma'");
    }
    validate_spec(spec);
    return spec;
  }
  field_error("type", "must be 'arma' or 'osc'");
}

nlohmann::json generator_to_json(const GeneratorSpec& spec) {
  json j;
  if (std::holds_alternative<ArmaSpec>(spec)) {
    const ArmaSpec& a = std::get<ArmaSpec>(spec);
    j["type"] = "arma";
    j["phi0"] = a.intercept;
    j["phi"] = a.ar;
    j["theta"] = a.ma;
    j["sigma2_eps"] = a.noise_variance;
  } else {
    const OscSpec& o = std::get<OscSpec>(spec);
    j["type"] = "osc";
    j["mu"] = o.drift;
    j["A"] = o.amplitude;
    j["T"] = o.period;
    json noise;
    noise["sigma"] = o.noise_sigma;
    if (o.noise_targets.empty()) {
      noise["type"] = "iid";
    } else {
      noise["type"] = "ma";
      json targets = json::array();
      for (const NoiseTarget& t : o.noise_targets) {
        targets.push_back({{"lag", t.lag}, {"rho", t.autocorr}});
      }
      noise["targets"] = targets;
    }
    j["noise"] = noise;
  }
  return j;
}

}  // namespace trendlab::sim
