#pragma once

#include "json.hpp"
#include "trendlab/simulate.hpp"

namespace trendlab::sim {

// Generator spec JSON schema (field names follow the model symbols):
//
//   ARMA:        {"type": "arma", "phi0": 0.9, "phi": [0.95, -0.6],
//                 "theta": [1.4, 0.5], "sigma2_eps": 0.3}
//   Oscillating: {"type": "osc", "mu": 0.075, "A": 0.15, "T": 180,
//                 "noise": {"type": "iid", "sigma": 0.15}}
//                noise may instead be {"type": "ma", "sigma": ...,
//                 "targets": [{"lag": 1, "rho": 0.05}, ...]}
//
// Errors name the offending field.

GeneratorSpec generator_from_json(const nlohmann::json& j);
nlohmann::json generator_to_json(const GeneratorSpec& spec);

}  // namespace trendlab::sim
