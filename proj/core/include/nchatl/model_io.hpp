// JSON reading and writing for models and norms.
//
// Model file:
//   { "agents": 10, "propositions": ["p1"],
//     "states": [ { "id": "q0", "label": ["p1"], "actions": 2,
//                   "transitions": {
//                     "table": [ {"profile": [8,2], "to": "q1"} ],
//                     "rules": [ {"guards": [{"action":1,"min":8,"max":9}],
//                                 "to": "q1"} ],
//                     "default": "q0" } } ] }
// A state gives either "table" or "rules" (or neither plus "default").
//
// Norm file:
//   { "rules": [ {"state": "q0", "agents": [9, "3-5"], "forbid": [2]} ] }
// Multiple rules for the same (state, agent) union their forbid sets.

#ifndef NCHATL_MODEL_IO_HPP
#define NCHATL_MODEL_IO_HPP

#include <stdexcept>
#include <string>

#include "nchatl/model.hpp"

namespace nchatl {

// Raised for malformed documents: syntax errors, missing or mistyped
// fields, and unresolvable state references.
struct LoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Model load_model(const std::string& path);
Model parse_model(const std::string& text);
std::string model_to_json(const Model& model);

NormativeSystem load_norm(const std::string& path, const Model& model);
NormativeSystem parse_norm(const std::string& text, const Model& model);
std::string norm_to_json(const NormativeSystem& norm, const Model& model);

}  // namespace nchatl

#endif
