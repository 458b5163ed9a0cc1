#pragma once

// Observable-set spec files (JSON, UTF-8).
//
//   {
//     "dimension": 2,
//     "observables": [
//       {"name": "sz", "prior": 0.5, "effects": [[[[1,0],[0,0]], [[0,0],[0,0]]],
//                                                [[[0,0],[0,0]], [[0,0],[1,0]]]]},
//       {"name": "sx", "bloch": [1, 0, 0]}
//     ],
//     "task": {"mode": "pd", "shots": 2, "targets": ["sz"]}
//   }
//
// Complex entries are [re, im] pairs (a bare number is read as real);
// matrices are row-major nested arrays. "bloch" is accepted only for
// dimension 2. Priors are all given or all omitted (uniform). "outcomes"
// optionally labels the effects of an observable.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "povm_discrim/unambiguous.hpp"

namespace povm_discrim::cli {

// Throws Error(ParseError) for malformed documents and invalid tasks,
// Error(InvalidBloch) for Bloch vectors longer than 1.
TaskSpec parse_spec(const nlohmann::json& doc);
TaskSpec load_spec(const std::filesystem::path& path);

nlohmann::json to_json(const TaskSpec& task);
nlohmann::json to_json(const Operator& op);
nlohmann::json to_json(const StateVector& psi);

}  // namespace povm_discrim::cli
