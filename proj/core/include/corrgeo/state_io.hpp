#pragma once

#include <string>

#include "corrgeo/state.hpp"

namespace corrgeo {

/// Parses a state file. Two layouts are accepted:
///   {"dims": [...], "matrix": {"re": [[...]], "im": [[...]]}}  (row-major)
///   {"family": "bell_diagonal"|"w"|"cluster4"|"mid_counterexample",
///    "params": [...]}
/// The result is validated; errors surface as the usual state exceptions or
/// Error for malformed JSON.
MultipartiteState load_state_json(const std::string& text);

/// Reads and parses a state file from disk.
MultipartiteState load_state_file(const std::string& path);

/// Serializes a state in the explicit dims/matrix layout.
std::string state_to_json(const MultipartiteState& state);

}  // namespace corrgeo
