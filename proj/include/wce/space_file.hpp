#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "wce/scenarios.hpp"

namespace wce {

/// Malformed or schema-violating space description.
class SpaceFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a JSON space description:
///
///   {
///     "name":   "optional identifier",
///     "points": [ {"weight": 0.5, "label": [0.25]}, ... ],
///     "atoms":  [ [0, 2], [1], ... ],
///     "u":      {"values": [[re, im], ...]}  or  {"builtin": "exp_label0"}
///   }
///
/// Builtins: exp_label0 (exp of the first label coordinate), identity_label0
/// (the first label coordinate), sign_alternating ((-1)^i). Atoms must
/// partition the point indices exactly.
scenarios::Scenario parse_space_description(const std::string& text);

scenarios::Scenario load_space_file(const std::filesystem::path& path);

}  // namespace wce
