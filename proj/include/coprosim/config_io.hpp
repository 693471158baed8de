#pragma once

#include "coprosim/config.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace coprosim {

// Config documents are JSON objects. Simulation scalars live at the top
// level; "tasks", "population", "curve", "gas" and "auction" hold the nested
// parameter groups. Keys not listed here are rejected.

nlohmann::json config_to_json(SimulationConfig const &config);

/// Missing keys keep their defaults. Throws ConfigError on unknown keys,
/// wrong value types, or a config that fails validation.
SimulationConfig config_from_json(nlohmann::json const &doc);

/// Applies `path=value` where path is dotted ("gas.beta"). The value is read
/// as a JSON literal when it parses as one, else taken as a string.
void apply_override(nlohmann::json &doc, std::string_view assignment);

/// Reads a config file. Throws IoError naming the path if it cannot be read,
/// ConfigError if it does not parse.
nlohmann::json read_config_document(std::filesystem::path const &path);

/// Loads `path` (when nonempty), applies overrides in order, and parses.
/// With `require_seed`, a document without "rng_seed" is a ConfigError.
SimulationConfig load_config(std::filesystem::path const &path,
                             std::vector<std::string> const &overrides, bool require_seed);

}  // namespace coprosim
