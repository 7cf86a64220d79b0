#pragma once

// Config-driven experiment runner behind the command-line tool: config
// loading (JSON, or a TOML subset, detected by extension), family/kernel
// construction, the fixed verifier registry, and deterministic CSV/JSON
// artifact emission.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sphmult/kernels.hpp"
#include "sphmult/multipliers.hpp"

namespace sphmult {

// Usage/config problems map to exit code 2; tolerance violations to 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

nlohmann::json default_config();

/// Reads .json or .toml (flat sections, scalar/array values) into one tree.
nlohmann::json load_config_file(const std::string& path);
nlohmann::json parse_toml_subset(const std::string& text);

/// Deep-merges overlay onto base (objects recursively, scalars replaced).
nlohmann::json merge_config(nlohmann::json base, const nlohmann::json& overlay);

/// Shortest round-trip decimal.
std::string format_double(double v);
/// Fixed 17-significant-digit form (multiplier dumps).
std::string format_double_17(double v);

void write_text_atomic(const std::string& path, const std::string& content);

std::unique_ptr<MultiplierFamily> family_from_config(const nlohmann::json& cfg);
KernelFile kernel_from_config(const nlohmann::json& cfg);
std::vector<double> lattice_t_grid(const nlohmann::json& cfg);
std::vector<double> fit_t_grid(const nlohmann::json& cfg);

const std::vector<std::string>& verifier_registry();
const std::vector<std::string>& family_registry();

// Command bodies. Return 0 on pass, 1 on tolerance violation; throw
// ConfigError for anything that should exit 2. Artifacts land in out_dir.
int cmd_multipliers(const nlohmann::json& cfg, const std::string& out_dir);
int cmd_verify(const std::string& check, const nlohmann::json& cfg, const std::string& out_dir);
int cmd_fit_holder(const nlohmann::json& cfg, const std::string& out_dir);
int cmd_eigen(const nlohmann::json& cfg, const std::string& out_dir);

} // namespace sphmult
