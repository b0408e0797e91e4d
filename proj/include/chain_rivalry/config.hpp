#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "chain_rivalry/model.hpp"

namespace chain_rivalry {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Builds ModelParams from a JSON object with the ModelParams field names.
/// `d`, `subsidy_p2`, `subsidy_p3` default to 0; `d_applies_to` (one of
/// "both", "p2", "p3") defaults to "both". Unknown keys are rejected.
/// Does not check Assumption 1; call validate_params for that.
ModelParams params_from_json_text(const std::string& text);
ModelParams load_params(const std::filesystem::path& path);

/// Compact single-line JSON unless `indent` >= 0.
std::string params_to_json_text(const ModelParams& p, int indent = -1);

}  // namespace chain_rivalry
