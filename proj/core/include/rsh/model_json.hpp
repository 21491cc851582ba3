#pragma once

#include "rsh/chain.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

namespace rsh {

using AnyStatusModel = std::variant<StatusModel<double>, StatusModel<Rational>>;

// {"errors": [...], "initial": [...], "transition": [[row-major]...],
//  "numeric_mode": "float64" | "rational"}; rationals are "p/q" strings.
std::string to_json(const StatusModel<double>& model);
std::string to_json(const StatusModel<Rational>& model);

// Throws std::invalid_argument on malformed documents.
AnyStatusModel status_model_from_json(std::string_view text);
AnyStatusModel load_status_model(const std::filesystem::path& path);

}  // namespace rsh
