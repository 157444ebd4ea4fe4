// Deterministic text output: every float is printed with "%.12e" and JSON
// objects are emitted with sorted keys, so reports are byte-stable.
#pragma once

#include <nlohmann/json.hpp>

#include <string>

namespace qale {

std::string format_double(double x);

/// JSON text with sorted keys, two-space indent and "%.12e" floats.
/// Non-finite floats become null.
std::string dump_json(const nlohmann::json& j);

}  // namespace qale
