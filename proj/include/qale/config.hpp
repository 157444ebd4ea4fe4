// Group configuration files (JSON).
//
//   {
//     "name": "c3_z4",
//     "dimension": 3,
//     "generators": [[["-1", "0", "0"], ["0", "i", "0"], ["0", "0", "i"]]],
//     "seed": 0,
//     "eh_a": 1.0,
//     "cutoff_R": 1.0,
//     "expected_strata": 3
//   }
//
// A matrix entry is either a [re, im] pair or one of the tokens
// "0", "1", "-1", "i", "-i", "cis(p/q)", "-cis(p/q)", where
// cis(p/q) = exp(2 pi i p / q), p an integer and 0 < q <= 10^6.
// "expected_strata" is optional: a published lattice size to compare against.
#pragma once

#include "qale/matgroup.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qale {

struct GroupConfig {
  std::string name;
  std::string description;
  int dimension = 0;
  std::vector<ComplexMatrix> generators;
  std::uint64_t seed = 0;
  double eh_a = 1.0;
  double cutoff_R = 1.0;
  std::optional<std::size_t> expected_strata;
  /// Exact bytes of the source text.
  std::string source_text;
};

/// Throws ParseError with line and column for malformed JSON, and with the
/// JSON path of the offending value otherwise. Generators are checked for
/// unitarity (NonUnitaryGenerator).
GroupConfig parse_group_config(const std::string& text);
GroupConfig load_group_config(const std::filesystem::path& path);

/// One matrix entry; `where` names it in error messages.
Complex parse_entry(const nlohmann::json& entry, const std::string& where);

/// 64-bit FNV-1a, printed as 16 hex digits.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex_digest(std::string_view bytes);

/// QALE_SEED from the environment if set, else `config_seed`. Throws
/// ParseError if QALE_SEED is not an unsigned integer.
std::uint64_t effective_seed(std::uint64_t config_seed);

/// Directory holding the bundled example configs.
std::filesystem::path bundled_config_dir();
std::filesystem::path bundled_config(const std::string& name);

}  // namespace qale
