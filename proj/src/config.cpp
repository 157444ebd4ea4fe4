#include "qale/config.hpp"

#include "qale/error.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>

#ifndef QALE_CONFIG_DIR
#define QALE_CONFIG_DIR "configs"
#endif

namespace qale {

namespace {

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

long long parse_int(const std::string& s, const std::string& where) {
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    fail(ErrorKind::ParseError, where + ": integer out of range in '" + s + "'");
  return v;
}

template <class T>
T field(const nlohmann::json& j, const char* key, const std::string& what) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorKind::ParseError, std::string("/") + key + ": expected " + what);
  }
}

}  // namespace

Complex parse_entry(const nlohmann::json& entry, const std::string& where) {
  if (entry.is_array()) {
    if (entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
      fail(ErrorKind::ParseError, where + ": expected [re, im]");
    return {entry[0].get<double>(), entry[1].get<double>()};
  }
  if (!entry.is_string()) fail(ErrorKind::ParseError, where + ": expected [re, im] or a token");
  const std::string tok = entry.get<std::string>();
  if (tok == "0") return 0.0;
  if (tok == "1") return 1.0;
  if (tok == "-1") return -1.0;
  if (tok == "i") return {0.0, 1.0};
  if (tok == "-i") return {0.0, -1.0};
  static const std::regex cis(R"(^(-?)cis\((-?[0-9]+)/([0-9]+)\)$)");
  std::smatch m;
  if (!std::regex_match(tok, m, cis)) fail(ErrorKind::ParseError, where + ": unknown token '" + tok + "'");
  const long long p = parse_int(m[2].str(), where);
  const long long q = parse_int(m[3].str(), where);
  if (q <= 0 || q > 1000000)
    fail(ErrorKind::ParseError, where + ": cis(p/q) needs 0 < q <= 1000000 in '" + tok + "'");
  // Reduce p mod q first so the angle stays exact for large p.
  const long long r = ((p % q) + q) % q;
  const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / q);
  return m[1].length() ? -z : z;
}

GroupConfig parse_group_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::ParseError, "malformed JSON at " + line_col(text, e.byte));
  }
  if (!j.is_object()) fail(ErrorKind::ParseError, "/: expected an object");

  GroupConfig c;
  c.source_text = text;
  c.name = j.contains("name") ? field<std::string>(j, "name", "a string") : "unnamed";
  if (j.contains("description")) c.description = field<std::string>(j, "description", "a string");
  c.dimension = field<int>(j, "dimension", "a positive integer");
  if (c.dimension < 1) fail(ErrorKind::ParseError, "/dimension: expected a positive integer");
  if (j.contains("seed")) c.seed = field<std::uint64_t>(j, "seed", "an unsigned integer");
  if (j.contains("eh_a")) c.eh_a = field<double>(j, "eh_a", "a number");
  if (j.contains("cutoff_R")) c.cutoff_R = field<double>(j, "cutoff_R", "a number");
  if (j.contains("expected_strata"))
    c.expected_strata = field<std::size_t>(j, "expected_strata", "an unsigned integer");

  if (!j.contains("generators") || !j["generators"].is_array())
    fail(ErrorKind::ParseError, "/generators: expected a list of matrices");
  const auto m = static_cast<std::size_t>(c.dimension);
  const auto& gens = j["generators"];
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const std::string gpath = "/generators/" + std::to_string(g);
    const auto& rows = gens[g];
    if (!rows.is_array() || rows.size() != m)
      fail(ErrorKind::ParseError, gpath + ": expected " + std::to_string(m) + " rows");
    ComplexMatrix mat(c.dimension, c.dimension);
    for (std::size_t r = 0; r < m; ++r) {
      const std::string rpath = gpath + "/" + std::to_string(r);
      if (!rows[r].is_array() || rows[r].size() != m)
        fail(ErrorKind::ParseError, rpath + ": expected " + std::to_string(m) + " entries");
      for (std::size_t col = 0; col < m; ++col)
        mat(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) =
            parse_entry(rows[r][col], rpath + "/" + std::to_string(col));
    }
    if (!is_unitary(mat))
      fail(ErrorKind::NonUnitaryGenerator, gpath + " is not unitary to 1e-10");
    c.generators.push_back(std::move(mat));
  }
  return c;
}

GroupConfig load_group_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::ParseError, "cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_group_config(ss.str());
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex_digest(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::uint64_t effective_seed(std::uint64_t config_seed) {
  const char* env = std::getenv("QALE_SEED");
  if (!env || !*env) return config_seed;
  std::uint64_t v = 0;
  const std::string s(env);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    fail(ErrorKind::ParseError, "QALE_SEED must be an unsigned integer");
  return v;
}

std::filesystem::path bundled_config_dir() { return QALE_CONFIG_DIR; }

std::filesystem::path bundled_config(const std::string& name) {
  return bundled_config_dir() / (name + ".json");
}

}  // namespace qale
