// Run reports: named pass/fail checks plus metrics, serialized as
// deterministic JSON.
#pragma once

#include <nlohmann/json.hpp>

#include <string>

namespace qale {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportSchemaVersion = 1;

class RunReport {
 public:
  explicit RunReport(std::string command);

  void set_config(const std::string& name, const std::string& source_text);
  void set_seed(std::uint64_t seed);

  /// Adds or replaces a check. `detail` is stored alongside the verdict.
  void check(const std::string& name, bool pass, nlohmann::json detail = nlohmann::json::object());
  void metric(const std::string& name, nlohmann::json value);
  void artifact(const std::string& name, const std::string& path);
  /// Free-text notice that does not affect the verdict.
  void flag(const std::string& message);
  /// Merges another report's checks and metrics under `prefix.`.
  void absorb(const std::string& prefix, const RunReport& other);

  bool all_pass() const;
  const nlohmann::json& checks() const { return checks_; }
  const nlohmann::json& metrics() const { return metrics_; }
  const nlohmann::json& flags() const { return flags_; }
  nlohmann::json to_json() const;

 private:
  std::string command_;
  nlohmann::json config_ = nullptr;
  nlohmann::json seed_ = nullptr;
  nlohmann::json checks_ = nlohmann::json::object();
  nlohmann::json metrics_ = nlohmann::json::object();
  nlohmann::json artifacts_ = nlohmann::json::object();
  nlohmann::json flags_ = nlohmann::json::array();
};

}  // namespace qale
