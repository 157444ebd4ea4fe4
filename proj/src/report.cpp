#include "qale/report.hpp"

#include "qale/config.hpp"

namespace qale {

RunReport::RunReport(std::string command) : command_(std::move(command)) {}

void RunReport::set_config(const std::string& name, const std::string& source_text) {
  config_ = {{"name", name}, {"digest_fnv1a64", hex_digest(source_text)}};
}

void RunReport::set_seed(std::uint64_t seed) { seed_ = seed; }

void RunReport::check(const std::string& name, bool pass, nlohmann::json detail) {
  if (!detail.is_object()) detail = {{"value", detail}};
  detail["pass"] = pass;
  checks_[name] = std::move(detail);
}

void RunReport::metric(const std::string& name, nlohmann::json value) {
  metrics_[name] = std::move(value);
}

void RunReport::artifact(const std::string& name, const std::string& path) {
  artifacts_[name] = path;
}

void RunReport::flag(const std::string& message) { flags_.push_back(message); }

void RunReport::absorb(const std::string& prefix, const RunReport& other) {
  for (auto it = other.checks_.begin(); it != other.checks_.end(); ++it)
    checks_[prefix + "." + it.key()] = it.value();
  for (auto it = other.metrics_.begin(); it != other.metrics_.end(); ++it)
    metrics_[prefix + "." + it.key()] = it.value();
  for (const auto& f : other.flags_) flags_.push_back(prefix + ": " + f.get<std::string>());
}

bool RunReport::all_pass() const {
  for (auto it = checks_.begin(); it != checks_.end(); ++it)
    if (!it.value().at("pass").get<bool>()) return false;
  return true;
}

nlohmann::json RunReport::to_json() const {
  return {{"schema_version", kReportSchemaVersion},
          {"tool_version", kToolVersion},
          {"command", command_},
          {"config", config_},
          {"seed", seed_},
          {"pass", all_pass()},
          {"checks", checks_},
          {"metrics", metrics_},
          {"artifacts", artifacts_},
          {"flags", flags_}};
}

}  // namespace qale
