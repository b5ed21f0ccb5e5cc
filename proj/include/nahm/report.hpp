#ifndef NAHM_REPORT_HPP
#define NAHM_REPORT_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace nahm {

// Outcome of one measured check: pass iff residual < tolerance.
struct CheckRecord {
  std::string name;
  double residual = 0;
  double tolerance = 0;
  bool pass = false;
  std::string note;
};

inline CheckRecord make_check(std::string name, double residual, double tolerance, std::string note = {}) {
  return {std::move(name), residual, tolerance, residual < tolerance, std::move(note)};
}

// Structured pass/fail record emitted by every verification entry point.
struct VerificationReport {
  std::string command;
  nlohmann::json metadata = nlohmann::json::object();
  std::vector<CheckRecord> checks;
  std::uint64_t seed = 0;
  unsigned precision_bits = 128;
  double wall_time_s = 0;

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
  }

  void add(CheckRecord c) { checks.push_back(std::move(c)); }

  void merge(const VerificationReport& other) {
    for (const auto& c : other.checks) checks.push_back(c);
  }

  double worst_residual() const {
    double w = 0;
    for (const auto& c : checks) w = std::max(w, c.residual);
    return w;
  }
};

inline nlohmann::json to_json(const CheckRecord& c) {
  nlohmann::json j{{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass}};
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline CheckRecord check_from_json(const nlohmann::json& j) {
  CheckRecord c;
  c.name = j.at("name").get<std::string>();
  c.residual = j.at("residual").get<double>();
  c.tolerance = j.at("tolerance").get<double>();
  c.pass = j.at("pass").get<bool>();
  if (j.contains("note")) c.note = j.at("note").get<std::string>();
  return c;
}

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"command", r.command},     {"metadata", r.metadata},         {"checks", checks},
          {"seed", r.seed},           {"precision_bits", r.precision_bits}, {"wall_time_s", r.wall_time_s},
          {"pass", r.pass()}};
}

inline VerificationReport report_from_json(const nlohmann::json& j) {
  VerificationReport r;
  r.command = j.at("command").get<std::string>();
  r.metadata = j.at("metadata");
  for (const auto& c : j.at("checks")) r.checks.push_back(check_from_json(c));
  r.seed = j.at("seed").get<std::uint64_t>();
  r.precision_bits = j.at("precision_bits").get<unsigned>();
  r.wall_time_s = j.at("wall_time_s").get<double>();
  return r;
}

}  // namespace nahm

#endif  // NAHM_REPORT_HPP
