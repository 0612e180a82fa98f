#pragma once

// JSON form of SolveReport and VerificationReport. Teams and slots are
// 1-based, as in the CSV files.

#include <nlohmann/json.hpp>

#include "bmp/pipeline.hpp"

namespace bmp {

inline constexpr int kReportSchema = 1;

inline nlohmann::json to_json(const BreakReport& b) {
  nlohmann::json positions = nlohmann::json::array();
  for (auto [t, s] : b.positions) positions.push_back({t + 1, s + 1});
  return {{"total", b.total}, {"positions", positions}};
}

inline nlohmann::json to_json(const SolveReport& r) {
  nlohmann::json bounds = {{"lower", r.bounds.lower}, {"lower_ok", r.b_min >= r.bounds.lower}};
  if (r.bounds.upper_nm4) {
    bounds["upper_nm4"] = *r.bounds.upper_nm4;
    bounds["upper_nm4_ok"] = r.b_min <= *r.bounds.upper_nm4;
  } else {
    bounds["upper_nm4"] = nullptr;
  }
  return {
      {"schema", kReportSchema},
      {"b_min", r.b_min},
      {"oct_size", r.oct_size},
      {"optimal", r.optimal},
      {"teams", r.assignment.num_teams()},
      {"breaks", to_json(r.breaks)},
      {"bounds", bounds},
      {"stats",
       {{"solver", r.stats.solver},
        {"elapsed_ms", r.stats.elapsed_ms},
        {"nodes", r.stats.nodes},
        {"repair_steps", r.stats.repair_steps},
        {"initial_inconsistent_cycles", r.stats.initial_inconsistent_cycles}}},
      {"warnings", r.warnings},
  };
}

inline nlohmann::json to_json(const VerificationReport& v) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : v.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  nlohmann::json out = {{"schema", kReportSchema}, {"ok", v.ok()}, {"checks", checks}};
  if (v.breaks) out["breaks"] = to_json(*v.breaks);
  return out;
}

}  // namespace bmp
