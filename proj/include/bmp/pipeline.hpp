#pragma once

// End-to-end break minimization: auxiliary graph -> minimum odd cycle
// transversal -> OCT-map -> repair -> partial assignment -> completion.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bmp/aux_graph.hpp"
#include "bmp/oct.hpp"
#include "bmp/repair.hpp"
#include "bmp/timetable.hpp"

namespace bmp {

enum class SolverKind { kExact, kBrute, kHeuristic };

inline std::string_view solver_name(SolverKind k) {
  switch (k) {
    case SolverKind::kExact: return "exact";
    case SolverKind::kBrute: return "brute";
    case SolverKind::kHeuristic: return "heuristic";
  }
  return "?";
}

inline std::optional<SolverKind> parse_solver(std::string_view name) {
  if (name == "exact") return SolverKind::kExact;
  if (name == "brute") return SolverKind::kBrute;
  if (name == "heuristic") return SolverKind::kHeuristic;
  return std::nullopt;
}

struct BreakBounds {
  int lower = 0;                   // 2n - 2
  std::optional<int> upper_nm4;    // (n-1)^2, only when 2n is not a multiple of 4
};

inline BreakBounds break_bounds(int num_teams) {
  const int n = num_teams / 2;
  BreakBounds b{2 * n - 2, std::nullopt};
  if (num_teams % 4 != 0) b.upper_nm4 = (n - 1) * (n - 1);
  return b;
}

struct SolveStats {
  std::string solver;
  double elapsed_ms = 0.0;
  std::uint64_t nodes = 0;
  int repair_steps = 0;
  int initial_inconsistent_cycles = 0;
};

struct SolveReport {
  int b_min = 0;     // breaks of the emitted assignment
  int oct_size = 0;  // size of the transversal the assignment came from
  bool optimal = false;
  HaAssignment assignment;
  BreakReport breaks;
  BreakBounds bounds;
  SolveStats stats;
  std::vector<std::string> warnings;
};

struct SolveOptions {
  std::uint64_t seed = 1;  // heuristic only
  bool check_postconditions = true;
};

inline SolveReport solve_bmp(const Timetable& tt, SolverKind solver, const SolveOptions& options = {}) {
  require_valid(tt);
  const auto start = std::chrono::steady_clock::now();

  const AuxGraph graph = build_aux_graph(tt);
  SolverStats oct_stats;
  Transversal tv;
  switch (solver) {
    case SolverKind::kExact: tv = min_oct_exact(graph, &oct_stats); break;
    case SolverKind::kBrute: tv = min_oct_bruteforce(graph, &oct_stats); break;
    case SolverKind::kHeuristic: tv = heuristic_oct_upper_bound(graph, options.seed, &oct_stats); break;
  }

  RepairStats repair_stats;
  const OctMap labels = repair(transversal_to_octmap(graph, tv), tt, &repair_stats, options.check_postconditions);
  HaAssignment z = complete(octmap_to_partial(labels, tt), tt);

  SolveReport r;
  r.breaks = count_breaks(z);
  r.assignment = std::move(z);
  r.b_min = r.breaks.total;
  r.oct_size = tv.size();
  r.optimal = solver != SolverKind::kHeuristic;
  r.bounds = break_bounds(tt.num_teams());
  r.stats.solver = std::string(solver_name(solver));
  r.stats.nodes = oct_stats.nodes;
  r.stats.repair_steps = repair_stats.steps;
  r.stats.initial_inconsistent_cycles = repair_stats.initial_inconsistent;
  r.stats.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (r.optimal && r.b_min != r.oct_size) {
    throw std::logic_error("solve_bmp: break count " + std::to_string(r.b_min) +
                           " differs from transversal size " + std::to_string(r.oct_size));
  }
  if (r.b_min < r.bounds.lower) {
    throw std::logic_error("solve_bmp: break count below the 2n-2 lower bound");
  }
  if (r.optimal && r.bounds.upper_nm4 && r.b_min > *r.bounds.upper_nm4) {
    r.warnings.push_back("optimum " + std::to_string(r.b_min) + " exceeds the (n-1)^2 bound " +
                         std::to_string(*r.bounds.upper_nm4));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Exhaustive break oracle

inline constexpr int kBruteForceMatchLimit = 24;

/// Minimum breaks over all consistent full assignments. Each match gets one
/// of two orientations, so consistency holds by construction. Matches are
/// decided slot by slot with branch and bound on the running break count.
/// Guarded to n(2n-1) <= 24 matches unless `allow_override`.
inline int min_breaks_bruteforce(const Timetable& tt, bool allow_override = false) {
  require_valid(tt);
  const int teams = tt.num_teams();
  const int slots = tt.num_slots();
  const int matches = teams / 2 * slots;
  if (matches > kBruteForceMatchLimit && !allow_override) {
    throw std::invalid_argument("min_breaks_bruteforce: " + std::to_string(matches) +
                                " matches exceeds the limit of " + std::to_string(kBruteForceMatchLimit));
  }

  struct Match {
    Team home_if_zero;
    Team other;
    Slot slot;
  };
  std::vector<Match> order;
  order.reserve(matches);
  for (Slot s = 0; s < slots; ++s) {
    for (Team t = 0; t < teams; ++t) {
      if (t < tt.opponent(t, s)) order.push_back({t, tt.opponent(t, s), s});
    }
  }

  std::vector<std::uint8_t> home(static_cast<std::size_t>(teams) * slots, 0);
  auto at = [&](Team t, Slot s) -> std::uint8_t& { return home[static_cast<std::size_t>(t) * slots + s]; };
  int best = teams * slots + 1;
  const int lower = 2 * (teams / 2) - 2;

  auto search = [&](auto&& self, int i, int breaks) -> void {
    if (breaks >= best) return;
    if (i == matches) {
      best = breaks;
      return;
    }
    const auto& m = order[i];
    for (std::uint8_t orient = 0; orient < 2; ++orient) {
      at(m.home_if_zero, m.slot) = orient == 0;
      at(m.other, m.slot) = orient != 0;
      int added = 0;
      if (m.slot > 0) {
        added += at(m.home_if_zero, m.slot - 1) == at(m.home_if_zero, m.slot);
        added += at(m.other, m.slot - 1) == at(m.other, m.slot);
      }
      self(self, i + 1, breaks + added);
      if (best == lower) return;
    }
  };
  // Mirroring every venue preserves breaks, so the first match is fixed.
  const auto& first = order.front();
  at(first.home_if_zero, first.slot) = 1;
  at(first.other, first.slot) = 0;
  search(search, 1, 0);
  return best;
}

// ---------------------------------------------------------------------------
// Verification

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<Check> checks;
  std::optional<BreakReport> breaks;

  bool ok() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

inline VerificationReport verify(const Timetable& tt, const HaAssignment& z, std::optional<int> claimed = std::nullopt) {
  VerificationReport r;
  if (z.num_teams() != tt.num_teams() || z.num_slots() != tt.num_slots()) {
    r.checks.push_back({"dimensions", false,
                        "assignment is " + std::to_string(z.num_teams()) + "x" + std::to_string(z.num_slots()) +
                            ", timetable is " + std::to_string(tt.num_teams()) + "x" +
                            std::to_string(tt.num_slots())});
    return r;
  }
  r.checks.push_back({"full", z.is_full(), z.is_full() ? "" : "assignment has open '*' cells"});

  const auto conflicts = find_conflicts(z, tt);
  std::string detail;
  for (const auto& c : conflicts) {
    if (!detail.empty()) detail += "; ";
    detail += "slot " + std::to_string(c.slot + 1) + " match (" + std::to_string(c.first + 1) + "," +
              std::to_string(c.second + 1) + "): both " + static_cast<char>(c.venue);
  }
  r.checks.push_back({"consistency", conflicts.empty(), detail});

  if (!z.is_full()) return r;
  r.breaks = count_breaks(z);
  const int total = r.breaks->total;
  if (claimed) {
    r.checks.push_back({"claimed", total == *claimed,
                        "counted " + std::to_string(total) + ", claimed " + std::to_string(*claimed)});
  }
  const auto bounds = break_bounds(tt.num_teams());
  if (conflicts.empty()) {
    r.checks.push_back({"lower_bound", total >= bounds.lower,
                        std::to_string(total) + " >= " + std::to_string(bounds.lower)});
  }
  return r;
}

}  // namespace bmp
