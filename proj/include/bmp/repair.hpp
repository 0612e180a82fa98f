#pragma once

// Repair of OCT-maps whose implied assignment clashes with the timetable.
//
// A clash at a match of slot s >= 1 shows up on the rectangular cycle of
// that match as one of four label patterns. Each repair step removes the
// earliest such cycle by moving one 0 within the cycle's neighbourhood,
// keeping the map an OCT-map with the same number of zeros.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bmp/aux_graph.hpp"
#include "bmp/oct.hpp"
#include "bmp/timetable.hpp"

namespace bmp {

/// Row-major 2x2 labels of a cycle:
/// (first,s-1) (first,s) / (second,s-1) (second,s).
using CycleLabels = std::array<int, 4>;

inline CycleLabels cycle_labels(const OctMap& a, const RectangularCycle& c) {
  return {a.at(c.first, c.slot - 1), a.at(c.first, c.slot), a.at(c.second, c.slot - 1), a.at(c.second, c.slot)};
}

inline constexpr std::array<CycleLabels, 4> kInconsistentPatterns{{
    {2, 0, 0, 1},
    {1, 0, 0, 2},
    {0, 1, 2, 0},
    {0, 2, 1, 0},
}};

/// Index into kInconsistentPatterns, or nullopt when consistent.
inline std::optional<int> inconsistent_pattern(const OctMap& a, const RectangularCycle& c) {
  const auto m = cycle_labels(a, c);
  for (int i = 0; i < static_cast<int>(kInconsistentPatterns.size()); ++i) {
    if (m == kInconsistentPatterns[i]) return i;
  }
  return std::nullopt;
}

inline bool is_consistent_on_cycle(const OctMap& a, const RectangularCycle& c) {
  return !inconsistent_pattern(a, c).has_value();
}

/// True iff no edge of the 4-cycle joins two equal nonzero labels.
inline bool is_locally_bipartite(const OctMap& a, const RectangularCycle& c) {
  const auto cells = c.cells();
  for (int i = 0; i < 4; ++i) {
    const auto [t1, s1] = cells[i];
    const auto [t2, s2] = cells[(i + 1) % 4];
    const int x = a.at(t1, s1);
    if (x != 0 && x == a.at(t2, s2)) return false;
  }
  return true;
}

inline int count_inconsistent_cycles(const OctMap& a, const Timetable& tt) {
  int k = 0;
  for (const auto& c : rectangular_cycles(tt)) k += !is_consistent_on_cycle(a, c);
  return k;
}

/// OCT-map check against the timetable's auxiliary graph, without building it.
inline bool octmap_is_valid(const Timetable& tt, const OctMap& a) {
  for (Team t = 0; t < a.num_teams(); ++t) {
    for (Slot s = 0; s < a.num_reduced_slots(); ++s) {
      const int x = a.at(t, s);
      if (x == 0) continue;
      for (auto [u, r] : aux_neighbors(tt, t, s)) {
        if (a.at(u, r) == x) return false;
      }
    }
  }
  return true;
}

struct InconsistencyRecord {
  RectangularCycle cycle;
  Slot slot;      // the cycle's match slot, >= 1
  Team lead;      // cycle team whose cell at slot-1 is nonzero
  Team trail;     // the other team; nonzero at slot
  Team previous;  // trail's opponent at slot-1
  int pattern;    // index into kInconsistentPatterns
};

/// Earliest inconsistent cycle: smallest slot, then smallest team.
inline std::optional<InconsistencyRecord> find_earliest_inconsistent(const OctMap& a, const Timetable& tt) {
  for (const auto& c : rectangular_cycles(tt)) {
    const auto p = inconsistent_pattern(a, c);
    if (!p) continue;
    const bool first_leads = a.at(c.first, c.slot - 1) != 0;
    const Team lead = first_leads ? c.first : c.second;
    const Team trail = first_leads ? c.second : c.first;
    return InconsistencyRecord{c, c.slot, lead, trail, tt.opponent(trail, c.slot - 1), *p};
  }
  return std::nullopt;
}

/// Removes the inconsistency described by `rec`.
///
/// With x = lead's label at slot-1 and y = trail's label at slot, the two
/// candidate maps are
///   move-lead:  lead@slot-1 := 0, trail@slot-1 := x
///   move-trail: trail@slot-1 := y, trail@slot := 0
/// The choice looks at the three cells around trail@slot-1 that lie on the
/// earlier cycle: u = trail@slot-2, v = previous@slot-1, w = previous@slot-2,
/// read after relabelling so that (x, y) = (1, 2).
inline OctMap repair_step(const OctMap& a, const InconsistencyRecord& rec, const Timetable& tt,
                          bool check_postconditions = true) {
  const Slot s = rec.slot;
  const int x = a.at(rec.lead, s - 1);
  const int y = a.at(rec.trail, s);
  if (x == 0 || y == 0 || x == y || a.at(rec.lead, s) != 0 || a.at(rec.trail, s - 1) != 0) {
    throw std::invalid_argument("repair_step: record does not describe an inconsistent cycle of this map");
  }
  const bool mirrored = x == 2;
  auto normalized = [mirrored](int label) { return mirrored && label != 0 ? 3 - label : label; };
  const int u = normalized(a.at_or_zero(rec.trail, s - 2));
  const int v = normalized(a.at(rec.previous, s - 1));
  const int w = normalized(a.at_or_zero(rec.previous, s - 2));
  const int choice = u != 0 ? 3 - u : v != 0 ? 3 - v : w != 0 ? w : 1;

  OctMap out = a;
  if (choice == 1) {
    out.set(rec.lead, s - 1, 0);
    out.set(rec.trail, s - 1, x);
  } else {
    out.set(rec.trail, s - 1, y);
    out.set(rec.trail, s, 0);
  }

  if (check_postconditions) {
    if (!octmap_is_valid(tt, out)) throw std::logic_error("repair_step: result is not an OCT-map");
    if (out.zeros() != a.zeros()) throw std::logic_error("repair_step: zero count changed");
    if (count_inconsistent_cycles(out, tt) >= count_inconsistent_cycles(a, tt)) {
      throw std::logic_error("repair_step: inconsistent cycle count did not decrease");
    }
  }
  return out;
}

struct RepairStats {
  int initial_inconsistent = 0;
  int steps = 0;
};

/// Repeats repair_step on the earliest inconsistent cycle until none is left.
/// The zero count never changes.
inline OctMap repair(const OctMap& a, const Timetable& tt, RepairStats* stats = nullptr,
                     bool check_postconditions = true) {
  if (a.num_teams() != tt.num_teams() || a.num_reduced_slots() != tt.num_slots() - 1) {
    throw std::invalid_argument("repair: OCT-map and timetable dimensions differ");
  }
  if (!octmap_is_valid(tt, a)) throw std::invalid_argument("repair: input is not an OCT-map");
  RepairStats local;
  local.initial_inconsistent = count_inconsistent_cycles(a, tt);
  OctMap current = a;
  while (auto rec = find_earliest_inconsistent(current, tt)) {
    current = repair_step(current, *rec, tt, check_postconditions);
    if (++local.steps > local.initial_inconsistent) {
      throw std::logic_error("repair: step count exceeds the initial number of inconsistent cycles");
    }
  }
  if (stats) *stats = local;
  return current;
}

}  // namespace bmp
