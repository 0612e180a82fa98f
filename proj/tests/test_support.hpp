#pragma once

// Shared helpers for the test suites: fixture loading, independent oracles
// and random instance generators.

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bmp/bmp.hpp"

namespace bmp::testing {

inline std::string fixture_path(const std::string& name) { return std::string(BMP_FIXTURE_DIR) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline Timetable table1() { return parse_timetable(read_fixture("table1.csv")); }
inline Timetable table8() { return parse_timetable(read_fixture("table8.csv")); }
inline HaAssignment assignment_fixture(const std::string& name) { return parse_assignment(read_fixture(name)); }
inline OctMap octmap_fixture(const std::string& name) { return parse_octmap(read_fixture(name)); }

/// Plain enumeration of all 2^(matches) orientations, no pruning. Kept
/// separate from min_breaks_bruteforce so the two can check each other.
inline int enumerate_min_breaks(const Timetable& tt) {
  std::vector<std::pair<Team, Team>> pairs;
  std::vector<Slot> slot_of;
  for (Slot s = 0; s < tt.num_slots(); ++s) {
    for (Team t = 0; t < tt.num_teams(); ++t) {
      if (t < tt.opponent(t, s)) {
        pairs.emplace_back(t, tt.opponent(t, s));
        slot_of.push_back(s);
      }
    }
  }
  const int m = static_cast<int>(pairs.size());
  if (m > 26) throw std::invalid_argument("enumerate_min_breaks: too many matches");
  int best = 1 << 30;
  HaAssignment z(tt.num_teams(), tt.num_slots(), Venue::kHome);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    for (int i = 0; i < m; ++i) {
      const bool flip = (mask >> i) & 1;
      z.set(pairs[i].first, slot_of[i], flip ? Venue::kAway : Venue::kHome);
      z.set(pairs[i].second, slot_of[i], flip ? Venue::kHome : Venue::kAway);
    }
    best = std::min(best, count_breaks(z).total);
  }
  return best;
}

/// A random (not necessarily minimal) transversal: vertices in random order
/// are kept while the kept set stays bipartite, and each kept vertex is
/// additionally dropped with probability `extra`.
inline Transversal random_transversal(const Graph& g, std::mt19937_64& rng, double extra = 0.15) {
  const int n = g.num_vertices();
  std::vector<Vertex> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<char> removed(n, 1);
  std::bernoulli_distribution drop(extra);
  for (Vertex v : order) {
    if (drop(rng)) continue;
    removed[v] = 0;
    if (!two_color(g, removed)) removed[v] = 1;
  }
  Transversal tv;
  for (Vertex v = 0; v < n; ++v) {
    if (removed[v]) tv.vertices.push_back(v);
  }
  return tv;
}

/// Swaps labels 1 and 2 on a random subset of the components left after
/// deleting the zero cells, giving other valid OCT-maps with the same zeros.
inline OctMap random_component_swaps(const AuxGraph& g, OctMap a, std::mt19937_64& rng) {
  const int n = g.num_vertices();
  std::vector<int> comp(n, -1);
  int next = 0;
  for (Vertex root = 0; root < n; ++root) {
    if (comp[root] >= 0 || a.at(g.team_of(root), g.slot_of(root)) == 0) continue;
    std::vector<Vertex> stack{root};
    comp[root] = next;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex v : g.graph().neighbors(u)) {
        if (comp[v] < 0 && a.at(g.team_of(v), g.slot_of(v)) != 0) {
          comp[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  std::vector<char> swap(next);
  for (auto& s : swap) s = static_cast<char>(rng() & 1);
  for (Vertex v = 0; v < n; ++v) {
    const int label = a.at(g.team_of(v), g.slot_of(v));
    if (label != 0 && swap[comp[v]]) a.set(g.team_of(v), g.slot_of(v), 3 - label);
  }
  return a;
}

/// Alternates between circle-method and random 1-factorization schedules.
inline Timetable random_timetable(int teams, std::uint64_t seed) {
  return seed % 2 == 0 ? generate_circle(teams, seed) : generate_random(teams, seed);
}

}  // namespace bmp::testing
