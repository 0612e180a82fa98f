#pragma once

// Odd cycle transversals of auxiliary graphs, OCT-maps, and the
// translations between OCT-maps and home/away assignments.
//
// An OCT-map labels every vertex 0, 1 or 2 such that the 1-cells and the
// 2-cells are independent sets; its 0-cells are then an odd cycle
// transversal.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bmp/aux_graph.hpp"
#include "bmp/graph.hpp"
#include "bmp/timetable.hpp"

namespace bmp {

/// Vertex set whose removal leaves a bipartite graph. Sorted ascending.
struct Transversal {
  std::vector<Vertex> vertices;

  int size() const { return static_cast<int>(vertices.size()); }
  friend bool operator==(const Transversal&, const Transversal&) = default;
};

struct SolverStats {
  std::uint64_t nodes = 0;  // search nodes / flow computations / restarts
};

/// Team x reduced-slot grid of labels in {0, 1, 2}.
class OctMap {
 public:
  OctMap() = default;
  OctMap(int num_teams, int num_reduced_slots, std::uint8_t fill = 0)
      : num_teams_(num_teams),
        num_slots_(num_reduced_slots),
        labels_(static_cast<std::size_t>(num_teams) * num_reduced_slots, fill) {}

  static OctMap from_rows(const std::vector<std::vector<int>>& rows) {
    if (rows.empty()) return {};
    OctMap a(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int t = 0; t < a.num_teams(); ++t) {
      if (static_cast<int>(rows[t].size()) != a.num_reduced_slots()) {
        throw std::invalid_argument("ragged OCT-map rows");
      }
      for (int s = 0; s < a.num_reduced_slots(); ++s) a.set(t, s, rows[t][s]);
    }
    return a;
  }

  int num_teams() const { return num_teams_; }
  int num_reduced_slots() const { return num_slots_; }

  int at(Team t, Slot s) const { return labels_[index(t, s)]; }
  /// Label of (t, s), or 0 when s lies outside the grid.
  int at_or_zero(Team t, Slot s) const { return s < 0 || s >= num_slots_ ? 0 : at(t, s); }
  void set(Team t, Slot s, int label) {
    if (label < 0 || label > 2) throw std::invalid_argument("OCT-map labels are 0, 1 or 2");
    labels_[index(t, s)] = static_cast<std::uint8_t>(label);
  }

  int zeros() const { return static_cast<int>(std::count(labels_.begin(), labels_.end(), 0)); }

  /// Flat labels in vertex order (team-major).
  std::span<const std::uint8_t> labels() const { return labels_; }

  friend bool operator==(const OctMap&, const OctMap&) = default;

 private:
  std::size_t index(Team t, Slot s) const { return static_cast<std::size_t>(t) * num_slots_ + s; }

  int num_teams_ = 0;
  int num_slots_ = 0;
  std::vector<std::uint8_t> labels_;
};

inline OctMap parse_octmap(std::istream& in) {
  const auto rows = detail::read_grid(in);
  OctMap a(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int t = 0; t < a.num_teams(); ++t) {
    for (int s = 0; s < a.num_reduced_slots(); ++s) {
      const int label = detail::parse_int(rows[t][s], t + 2);
      if (label < 0 || label > 2) {
        throw ParseError("line " + std::to_string(t + 2) + ": OCT-map label must be 0, 1 or 2");
      }
      a.set(t, s, label);
    }
  }
  return a;
}

inline OctMap parse_octmap(std::string_view text) {
  std::istringstream is{std::string(text)};
  return parse_octmap(is);
}

inline void write_octmap(std::ostream& os, const OctMap& a) {
  detail::write_header(os, a.num_reduced_slots());
  for (Team t = 0; t < a.num_teams(); ++t) {
    os << t + 1;
    for (Slot s = 0; s < a.num_reduced_slots(); ++s) os << ',' << a.at(t, s);
    os << '\n';
  }
}

/// True iff no edge joins two 1-cells or two 2-cells.
inline bool labels_are_oct_map(const Graph& g, std::span<const std::uint8_t> labels) {
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    if (labels[u] == 0) continue;
    for (Vertex v : g.neighbors(u)) {
      if (labels[v] == labels[u]) return false;
    }
  }
  return true;
}

inline bool octmap_is_valid(const AuxGraph& g, const OctMap& a) {
  if (a.num_teams() != g.num_teams() || a.num_reduced_slots() != g.num_reduced_slots()) {
    throw std::invalid_argument("OCT-map and graph dimensions differ");
  }
  return labels_are_oct_map(g.graph(), a.labels());
}

// ---------------------------------------------------------------------------
// Exhaustive oracle

inline constexpr int kBruteForceVertexLimit = 32;

/// Smallest transversal by enumerating subsets in order of size, then
/// lexicographically; the first hit is returned.
inline Transversal min_oct_bruteforce(const Graph& g, SolverStats* stats = nullptr) {
  const int n = g.num_vertices();
  if (n > kBruteForceVertexLimit) {
    throw std::invalid_argument("min_oct_bruteforce: " + std::to_string(n) + " vertices exceeds the limit of " +
                                std::to_string(kBruteForceVertexLimit));
  }
  std::uint64_t checked = 0;
  std::vector<char> removed(n, 0);
  for (int k = 0; k <= n; ++k) {
    std::vector<Vertex> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      std::fill(removed.begin(), removed.end(), 0);
      for (Vertex v : pick) removed[v] = 1;
      ++checked;
      if (two_color(g, removed)) {
        if (stats) stats->nodes = checked;
        return Transversal{pick};
      }
      // next k-combination in lexicographic order
      int i = k - 1;
      while (i >= 0 && pick[i] == n - k + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  throw std::logic_error("min_oct_bruteforce: unreachable");
}

// ---------------------------------------------------------------------------
// Iterative compression

namespace detail {

/// Unit-capacity vertex-cut network over the graph induced by the vertices
/// marked active. Vertex u has arcs in(u) -> out(u) of capacity 1; every
/// graph edge contributes uncapacitated out -> in arcs both ways. Sources
/// and sinks are attached implicitly per query.
class VertexCutNetwork {
 public:
  VertexCutNetwork(const Graph& g, const std::vector<char>& active) : nodes_(2 * g.num_vertices()) {
    head_.assign(nodes_, -1);
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
      if (!active[u]) continue;
      add_arc(in(u), out(u), 1);
      for (Vertex v : g.neighbors(u)) {
        if (active[v]) add_arc(out(u), in(v), kInfinite);
      }
    }
    flow_.assign(cap_.size(), 0);
  }

  /// Maximum number of vertex-disjoint paths from a vertex with
  /// `source[u]` to a vertex with `sink[u]`, stopping once it exceeds
  /// `limit`. Terminal vertices themselves may be cut.
  int max_flow(const std::vector<char>& source, const std::vector<char>& sink, int limit) {
    std::fill(flow_.begin(), flow_.end(), 0);
    source_ = &source;
    sink_ = &sink;
    int flow = 0;
    while (flow <= limit && augment()) ++flow;
    return flow;
  }

  /// Vertices on the source side boundary of the last computed cut.
  std::vector<Vertex> min_cut() {
    reachable();
    std::vector<Vertex> cut;
    for (int node = 0; node < nodes_; node += 2) {
      if (seen_[node] && !seen_[node + 1] && head_[node] >= 0) cut.push_back(node / 2);
    }
    return cut;
  }

 private:
  static constexpr int kInfinite = std::numeric_limits<int>::max() / 4;
  static int in(Vertex u) { return 2 * u; }
  static int out(Vertex u) { return 2 * u + 1; }

  void add_arc(int from, int to, int cap) {
    to_.push_back(to);
    cap_.push_back(cap);
    next_.push_back(head_[from]);
    head_[from] = static_cast<int>(to_.size()) - 1;
    to_.push_back(from);
    cap_.push_back(0);
    next_.push_back(head_[to]);
    head_[to] = static_cast<int>(to_.size()) - 1;
  }

  int residual(int arc) const { return cap_[arc] - flow_[arc]; }

  /// BFS from every source in-node; returns the sink out-node reached, or -1.
  int reachable() {
    seen_.assign(nodes_, 0);
    parent_arc_.assign(nodes_, -1);
    queue_.clear();
    for (int node = 0; node < nodes_; node += 2) {
      if ((*source_)[node / 2] && head_[node] >= 0) {
        seen_[node] = 1;
        queue_.push_back(node);
      }
    }
    while (!queue_.empty()) {
      const int node = queue_.front();
      queue_.pop_front();
      if ((node & 1) && (*sink_)[node / 2]) return node;
      for (int arc = head_[node]; arc >= 0; arc = next_[arc]) {
        const int to = to_[arc];
        if (!seen_[to] && residual(arc) > 0) {
          seen_[to] = 1;
          parent_arc_[to] = arc;
          queue_.push_back(to);
        }
      }
    }
    return -1;
  }

  bool augment() {
    int node = reachable();
    if (node < 0) return false;
    while (parent_arc_[node] >= 0) {
      const int arc = parent_arc_[node];
      flow_[arc] += 1;
      flow_[arc ^ 1] -= 1;
      node = to_[arc ^ 1];
    }
    return true;
  }

  int nodes_;
  std::vector<int> head_, to_, next_, cap_, flow_;
  std::vector<char> seen_;
  std::vector<int> parent_arc_;
  std::deque<int> queue_;
  const std::vector<char>* source_ = nullptr;
  const std::vector<char>* sink_ = nullptr;
};

/// Tries to replace the transversal `big` (of the graph induced by `present`)
/// with one smaller by one. Every split of `big` into (deleted, side 1,
/// side 2) is tried; for each, the cheapest set of further deletions is a
/// minimum vertex cut between vertices whose component must keep its
/// 2-coloring and those whose component must flip it.
inline std::optional<std::vector<Vertex>> compress(const Graph& g, const std::vector<char>& present,
                                                   const std::vector<Vertex>& big, SolverStats& stats) {
  const int n = g.num_vertices();
  const int target = static_cast<int>(big.size()) - 1;

  std::vector<char> removed(n, 0), in_big(n, 0);
  for (Vertex u = 0; u < n; ++u) removed[u] = !present[u];
  for (Vertex x : big) removed[x] = in_big[x] = 1;
  const auto color = two_color(g, removed);
  if (!color) throw std::logic_error("compress: input is not a transversal");

  std::vector<char> rest(n, 0);
  for (Vertex u = 0; u < n; ++u) rest[u] = !removed[u];
  VertexCutNetwork network(g, rest);

  enum : std::uint8_t { kDrop = 0, kSide1 = 1, kSide2 = 2 };
  const int m = static_cast<int>(big.size());
  std::vector<std::uint8_t> side(m, kDrop);
  std::vector<char> keep(n, 0), flip(n, 0);

  auto leaf = [&](int dropped) -> std::optional<std::vector<Vertex>> {
    ++stats.nodes;
    std::fill(keep.begin(), keep.end(), 0);
    std::fill(flip.begin(), flip.end(), 0);
    for (int i = 0; i < m; ++i) {
      if (side[i] == kDrop) continue;
      // neighbours of a side-1 vertex must end on side 2 and vice versa
      const int wanted = 3 - side[i];
      for (Vertex u : g.neighbors(big[i])) {
        if (!rest[u]) continue;
        ((*color)[u] == wanted ? keep : flip)[u] = 1;
      }
    }
    const int budget = target - dropped;
    if (network.max_flow(keep, flip, budget) > budget) return std::nullopt;
    std::vector<Vertex> out = network.min_cut();
    for (int i = 0; i < m; ++i) {
      if (side[i] == kDrop) out.push_back(big[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  auto compatible = [&](int i, std::uint8_t s) {
    for (int j = 0; j < i; ++j) {
      if (side[j] == s && g.has_edge(big[i], big[j])) return false;
    }
    return true;
  };

  // Swapping sides 1 and 2 globally gives the same answer, so the first
  // non-dropped vertex always goes to side 1.
  auto search = [&](auto&& self, int i, int dropped, bool any_placed) -> std::optional<std::vector<Vertex>> {
    if (dropped > target) return std::nullopt;
    if (i == m) return leaf(dropped);
    for (std::uint8_t s : {kSide1, kSide2}) {
      if (s == kSide2 && !any_placed) continue;
      if (!compatible(i, s)) continue;
      side[i] = s;
      if (auto r = self(self, i + 1, dropped, true)) return r;
    }
    side[i] = kDrop;
    return self(self, i + 1, dropped + 1, any_placed);
  };
  return search(search, 0, 0, false);
}

}  // namespace detail

/// Exact minimum odd cycle transversal by iterative compression: vertices
/// are added in id order while a minimum transversal of the induced graph
/// is maintained; whenever the new vertex must join it, a compression to the
/// previous size is attempted. Exponential only in the solution size.
inline Transversal min_oct_exact(const Graph& g, SolverStats* stats = nullptr) {
  SolverStats local;
  const int n = g.num_vertices();
  std::vector<char> present(n, 0);
  std::vector<Vertex> best;
  std::vector<char> removed(n, 1);
  for (Vertex v = 0; v < n; ++v) {
    present[v] = 1;
    removed[v] = 0;
    if (two_color(g, removed)) continue;
    best.push_back(v);
    if (auto smaller = detail::compress(g, present, best, local)) best = std::move(*smaller);
    std::fill(removed.begin(), removed.end(), 0);
    for (Vertex u = 0; u < n; ++u) removed[u] = !present[u];
    for (Vertex x : best) removed[x] = 1;
  }
  std::sort(best.begin(), best.end());
  if (stats) *stats = local;
  return Transversal{std::move(best)};
}

// ---------------------------------------------------------------------------
// Heuristic upper bound

/// Randomized greedy bipartization: vertices are coloured in randomized BFS
/// order and evicted when both colours are blocked; a local search then
/// re-inserts evicted vertices, directly or by recolouring the single
/// blocking neighbour. Best of several restarts; deterministic per seed.
inline Transversal heuristic_oct_upper_bound(const Graph& g, std::uint64_t seed, SolverStats* stats = nullptr,
                                             int restarts = 32) {
  const int n = g.num_vertices();
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> best_color;
  int best_evicted = n + 1;

  auto blocked = [&](const std::vector<std::uint8_t>& color, Vertex v, int c, Vertex ignore) {
    int hits = 0;
    for (Vertex u : g.neighbors(v)) hits += u != ignore && color[u] == c;
    return hits;
  };

  for (int round = 0; round < std::max(1, restarts); ++round) {
    std::vector<std::uint8_t> color(n, 0);
    std::vector<char> seen(n, 0);
    std::vector<Vertex> roots(n);
    std::iota(roots.begin(), roots.end(), 0);
    std::shuffle(roots.begin(), roots.end(), rng);
    std::vector<Vertex> order;
    order.reserve(n);
    std::deque<Vertex> queue;
    for (Vertex root : roots) {
      if (seen[root]) continue;
      seen[root] = 1;
      queue.push_back(root);
      while (!queue.empty()) {
        const Vertex u = queue.front();
        queue.pop_front();
        order.push_back(u);
        std::vector<Vertex> next(g.neighbors(u).begin(), g.neighbors(u).end());
        std::shuffle(next.begin(), next.end(), rng);
        for (Vertex v : next) {
          if (!seen[v]) {
            seen[v] = 1;
            queue.push_back(v);
          }
        }
      }
    }

    for (Vertex v : order) {
      const bool can1 = blocked(color, v, 1, -1) == 0;
      const bool can2 = blocked(color, v, 2, -1) == 0;
      if (can1 && can2) {
        color[v] = static_cast<std::uint8_t>(1 + (rng() & 1));
      } else if (can1 || can2) {
        color[v] = can1 ? 1 : 2;
      }
    }

    for (bool improved = true; improved;) {
      improved = false;
      for (Vertex v : order) {
        if (color[v] != 0) continue;
        for (int c = 1; c <= 2 && color[v] == 0; ++c) {
          const int hits = blocked(color, v, c, -1);
          if (hits == 0) {
            color[v] = static_cast<std::uint8_t>(c);
            improved = true;
          } else if (hits == 1) {
            Vertex u = -1;
            for (Vertex w : g.neighbors(v)) {
              if (color[w] == c) u = w;
            }
            if (blocked(color, u, 3 - c, v) == 0) {
              color[u] = static_cast<std::uint8_t>(3 - c);
              color[v] = static_cast<std::uint8_t>(c);
              improved = true;
            }
          }
        }
      }
    }

    const int evicted = static_cast<int>(std::count(color.begin(), color.end(), 0));
    if (evicted < best_evicted) {
      best_evicted = evicted;
      best_color = std::move(color);
    }
  }

  if (stats) stats->nodes = static_cast<std::uint64_t>(std::max(1, restarts));
  Transversal tv;
  for (Vertex v = 0; v < n; ++v) {
    if (best_color[v] == 0) tv.vertices.push_back(v);
  }
  return tv;
}

inline Transversal min_oct_bruteforce(const AuxGraph& g, SolverStats* stats = nullptr) {
  return min_oct_bruteforce(g.graph(), stats);
}
inline Transversal min_oct_exact(const AuxGraph& g, SolverStats* stats = nullptr) {
  return min_oct_exact(g.graph(), stats);
}
inline Transversal heuristic_oct_upper_bound(const AuxGraph& g, std::uint64_t seed, SolverStats* stats = nullptr) {
  return heuristic_oct_upper_bound(g.graph(), seed, stats);
}

// ---------------------------------------------------------------------------
// Translations

/// Labels 0 on the transversal; every remaining component is 2-coloured by
/// BFS from its smallest vertex, which gets label 1.
inline std::vector<std::uint8_t> transversal_labels(const Graph& g, const Transversal& tv) {
  std::vector<char> removed(g.num_vertices(), 0);
  for (Vertex v : tv.vertices) removed.at(v) = 1;
  auto color = two_color(g, removed);
  if (!color) throw std::invalid_argument("transversal_labels: vertex set leaves an odd cycle");
  return std::move(*color);
}

inline OctMap transversal_to_octmap(const AuxGraph& g, const Transversal& tv) {
  const auto labels = transversal_labels(g.graph(), tv);
  OctMap a(g.num_teams(), g.num_reduced_slots());
  for (Vertex v = 0; v < g.num_vertices(); ++v) a.set(g.team_of(v), g.slot_of(v), labels[v]);
  return a;
}

inline Transversal octmap_zeros(const OctMap& a) {
  Transversal tv;
  for (Team t = 0; t < a.num_teams(); ++t) {
    for (Slot s = 0; s < a.num_reduced_slots(); ++s) {
      if (a.at(t, s) == 0) tv.vertices.push_back(t * a.num_reduced_slots() + s);
    }
  }
  return tv;
}

/// Transition labels: 1 for H->A, 2 for A->H, 0 otherwise (including any
/// transition touching '*').
inline OctMap ha_to_octmap(const HaAssignment& z) {
  OctMap a(z.num_teams(), z.num_slots() - 1);
  for (Team t = 0; t < z.num_teams(); ++t) {
    for (Slot s = 0; s + 1 < z.num_slots(); ++s) {
      const Venue now = z.at(t, s);
      const Venue next = z.at(t, s + 1);
      if (now == Venue::kHome && next == Venue::kAway) {
        a.set(t, s, 1);
      } else if (now == Venue::kAway && next == Venue::kHome) {
        a.set(t, s, 2);
      }
    }
  }
  return a;
}

/// Partial assignment implied by an OCT-map: a cell is H when its outgoing
/// transition is 1 or its incoming one is 2, A in the mirrored cases, '*'
/// when neither transition is labelled.
inline HaAssignment octmap_to_partial(const OctMap& a, const Timetable& tt) {
  if (a.num_teams() != tt.num_teams() || a.num_reduced_slots() != tt.num_slots() - 1) {
    throw std::invalid_argument("OCT-map and timetable dimensions differ");
  }
  HaAssignment z(tt.num_teams(), tt.num_slots());
  for (Team t = 0; t < tt.num_teams(); ++t) {
    for (Slot s = 0; s < tt.num_slots(); ++s) {
      const int out = a.at_or_zero(t, s);
      const int in = a.at_or_zero(t, s - 1);
      const bool home = out == 1 || in == 2;
      const bool away = out == 2 || in == 1;
      if (home && away) {
        throw std::invalid_argument("octmap_to_partial: cell (" + std::to_string(t + 1) + "," +
                                    std::to_string(s + 1) + ") is both home and away; not an OCT-map");
      }
      z.set(t, s, home ? Venue::kHome : away ? Venue::kAway : Venue::kOpen);
    }
  }
  return z;
}

}  // namespace bmp
