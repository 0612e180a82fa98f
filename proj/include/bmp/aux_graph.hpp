#pragma once

// Auxiliary graph of a timetable.
//
// Vertices are (team, slot) for slots 0..2n-3 (all slots but the last).
// Three edge families:
//   horizontal  (t,s-1)-(t,s)                    consecutive cells of one team
//   same-slot   (a,s)-(b,s)     a meets b at s,  s <= 2n-3
//   shifted     (a,s-1)-(b,s-1) a meets b at s,  1 <= s <= 2n-2
// The shifted family includes the matches of the final slot.

#include <array>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bmp/graph.hpp"
#include "bmp/timetable.hpp"

namespace bmp {

enum class EdgeClass : std::uint8_t { kHorizontal, kSameSlot, kShifted };

inline const char* edge_class_name(EdgeClass c) {
  switch (c) {
    case EdgeClass::kHorizontal: return "E_H";
    case EdgeClass::kSameSlot: return "E_0";
    case EdgeClass::kShifted: return "E_1";
  }
  return "?";
}

struct AuxEdge {
  Vertex u;  // u < v
  Vertex v;
  EdgeClass cls;
};

class AuxGraph {
 public:
  AuxGraph(int num_teams, std::vector<AuxEdge> edges)
      : num_teams_(num_teams), graph_(num_teams * (num_teams - 2)), edges_(std::move(edges)) {
    for (const auto& e : edges_) {
      if (!graph_.add_edge(e.u, e.v)) throw std::logic_error("AuxGraph: parallel edge");
    }
  }

  int num_teams() const { return num_teams_; }
  int num_reduced_slots() const { return num_teams_ - 2; }
  int num_vertices() const { return graph_.num_vertices(); }

  Vertex vertex(Team t, Slot s) const { return t * num_reduced_slots() + s; }
  Team team_of(Vertex v) const { return v / num_reduced_slots(); }
  Slot slot_of(Vertex v) const { return v % num_reduced_slots(); }

  const Graph& graph() const { return graph_; }
  const std::vector<AuxEdge>& edges() const { return edges_; }

  int count(EdgeClass c) const {
    int k = 0;
    for (const auto& e : edges_) k += e.cls == c;
    return k;
  }

 private:
  int num_teams_;
  Graph graph_;
  std::vector<AuxEdge> edges_;
};

inline AuxGraph build_aux_graph(const Timetable& tt) {
  require_valid(tt);
  const int teams = tt.num_teams();
  const int reduced = teams - 2;
  auto id = [reduced](Team t, Slot s) { return t * reduced + s; };
  auto edge = [](Vertex a, Vertex b, EdgeClass c) {
    return a < b ? AuxEdge{a, b, c} : AuxEdge{b, a, c};
  };

  std::vector<AuxEdge> edges;
  for (Team t = 0; t < teams; ++t) {
    for (Slot s = 1; s < reduced; ++s) edges.push_back(edge(id(t, s - 1), id(t, s), EdgeClass::kHorizontal));
  }
  for (Slot s = 0; s < reduced; ++s) {
    for (Team t = 0; t < teams; ++t) {
      const Team o = tt.opponent(t, s);
      if (t < o) edges.push_back(edge(id(t, s), id(o, s), EdgeClass::kSameSlot));
    }
  }
  for (Slot s = 1; s < tt.num_slots(); ++s) {
    for (Team t = 0; t < teams; ++t) {
      const Team o = tt.opponent(t, s);
      if (t < o) edges.push_back(edge(id(t, s - 1), id(o, s - 1), EdgeClass::kShifted));
    }
  }
  return AuxGraph(teams, std::move(edges));
}

/// Neighbours of (t, s) in the auxiliary graph, computed from the timetable
/// without materialising the graph.
inline std::vector<std::pair<Team, Slot>> aux_neighbors(const Timetable& tt, Team t, Slot s) {
  const int reduced = tt.num_teams() - 2;
  std::vector<std::pair<Team, Slot>> out;
  if (s > 0) out.emplace_back(t, s - 1);
  if (s + 1 < reduced) out.emplace_back(t, s + 1);
  out.emplace_back(tt.opponent(t, s), s);
  out.emplace_back(tt.opponent(t, s + 1), s);
  return out;
}

/// The 4-cycle (first,slot-1) (first,slot) (second,slot) (second,slot-1)
/// spanned by a match at `slot`, 1 <= slot <= 2n-3. first < second.
struct RectangularCycle {
  Team first;
  Team second;
  Slot slot;

  std::array<std::pair<Team, Slot>, 4> cells() const {
    return {{{first, slot - 1}, {first, slot}, {second, slot}, {second, slot - 1}}};
  }

  friend bool operator==(const RectangularCycle&, const RectangularCycle&) = default;
};

/// One cycle per match at slots 1..2n-3, ordered by slot then smaller team.
inline std::vector<RectangularCycle> rectangular_cycles(const Timetable& tt) {
  std::vector<RectangularCycle> out;
  const int reduced = tt.num_teams() - 2;
  for (Slot s = 1; s < reduced; ++s) {
    for (Team t = 0; t < tt.num_teams(); ++t) {
      const Team o = tt.opponent(t, s);
      if (t < o) out.push_back({t, o, s});
    }
  }
  return out;
}

/// Graphviz description. Nodes are named "t_s" with 1-based labels; the edge
/// family is carried in a `class` attribute.
inline void emit_dot(std::ostream& os, const AuxGraph& g) {
  os << "graph aux {\n";
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const int t = g.team_of(v) + 1;
    const int s = g.slot_of(v) + 1;
    os << "  \"" << t << '_' << s << "\" [label=\"(" << t << ',' << s << ")\"];\n";
  }
  for (const auto& e : g.edges()) {
    os << "  \"" << g.team_of(e.u) + 1 << '_' << g.slot_of(e.u) + 1 << "\" -- \"" << g.team_of(e.v) + 1
       << '_' << g.slot_of(e.v) + 1 << "\" [class=\"" << edge_class_name(e.cls) << "\"];\n";
  }
  os << "}\n";
}

inline std::string emit_dot(const AuxGraph& g) {
  std::ostringstream os;
  emit_dot(os, g);
  return os.str();
}

}  // namespace bmp
