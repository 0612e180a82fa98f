#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bmp {

using Vertex = int;

/// Simple undirected graph with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int num_vertices) : adj_(num_vertices) {}

  int num_vertices() const { return static_cast<int>(adj_.size()); }
  int num_edges() const { return num_edges_; }

  /// Returns false if the edge already exists. Loops are rejected.
  bool add_edge(Vertex u, Vertex v) {
    if (u == v) throw std::invalid_argument("Graph::add_edge: loops are not allowed");
    if (has_edge(u, v)) return false;
    insert_sorted(adj_[u], v);
    insert_sorted(adj_[v], u);
    ++num_edges_;
    return true;
  }

  bool has_edge(Vertex u, Vertex v) const {
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

  int max_degree() const {
    int d = 0;
    for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
    return d;
  }

  /// Edges as (smaller, larger) pairs in lexicographic order.
  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(num_edges_);
    for (Vertex u = 0; u < num_vertices(); ++u) {
      for (Vertex v : adj_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

 private:
  static void insert_sorted(std::vector<Vertex>& list, Vertex v) {
    list.insert(std::upper_bound(list.begin(), list.end(), v), v);
  }

  std::vector<std::vector<Vertex>> adj_;
  int num_edges_ = 0;
};

/// BFS 2-coloring of the graph with `removed` vertices deleted. Colors are 1
/// and 2; removed vertices get 0. Each component is rooted at its smallest
/// vertex, which receives color 1. Returns nullopt if an odd cycle survives.
inline std::optional<std::vector<std::uint8_t>> two_color(const Graph& g,
                                                          const std::vector<char>& removed) {
  const int n = g.num_vertices();
  std::vector<std::uint8_t> color(n, 0);
  std::vector<char> seen(n, 0);
  std::deque<Vertex> queue;
  for (Vertex root = 0; root < n; ++root) {
    if (removed[root] || seen[root]) continue;
    seen[root] = 1;
    color[root] = 1;
    queue.push_back(root);
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop_front();
      for (Vertex v : g.neighbors(u)) {
        if (removed[v]) continue;
        if (!seen[v]) {
          seen[v] = 1;
          color[v] = static_cast<std::uint8_t>(3 - color[u]);
          queue.push_back(v);
        } else if (color[v] == color[u]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

inline bool is_bipartite(const Graph& g) {
  return two_color(g, std::vector<char>(g.num_vertices(), 0)).has_value();
}

/// True iff deleting `vertices` leaves a bipartite graph.
inline bool is_odd_cycle_transversal(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<char> removed(g.num_vertices(), 0);
  for (Vertex v : vertices) removed.at(v) = 1;
  return two_color(g, removed).has_value();
}

}  // namespace bmp
