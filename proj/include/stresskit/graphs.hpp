#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stresskit {

/// Unordered edge stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on vertices 0..n-1. Edges are kept sorted
/// lexicographically; that order indexes every edge-wise vector in the library.
class Graph {
 public:
  Graph() = default;
  /// Throws InvalidInput on loops, duplicates, or out-of-range endpoints.
  Graph(int num_vertices, const std::vector<std::pair<int, int>>& edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(int i, int j) const;
  /// Position of {i,j} in edges(), or -1.
  int edge_index(int i, int j) const;
  const std::vector<int>& neighbors(int i) const { return adjacency_[static_cast<std::size_t>(i)]; }
  int degree(int i) const { return static_cast<int>(neighbors(i).size()); }

  /// Subgraph induced on the given vertices, relabelled 0..k-1 in the given order.
  Graph induced(const std::vector<int>& vertices) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> index_;  // n*n lookup, -1 for non-edges
};

int vertex_connectivity(const Graph& g);

/// Lexicographically smallest k-clique, if any.
std::optional<std::vector<int>> find_clique(const Graph& g, int k);

std::vector<Edge> non_edges(const Graph& g);

namespace builtin {

Graph complete(int n);
Graph cycle(int n);
Graph path(int n);
/// Hub 0 joined to the cycle 1..rim.
Graph wheel(int rim);
/// Parts {0..a-1} and {a..a+b-1}.
Graph complete_bipartite(int a, int b);
/// Two k-cycles 0..k-1 and k..2k-1 with rungs i -- i+k.
Graph prism(int k);

/// Resolves names such as "k4", "w5", "k33", "prism3", "cycle6", "path3".
/// Throws InvalidInput for unknown names.
Graph by_name(const std::string& name);

}  // namespace builtin

}  // namespace stresskit
