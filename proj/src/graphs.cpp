#include "stresskit/graphs.hpp"

#include "stresskit/errors.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <regex>

namespace stresskit {

Graph::Graph(int num_vertices, const std::vector<std::pair<int, int>>& edges) : n_(num_vertices) {
  if (num_vertices < 0) throw Error(ErrorKind::InvalidInput, "negative vertex count");
  const auto n = static_cast<std::size_t>(num_vertices);
  index_.assign(n * n, -1);
  adjacency_.assign(n, {});
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n_ || b >= n_) {
      throw Error(ErrorKind::InvalidInput,
                  "edge endpoint out of range: {" + std::to_string(a) + "," + std::to_string(b) + "}");
    }
    if (a == b) throw Error(ErrorKind::InvalidInput, "self-loop at vertex " + std::to_string(a));
    edges_.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw Error(ErrorKind::InvalidInput, "duplicate edge");
  }
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto u = static_cast<std::size_t>(edges_[k].u);
    const auto v = static_cast<std::size_t>(edges_[k].v);
    index_[u * n + v] = index_[v * n + u] = static_cast<int>(k);
    adjacency_[u].push_back(edges_[k].v);
    adjacency_[v].push_back(edges_[k].u);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
}

bool Graph::has_edge(int i, int j) const { return edge_index(i, j) >= 0; }

int Graph::edge_index(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) return -1;
  return index_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)];
}

Graph Graph::induced(const std::vector<int>& vertices) const {
  std::vector<std::pair<int, int>> sub;
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      if (has_edge(vertices[a], vertices[b])) sub.emplace_back(static_cast<int>(a), static_cast<int>(b));
  return Graph(static_cast<int>(vertices.size()), sub);
}

namespace {

// Unit-capacity flow network with every vertex split into in/out halves, so
// that an s-t max flow counts internally vertex-disjoint paths.
class SplitFlowNetwork {
 public:
  explicit SplitFlowNetwork(const Graph& g) : n_(g.num_vertices()) {
    head_.assign(static_cast<std::size_t>(2 * n_), -1);
    for (int v = 0; v < n_; ++v) add_arc(in(v), out(v), 1);
    for (const Edge& e : g.edges()) {
      add_arc(out(e.u), in(e.v), n_);
      add_arc(out(e.v), in(e.u), n_);
    }
  }

  // Max flow from s to t (s, t non-adjacent), stopping once `limit` is reached.
  int max_flow(int s, int t, int limit) {
    for (std::size_t a = 0; a < cap_.size(); ++a) flow_[a] = 0;
    const int source = out(s);
    const int sink = in(t);
    int total = 0;
    std::vector<int> parent_arc(static_cast<std::size_t>(2 * n_));
    while (total < limit) {
      std::fill(parent_arc.begin(), parent_arc.end(), -1);
      std::queue<int> frontier;
      frontier.push(source);
      parent_arc[static_cast<std::size_t>(source)] = -2;
      while (!frontier.empty() && parent_arc[static_cast<std::size_t>(sink)] == -1) {
        const int x = frontier.front();
        frontier.pop();
        for (int a = head_[static_cast<std::size_t>(x)]; a >= 0; a = next_[static_cast<std::size_t>(a)]) {
          const int y = to_[static_cast<std::size_t>(a)];
          if (parent_arc[static_cast<std::size_t>(y)] == -1 && residual(a) > 0) {
            parent_arc[static_cast<std::size_t>(y)] = a;
            frontier.push(y);
          }
        }
      }
      if (parent_arc[static_cast<std::size_t>(sink)] == -1) break;
      for (int y = sink; y != source;) {
        const int a = parent_arc[static_cast<std::size_t>(y)];
        flow_[static_cast<std::size_t>(a)] += 1;
        flow_[static_cast<std::size_t>(a ^ 1)] -= 1;
        y = to_[static_cast<std::size_t>(a ^ 1)];
      }
      ++total;
    }
    return total;
  }

 private:
  int in(int v) const { return 2 * v; }
  int out(int v) const { return 2 * v + 1; }
  int residual(int a) const { return cap_[static_cast<std::size_t>(a)] - flow_[static_cast<std::size_t>(a)]; }

  void add_arc(int from, int to, int capacity) {
    push(from, to, capacity);
    push(to, from, 0);
  }
  void push(int from, int to, int capacity) {
    to_.push_back(to);
    cap_.push_back(capacity);
    flow_.push_back(0);
    next_.push_back(head_[static_cast<std::size_t>(from)]);
    head_[static_cast<std::size_t>(from)] = static_cast<int>(to_.size()) - 1;
  }

  int n_;
  std::vector<int> head_, next_, to_, cap_, flow_;
};

}  // namespace

int vertex_connectivity(const Graph& g) {
  const int n = g.num_vertices();
  if (n < 2) throw Error(ErrorKind::InvalidInput, "vertex connectivity needs at least 2 vertices");
  SplitFlowNetwork net(g);
  int best = n - 1;
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      if (g.has_edge(s, t)) continue;
      best = std::min(best, net.max_flow(s, t, best));
      if (best == 0) return 0;
    }
  }
  return best;
}

namespace {

bool extend_clique(const Graph& g, int k, std::vector<int>& chosen, const std::vector<int>& candidates) {
  if (static_cast<int>(chosen.size()) == k) return true;
  const int need = k - static_cast<int>(chosen.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (static_cast<int>(candidates.size() - c) < need) return false;
    const int v = candidates[c];
    std::vector<int> next;
    for (std::size_t r = c + 1; r < candidates.size(); ++r) {
      if (g.has_edge(v, candidates[r])) next.push_back(candidates[r]);
    }
    if (static_cast<int>(next.size()) + 1 < need) continue;
    chosen.push_back(v);
    if (extend_clique(g, k, chosen, next)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> find_clique(const Graph& g, int k) {
  if (k < 1 || k > g.num_vertices()) {
    throw Error(ErrorKind::InvalidInput, "clique size must lie in [1, n]");
  }
  std::vector<int> candidates(static_cast<std::size_t>(g.num_vertices()));
  for (int v = 0; v < g.num_vertices(); ++v) candidates[static_cast<std::size_t>(v)] = v;
  std::vector<int> chosen;
  if (extend_clique(g, k, chosen, candidates)) return chosen;
  return std::nullopt;
}

std::vector<Edge> non_edges(const Graph& g) {
  std::vector<Edge> out;
  for (int i = 0; i < g.num_vertices(); ++i)
    for (int j = i + 1; j < g.num_vertices(); ++j)
      if (!g.has_edge(i, j)) out.push_back({i, j});
  return out;
}

namespace builtin {

Graph complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

Graph cycle(int n) {
  if (n < 3) throw Error(ErrorKind::InvalidInput, "cycle needs at least 3 vertices");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

Graph path(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "path needs at least 1 vertex");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

Graph wheel(int rim) {
  if (rim < 3) throw Error(ErrorKind::InvalidInput, "wheel rim needs at least 3 vertices");
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= rim; ++i) {
    e.emplace_back(0, i);
    e.emplace_back(i, i % rim + 1);
  }
  return Graph(rim + 1, e);
}

Graph complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return Graph(a + b, e);
}

Graph prism(int k) {
  if (k < 3) throw Error(ErrorKind::InvalidInput, "prism needs k >= 3");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < k; ++i) {
    e.emplace_back(i, (i + 1) % k);
    e.emplace_back(k + i, k + (i + 1) % k);
    e.emplace_back(i, i + k);
  }
  return Graph(2 * k, e);
}

Graph by_name(const std::string& name) {
  std::smatch m;
  auto num = [&](int idx) { return std::stoi(m[idx].str()); };
  if (name == "k33") return complete_bipartite(3, 3);
  if (std::regex_match(name, m, std::regex(R"(k(\d+),(\d+))"))) return complete_bipartite(num(1), num(2));
  if (std::regex_match(name, m, std::regex(R"(k(\d+))"))) return complete(num(1));
  if (std::regex_match(name, m, std::regex(R"(w(\d+))"))) return wheel(num(1));
  if (std::regex_match(name, m, std::regex(R"(prism(\d+))"))) return prism(num(1));
  if (std::regex_match(name, m, std::regex(R"(cycle(\d+))"))) return cycle(num(1));
  if (std::regex_match(name, m, std::regex(R"(path(\d+))"))) return path(num(1));
  throw Error(ErrorKind::InvalidInput, "unknown builtin graph '" + name + "'");
}

}  // namespace builtin

}  // namespace stresskit
