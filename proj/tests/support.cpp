#include "support.hpp"

#include <cmath>
#include <numbers>
#include <queue>

namespace stresskit::testing {

Matrix unit_square() {
  Matrix p(4, 2);
  p << 0, 0, 1, 0, 0, 1, 1, 1;
  return p;
}

Matrix hexagon_on_circle() {
  Matrix p(6, 2);
  for (int k = 0; k < 6; ++k) {
    const double t = k * std::numbers::pi / 3.0;
    p(k, 0) = std::cos(t);
    p(k, 1) = std::sin(t);
  }
  return p;
}

Matrix k4_square_stress_matrix() {
  Vector u(4);
  u << 1, -1, -1, 1;
  return u * u.transpose();
}

bool gstress_by_column_enumeration(const Matrix& omega, int d, const TolerancePolicy& policy) {
  const int n = static_cast<int>(omega.rows());
  const int r = n - d - 1;
  if (r < 1 || numeric_rank(omega, policy) != r) return false;
  bool all = true;
  for_each_subset(n, r, [&](const std::vector<int>& s) {
    Matrix cols(n, r);
    for (int k = 0; k < r; ++k) cols.col(k) = omega.col(s[static_cast<std::size_t>(k)]);
    all = numeric_rank(cols, policy) == r;
    return all;
  });
  return all;
}

bool affine_general_position_by_differences(const Matrix& coords, const TolerancePolicy& policy) {
  const int n = static_cast<int>(coords.rows());
  const int d = static_cast<int>(coords.cols());
  for (int k = 2; k <= std::min(n, d + 1); ++k) {
    bool ok = true;
    for_each_subset(n, k, [&](const std::vector<int>& s) {
      Matrix diffs(k - 1, d);
      for (int a = 1; a < k; ++a) diffs.row(a - 1) = coords.row(s[static_cast<std::size_t>(a)]) - coords.row(s[0]);
      ok = numeric_rank(diffs, policy) == k - 1;
      return ok;
    });
    if (!ok) return false;
  }
  return true;
}

bool connected_without(const Graph& g, const std::vector<int>& removed) {
  const int n = g.num_vertices();
  std::vector<bool> gone(static_cast<std::size_t>(n), false);
  for (int v : removed) gone[static_cast<std::size_t>(v)] = true;
  int start = -1;
  int alive = 0;
  for (int v = 0; v < n; ++v) {
    if (!gone[static_cast<std::size_t>(v)]) {
      ++alive;
      if (start < 0) start = v;
    }
  }
  if (alive <= 1) return true;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::queue<int> q;
  q.push(start);
  seen[static_cast<std::size_t>(start)] = true;
  int reached = 1;
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    for (int y : g.neighbors(x)) {
      if (!gone[static_cast<std::size_t>(y)] && !seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        ++reached;
        q.push(y);
      }
    }
  }
  return reached == alive;
}

int vertex_connectivity_by_removal(const Graph& g) {
  const int n = g.num_vertices();
  for (int k = 0; k < n - 1; ++k) {
    bool disconnects = false;
    for_each_subset(n, k, [&](const std::vector<int>& s) {
      disconnects = !connected_without(g, s);
      return !disconnects;
    });
    if (disconnects) return k;
  }
  return n - 1;
}

Matrix trivial_motions(const Matrix& coords) {
  const auto n = coords.rows();
  const auto d = coords.cols();
  Matrix motions = Matrix::Zero(n * d, d * (d + 1) / 2);
  Eigen::Index col = 0;
  for (Eigen::Index a = 0; a < d; ++a, ++col)
    for (Eigen::Index i = 0; i < n; ++i) motions(i * d + a, col) = 1.0;
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = a + 1; b < d; ++b, ++col) {
      for (Eigen::Index i = 0; i < n; ++i) {
        motions(i * d + a, col) = -coords(i, b);
        motions(i * d + b, col) = coords(i, a);
      }
    }
  }
  return motions;
}

Matrix rigidity_matrix_by_rows(const Framework& f) {
  const int d = f.dim();
  const auto& edges = f.graph().edges();
  Matrix r = Matrix::Zero(static_cast<Eigen::Index>(edges.size()), d * f.num_vertices());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    for (int a = 0; a < d; ++a) {
      const double delta = f.coords()(edges[k].u, a) - f.coords()(edges[k].v, a);
      r(static_cast<Eigen::Index>(k), edges[k].u * d + a) = delta;
      r(static_cast<Eigen::Index>(k), edges[k].v * d + a) = -delta;
    }
  }
  return r;
}

std::vector<GraphCase> builtin_cases() {
  return {
      {"k4", builtin::by_name("k4"), 2},
      {"w5", builtin::by_name("w5"), 2},
      {"k33", builtin::by_name("k33"), 2},
      {"prism3", builtin::by_name("prism3"), 2},
      {"cycle4", builtin::by_name("cycle4"), 1},
      {"cycle5", builtin::by_name("cycle5"), 1},
      {"path3", builtin::by_name("path3"), 1},
  };
}

}  // namespace stresskit::testing
