#pragma once

#include "stresskit/graphs.hpp"
#include "stresskit/linalg.hpp"

namespace stresskit {

/// A graph together with one point of R^d per vertex (coords is n x d).
class Framework {
 public:
  Framework() = default;
  /// Throws InvalidInput on shape mismatch or non-finite coordinates.
  Framework(Graph graph, int dim, Matrix coords);

  const Graph& graph() const { return graph_; }
  int dim() const { return dim_; }
  int num_vertices() const { return graph_.num_vertices(); }
  const Matrix& coords() const { return coords_; }
  Vector point(int i) const { return coords_.row(i).transpose(); }

 private:
  Graph graph_;
  int dim_ = 0;
  Matrix coords_;
};

/// Rows (p_i; 1) stacked into an n x (d+1) matrix.
Matrix homogeneous(const Matrix& coords);

int affine_span_dim(const Matrix& coords, const TolerancePolicy& policy = {});

/// One row per edge e_ij = p_j - p_i, in sorted edge order.
Matrix edge_directions(const Framework& f);

/// m x dn; vertex i occupies columns [i*d, (i+1)*d).
Matrix rigidity_matrix(const Framework& f);

/// Throws SpanDeficient if the coordinates do not affinely span R^d.
bool infinitesimally_rigid(const Framework& f, const TolerancePolicy& policy = {});

IndependenceCheck affine_general_position_check(const Matrix& coords, const TolerancePolicy& policy = {});
bool affine_general_position(const Matrix& coords, const TolerancePolicy& policy = {});

/// Every closed vertex neighbourhood affinely spans R^d.
bool neighborhood_spans(const Framework& f, const TolerancePolicy& policy = {});

/// m x d(d+1)/2 matrix of monomials e_a e_b, (a,b) lexicographic with a <= b.
Matrix conic_monomials(const Framework& f);

/// True iff a nonzero quadric vanishes on every edge direction.
bool on_conic_at_infinity(const Framework& f, const TolerancePolicy& policy = {});

int maxwell_index(const Graph& g, int d);

inline int trivial_motion_count(int d) { return d * (d + 1) / 2; }

/// Coordinates with i.i.d. standard normal entries.
Framework random_framework(const Graph& g, int d, Rng& rng);

}  // namespace stresskit
