#include "stresskit/frameworks.hpp"

#include "stresskit/errors.hpp"

namespace stresskit {

Framework::Framework(Graph graph, int dim, Matrix coords)
    : graph_(std::move(graph)), dim_(dim), coords_(std::move(coords)) {
  if (dim_ < 1) throw Error(ErrorKind::InvalidInput, "dimension must be at least 1");
  if (coords_.rows() != graph_.num_vertices() || coords_.cols() != dim_) {
    throw Error(ErrorKind::InvalidInput,
                "coordinates must be " + std::to_string(graph_.num_vertices()) + " x " +
                    std::to_string(dim_) + ", got " + std::to_string(coords_.rows()) + " x " +
                    std::to_string(coords_.cols()));
  }
  require_finite(coords_, "coordinates");
}

Matrix homogeneous(const Matrix& coords) {
  Matrix h(coords.rows(), coords.cols() + 1);
  h.leftCols(coords.cols()) = coords;
  h.col(coords.cols()).setOnes();
  return h;
}

int affine_span_dim(const Matrix& coords, const TolerancePolicy& policy) {
  if (coords.rows() == 0) return -1;
  return numeric_rank(homogeneous(coords), policy) - 1;
}

Matrix edge_directions(const Framework& f) {
  const auto& edges = f.graph().edges();
  Matrix dirs(static_cast<Eigen::Index>(edges.size()), f.dim());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    dirs.row(static_cast<Eigen::Index>(k)) = f.coords().row(edges[k].v) - f.coords().row(edges[k].u);
  }
  return dirs;
}

Matrix rigidity_matrix(const Framework& f) {
  const int d = f.dim();
  const auto& edges = f.graph().edges();
  Matrix r = Matrix::Zero(static_cast<Eigen::Index>(edges.size()), d * f.num_vertices());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    const Eigen::RowVectorXd diff = f.coords().row(edges[k].u) - f.coords().row(edges[k].v);
    r.block(row, edges[k].u * d, 1, d) = diff;
    r.block(row, edges[k].v * d, 1, d) = -diff;
  }
  return r;
}

bool infinitesimally_rigid(const Framework& f, const TolerancePolicy& policy) {
  const int d = f.dim();
  if (affine_span_dim(f.coords(), policy) < d) {
    throw Error(ErrorKind::SpanDeficient, "configuration does not affinely span R^" + std::to_string(d));
  }
  return numeric_rank(rigidity_matrix(f), policy) == d * f.num_vertices() - trivial_motion_count(d);
}

IndependenceCheck affine_general_position_check(const Matrix& coords, const TolerancePolicy& policy) {
  require_finite(coords, "coordinates");
  // Affine general position of p is linear general position of its lift (p; 1).
  return rows_in_general_position(homogeneous(coords), policy);
}

bool affine_general_position(const Matrix& coords, const TolerancePolicy& policy) {
  return affine_general_position_check(coords, policy).value;
}

bool neighborhood_spans(const Framework& f, const TolerancePolicy& policy) {
  for (int i = 0; i < f.num_vertices(); ++i) {
    const auto& nb = f.graph().neighbors(i);
    Matrix local(static_cast<Eigen::Index>(nb.size()) + 1, f.dim());
    local.row(0) = f.coords().row(i);
    for (std::size_t k = 0; k < nb.size(); ++k) local.row(static_cast<Eigen::Index>(k) + 1) = f.coords().row(nb[k]);
    if (affine_span_dim(local, policy) < f.dim()) return false;
  }
  return true;
}

Matrix conic_monomials(const Framework& f) {
  const int d = f.dim();
  const Matrix dirs = edge_directions(f);
  Matrix mono(dirs.rows(), trivial_motion_count(d));
  Eigen::Index col = 0;
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) {
      mono.col(col++) = dirs.col(a).cwiseProduct(dirs.col(b));
    }
  }
  return mono;
}

bool on_conic_at_infinity(const Framework& f, const TolerancePolicy& policy) {
  return numeric_rank(conic_monomials(f), policy) < trivial_motion_count(f.dim());
}

int maxwell_index(const Graph& g, int d) {
  return g.num_edges() - d * g.num_vertices() + trivial_motion_count(d);
}

Framework random_framework(const Graph& g, int d, Rng& rng) {
  return Framework(g, d, gaussian_matrix(g.num_vertices(), d, rng));
}

}  // namespace stresskit
