#include "stresskit/constructions.hpp"

#include "stresskit/errors.hpp"
#include "stresskit/statics.hpp"

#include <algorithm>
#include <numeric>

namespace stresskit {

std::vector<int> non_clique_edges(const Graph& g, const std::vector<int>& clique) {
  std::vector<bool> in_clique(static_cast<std::size_t>(g.num_vertices()), false);
  for (int v : clique) in_clique[static_cast<std::size_t>(v)] = true;
  std::vector<int> out;
  const auto& edges = g.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (!(in_clique[static_cast<std::size_t>(edges[k].u)] && in_clique[static_cast<std::size_t>(edges[k].v)])) {
      out.push_back(static_cast<int>(k));
    }
  }
  return out;
}

namespace {

void require_clique(const Graph& g, const std::vector<int>& clique, int d) {
  if (static_cast<int>(clique.size()) != d + 1) {
    throw Error(ErrorKind::InvalidInput, "clique must have d+1 vertices");
  }
  if (!std::is_sorted(clique.begin(), clique.end()) ||
      std::adjacent_find(clique.begin(), clique.end()) != clique.end()) {
    throw Error(ErrorKind::InvalidInput, "clique vertices must be strictly increasing");
  }
  for (std::size_t a = 0; a < clique.size(); ++a) {
    if (clique[a] < 0 || clique[a] >= g.num_vertices()) {
      throw Error(ErrorKind::InvalidInput, "clique vertex out of range");
    }
    for (std::size_t b = a + 1; b < clique.size(); ++b) {
      if (!g.has_edge(clique[a], clique[b])) {
        throw Error(ErrorKind::InvalidInput, "clique vertices are not pairwise adjacent");
      }
    }
  }
}

void require_connectivity(const Graph& g, int d) {
  if (g.num_vertices() < d + 2 || vertex_connectivity(g) < d + 1) {
    throw Error(ErrorKind::NotConnectedEnough, "graph is not " + std::to_string(d + 1) + "-connected");
  }
}

}  // namespace

RubberBandResult rubber_band_stress(const RubberBandInput& input, const TolerancePolicy& policy) {
  const Graph& g = input.graph;
  const int d = input.d;
  const int n = g.num_vertices();
  if (d < 1) throw Error(ErrorKind::InvalidInput, "dimension must be at least 1");
  require_connectivity(g, d);
  require_clique(g, input.clique, d);
  const std::vector<int> free_edges = non_clique_edges(g, input.clique);
  if (input.weights.size() != static_cast<Eigen::Index>(free_edges.size())) {
    throw Error(ErrorKind::InvalidInput, "expected " + std::to_string(free_edges.size()) + " weights, got " +
                                             std::to_string(input.weights.size()));
  }
  require_finite(input.weights, "weights");

  Vector omega = Vector::Zero(g.num_edges());
  for (std::size_t k = 0; k < free_edges.size(); ++k) omega(free_edges[k]) = input.weights(static_cast<Eigen::Index>(k));

  // (1) pin the clique.
  const Matrix pinned = input.clique_positions ? *input.clique_positions : canonical_simplex(d);
  if (pinned.rows() != d + 1 || pinned.cols() != d || affine_span_dim(pinned, policy) != d) {
    throw Error(ErrorKind::InvalidInput, "clique positions must be d+1 affinely independent points in R^d");
  }
  std::vector<int> slot(static_cast<std::size_t>(n), -1);  // index among free vertices, or -1
  std::vector<bool> in_clique(static_cast<std::size_t>(n), false);
  for (int v : input.clique) in_clique[static_cast<std::size_t>(v)] = true;
  std::vector<int> free_vertices;
  for (int v = 0; v < n; ++v) {
    if (!in_clique[static_cast<std::size_t>(v)]) {
      slot[static_cast<std::size_t>(v)] = static_cast<int>(free_vertices.size());
      free_vertices.push_back(v);
    }
  }
  Matrix coords = Matrix::Zero(n, d);
  for (int k = 0; k <= d; ++k) coords.row(input.clique[static_cast<std::size_t>(k)]) = pinned.row(k);

  // (2) equilibrium of the free vertices: L_FF P_F = W_FH P_H.
  const auto nf = static_cast<Eigen::Index>(free_vertices.size());
  Matrix system = Matrix::Zero(nf, nf);
  Matrix rhs = Matrix::Zero(nf, d);
  const auto& edges = g.edges();
  for (int k : free_edges) {
    const Edge& e = edges[static_cast<std::size_t>(k)];
    const double w = omega(k);
    for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      const int sa = slot[static_cast<std::size_t>(a)];
      if (sa < 0) continue;
      system(sa, sa) += w;
      const int sb = slot[static_cast<std::size_t>(b)];
      if (sb >= 0) {
        system(sa, sb) -= w;
      } else {
        rhs.row(sa) += w * coords.row(b);
      }
    }
  }
  const Vector sv = singular_values(system);
  const double smin = sv.size() ? sv(sv.size() - 1) : 0.0;
  if (numeric_rank(system, policy) < nf) {
    throw Error(ErrorKind::OutsideDomain, "equilibrium system is singular for these weights");
  }
  const Eigen::PartialPivLU<Matrix> lu(system);
  const Matrix free_coords = lu.solve(rhs);
  for (Eigen::Index s = 0; s < nf; ++s) coords.row(free_vertices[static_cast<std::size_t>(s)]) = free_coords.row(s);
  Framework framework(g, d, coords);

  // (3) resultant load of the off-clique edges; it vanishes off the clique.
  Load resultant{Matrix::Zero(n, d)};
  for (int k : free_edges) {
    const Edge& e = edges[static_cast<std::size_t>(k)];
    const Eigen::RowVectorXd dir = coords.row(e.v) - coords.row(e.u);
    resultant.forces.row(e.u) += omega(k) * dir;
    resultant.forces.row(e.v) -= omega(k) * dir;
  }
  // Off-clique forces are solve residuals; scale the tolerance by conditioning.
  const double condition = sv(0) / smin;
  const TolerancePolicy load_policy{std::max(policy.rel_tol, 1e-13 * condition), policy.abs_floor};
  const Load on_clique = restrict_load_to_support(resultant, input.clique, load_policy);

  // (4) unique resolution on the pinned simplex.
  const Framework simplex(builtin::complete(d + 1), d, pinned);
  const Resolution res = resolve_load(simplex, on_clique, load_policy);
  const auto& simplex_edges = simplex.graph().edges();
  for (std::size_t k = 0; k < simplex_edges.size(); ++k) {
    const int idx = g.edge_index(input.clique[static_cast<std::size_t>(simplex_edges[k].u)],
                                 input.clique[static_cast<std::size_t>(simplex_edges[k].v)]);
    omega(idx) = res.weights(static_cast<Eigen::Index>(k));
  }

  // (5) assemble and classify.
  RubberBandResult out{to_matrix(g, {omega}), std::move(framework), {}, condition};
  out.classification = classify(g, out.stress, d, policy);
  return out;
}

Vector rubber_band_readoff(const Graph& g, const StressMatrix& omega, const std::vector<int>& clique, int d,
                           const TolerancePolicy& policy) {
  require_clique(g, clique, d);
  const StressClass cls = classify(g, omega, d, policy);
  if (cls.rank != g.num_vertices() - d - 1) {
    throw Error(ErrorKind::WrongRank, "stress rank " + std::to_string(cls.rank) + " is not n-d-1");
  }
  if (!cls.is_gstress) throw Error(ErrorKind::InvalidInput, "stress is not in general position");
  const Vector all = edge_weights(g, omega).weights;
  const std::vector<int> idx = non_clique_edges(g, clique);
  Vector out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out(static_cast<Eigen::Index>(k)) = all(idx[k]);
  return out;
}

Vector random_rubber_band_weights(int count, Rng& rng) {
  std::uniform_real_distribution<double> uniform(0.25, 2.0);
  Vector w(count);
  for (int k = 0; k < count; ++k) w(k) = uniform(rng);
  return w;
}

// ---------------------------------------------------------------------------

Signature euclidean_signature(int dim) { return Signature(static_cast<std::size_t>(std::max(dim, 0)), 1); }

Signature parse_signature(const std::string& text) {
  Signature s;
  for (char c : text) {
    if (c == '+') {
      s.push_back(1);
    } else if (c == '-') {
      s.push_back(-1);
    } else {
      throw Error(ErrorKind::InvalidInput, "signature may only contain '+' and '-'");
    }
  }
  return s;
}

std::string format_signature(const Signature& s) {
  std::string out;
  for (int sign : s) out += sign > 0 ? '+' : '-';
  return out;
}

namespace {

Vector signature_diagonal(const Signature& s) {
  Vector diag(static_cast<Eigen::Index>(s.size()));
  for (std::size_t k = 0; k < s.size(); ++k) diag(static_cast<Eigen::Index>(k)) = s[k];
  return diag;
}

}  // namespace

Matrix OrthogonalRep::gram() const {
  return vectors.transpose() * signature_diagonal(signature).asDiagonal() * vectors;
}

double orthogonality_residual(const OrthogonalRep& rep) {
  const Matrix gram = rep.gram();
  double worst = 0.0;
  for (const Edge& e : non_edges(rep.graph)) worst = std::max(worst, std::abs(gram(e.u, e.v)));
  return worst;
}

IndependenceCheck gor_general_position(const OrthogonalRep& rep, const TolerancePolicy& policy) {
  return rows_in_general_position(rep.vectors.transpose(), policy);
}

OrthogonalRep build_gor(const Graph& g, int d, const Signature& signature, std::uint64_t seed,
                        const TolerancePolicy& policy, int retries) {
  const int n = g.num_vertices();
  const int dim = n - d - 1;
  if (d < 1) throw Error(ErrorKind::InvalidInput, "dimension must be at least 1");
  if (dim < 1) throw Error(ErrorKind::NotConnectedEnough, "need n >= d+2 for a representation in R^{n-d-1}");
  if (static_cast<int>(signature.size()) != dim) {
    throw Error(ErrorKind::InvalidInput, "signature length must be n-d-1 = " + std::to_string(dim));
  }
  require_connectivity(g, d);

  const Vector sdiag = signature_diagonal(signature);
  Rng rng(seed);
  for (int attempt = 0; attempt < retries; ++attempt) {
    OrthogonalRep rep{g, Matrix::Zero(dim, n), signature};
    bool placed = true;
    for (int i = 0; i < n && placed; ++i) {
      std::vector<int> constraints;
      for (int j = 0; j < i; ++j)
        if (!g.has_edge(i, j)) constraints.push_back(j);
      Matrix c(static_cast<Eigen::Index>(constraints.size()), dim);
      for (std::size_t k = 0; k < constraints.size(); ++k) {
        c.row(static_cast<Eigen::Index>(k)) = sdiag.cwiseProduct(rep.vectors.col(constraints[k])).transpose();
      }
      const Matrix allowed = kernel_basis(c, policy).vectors;
      if (allowed.cols() == 0) {
        placed = false;
        break;
      }
      rep.vectors.col(i) = allowed * gaussian_vector(allowed.cols(), rng);
    }
    if (!placed) continue;
    const double scale = rep.vectors.colwise().squaredNorm().maxCoeff();
    if (orthogonality_residual(rep) > policy.rel_tol * scale + policy.abs_floor) continue;
    if (!gor_general_position(rep, policy).value) continue;
    return rep;
  }
  throw Error(ErrorKind::ConstructionFailed,
              "no general-position orthogonal representation after " + std::to_string(retries) +
                  " attempts (seed " + std::to_string(seed) + ")");
}

bool is_for(const OrthogonalRep& rep, const TolerancePolicy& policy) {
  const Graph& g = rep.graph;
  const int n = g.num_vertices();
  const int d = n - rep.dim() - 1;
  if (d < 0) return false;
  const Matrix rows = rep.vectors.transpose();
  auto complement_independent = [&](int i, const std::vector<int>& chosen) {
    std::vector<bool> drop(static_cast<std::size_t>(n), false);
    drop[static_cast<std::size_t>(i)] = true;
    for (int v : chosen) drop[static_cast<std::size_t>(v)] = true;
    std::vector<int> keep;
    for (int j = 0; j < n; ++j)
      if (!drop[static_cast<std::size_t>(j)]) keep.push_back(j);
    return rows_independent(rows, keep, policy);
  };
  for (int i = 0; i < n; ++i) {
    const auto& nb = g.neighbors(i);
    if (static_cast<int>(nb.size()) < d) return false;
    bool ok = false;
    if (binomial(static_cast<int>(nb.size()), d) <= kFstressEnumerationCap) {
      for_each_subset(static_cast<int>(nb.size()), d, [&](const std::vector<int>& idx) {
        std::vector<int> chosen;
        for (int k : idx) chosen.push_back(nb[static_cast<std::size_t>(k)]);
        ok = complement_independent(i, chosen);
        return !ok;
      });
    } else {
      Rng rng(0xf0f0ULL + static_cast<std::uint64_t>(i));
      std::vector<int> order = nb;
      for (int trial = 0; trial < 64 && !ok; ++trial) {
        std::shuffle(order.begin(), order.end(), rng);
        ok = complement_independent(i, std::vector<int>(order.begin(), order.begin() + d));
      }
    }
    if (!ok) return false;
  }
  return true;
}

CenteringResult center_gor(const OrthogonalRep& rep, Rng& rng, const TolerancePolicy& policy, int retries) {
  const int n = rep.graph.num_vertices();
  for (int i = 0; i < n; ++i) {
    if (rep.vectors.col(i).norm() <= policy.abs_floor) {
      throw Error(ErrorKind::InvalidInput, "vector " + std::to_string(i) + " is zero; not in general position");
    }
  }
  if (!is_for(rep, policy)) {
    throw Error(ErrorKind::InvalidInput, "representation is not locally full spanning");
  }
  const Matrix kernel = kernel_basis(rep.vectors, policy).vectors;
  if (kernel.cols() == 0) throw Error(ErrorKind::ConstructionFailed, "configuration matrix has trivial kernel");
  for (int attempt = 0; attempt < retries; ++attempt) {
    Vector alpha = kernel * gaussian_vector(kernel.cols(), rng);
    const double largest = alpha.cwiseAbs().maxCoeff();
    if (!(largest > 0.0)) continue;
    alpha /= largest;
    if (alpha.cwiseAbs().minCoeff() <= 1e-6) continue;
    OrthogonalRep centered = rep;
    centered.vectors = rep.vectors * alpha.asDiagonal();
    return {alpha, centered};
  }
  throw Error(ErrorKind::ConstructionFailed, "no all-nonzero centering map within the retry cap");
}

StressMatrix lss_stress(const OrthogonalRep& rep, const TolerancePolicy& policy) {
  const double scale = rep.vectors.colwise().norm().sum();
  if (rep.vectors.rowwise().sum().norm() > policy.rel_tol * scale + policy.abs_floor) {
    throw Error(ErrorKind::NotCentered, "barycenter is not at the origin");
  }
  const StressMatrix raw(rep.graph, rep.gram(), policy);
  return to_matrix(rep.graph, edge_weights(rep.graph, raw));
}

Matrix orthogonality_jacobian(const OrthogonalRep& rep) {
  const int dim = rep.dim();
  const auto missing = non_edges(rep.graph);
  const Vector sdiag = signature_diagonal(rep.signature);
  Matrix jac = Matrix::Zero(static_cast<Eigen::Index>(missing.size()), dim * rep.graph.num_vertices());
  for (std::size_t k = 0; k < missing.size(); ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    const auto [i, j] = missing[k];
    jac.block(row, i * dim, 1, dim) = sdiag.cwiseProduct(rep.vectors.col(j)).transpose();
    jac.block(row, j * dim, 1, dim) = sdiag.cwiseProduct(rep.vectors.col(i)).transpose();
  }
  return jac;
}

Matrix centered_constraint_jacobian(const OrthogonalRep& rep) {
  const int dim = rep.dim();
  const int n = rep.graph.num_vertices();
  const Matrix ortho = orthogonality_jacobian(rep);
  Matrix jac = Matrix::Zero(ortho.rows() + dim, ortho.cols());
  jac.topRows(ortho.rows()) = ortho;
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < dim; ++a) jac(ortho.rows() + a, i * dim + a) = 1.0;
  return jac;
}

Vector flatten_vectors(const OrthogonalRep& rep) {
  return Eigen::Map<const Vector>(rep.vectors.data(), rep.vectors.size());
}

OrthogonalRep with_flat_vectors(const OrthogonalRep& rep, const Vector& flat) {
  OrthogonalRep out = rep;
  out.vectors = Eigen::Map<const Matrix>(flat.data(), rep.vectors.rows(), rep.vectors.cols());
  return out;
}

Vector gram_edge_weights(const OrthogonalRep& rep) {
  const Matrix gram = rep.gram();
  const auto& edges = rep.graph.edges();
  Vector w(static_cast<Eigen::Index>(edges.size()));
  for (std::size_t k = 0; k < edges.size(); ++k) w(static_cast<Eigen::Index>(k)) = -gram(edges[k].u, edges[k].v);
  return w;
}

}  // namespace stresskit
