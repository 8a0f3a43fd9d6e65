#include "stresskit/stresses.hpp"

#include "stresskit/errors.hpp"

#include <algorithm>
#include <numeric>

namespace stresskit {

StressMatrix::StressMatrix(const Graph& g, Matrix omega, const TolerancePolicy& policy)
    : omega_(std::move(omega)) {
  const int n = g.num_vertices();
  if (omega_.rows() != n || omega_.cols() != n) {
    throw Error(ErrorKind::NotAStressMatrix, "stress matrix must be " + std::to_string(n) + " x " + std::to_string(n));
  }
  if (!omega_.allFinite()) throw Error(ErrorKind::InvalidInput, "stress matrix has non-finite entries");
  const double tol = policy.rel_tol * omega_.norm() + policy.abs_floor;
  if ((omega_ - omega_.transpose()).cwiseAbs().maxCoeff() > tol) {
    throw Error(ErrorKind::NotAStressMatrix, "matrix is not symmetric");
  }
  for (const Edge& e : non_edges(g)) {
    if (std::abs(omega_(e.u, e.v)) > tol) {
      throw Error(ErrorKind::NotAStressMatrix,
                  "nonzero entry at non-edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}");
    }
  }
  if (n > 0 && omega_.rowwise().sum().cwiseAbs().maxCoeff() > tol) {
    throw Error(ErrorKind::NotAStressMatrix, "row sums are not zero");
  }
}

SubspaceBasis stress_space(const Framework& f, const TolerancePolicy& policy) {
  return cokernel_basis(rigidity_matrix(f), policy);
}

StressMatrix to_matrix(const Graph& g, const StressVector& omega) {
  if (omega.weights.size() != g.num_edges()) {
    throw Error(ErrorKind::InvalidInput, "stress vector length differs from edge count");
  }
  const int n = g.num_vertices();
  Matrix m = Matrix::Zero(n, n);
  const auto& edges = g.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const double w = omega.weights(static_cast<Eigen::Index>(k));
    m(edges[k].u, edges[k].v) = -w;
    m(edges[k].v, edges[k].u) = -w;
    m(edges[k].u, edges[k].u) += w;
    m(edges[k].v, edges[k].v) += w;
  }
  return StressMatrix(g, std::move(m));
}

StressVector edge_weights(const Graph& g, const StressMatrix& omega) {
  const auto& edges = g.edges();
  StressVector out{Vector(static_cast<Eigen::Index>(edges.size()))};
  for (std::size_t k = 0; k < edges.size(); ++k) {
    out.weights(static_cast<Eigen::Index>(k)) =
        -0.5 * (omega.matrix()(edges[k].u, edges[k].v) + omega.matrix()(edges[k].v, edges[k].u));
  }
  return out;
}

double equilibrium_residual(const Framework& f, const StressMatrix& omega) {
  const Matrix r = omega.matrix() * homogeneous(f.coords());
  const double scale = std::max(omega.matrix().norm(), 1e-300) *
                       std::max(1.0, f.coords().cwiseAbs().maxCoeff());
  return r.rows() == 0 ? 0.0 : r.rowwise().norm().maxCoeff() / scale;
}

namespace {

bool columns_independent_excluding(const Matrix& omega, const std::vector<int>& excluded,
                                   const TolerancePolicy& policy) {
  const auto n = omega.cols();
  std::vector<bool> drop(static_cast<std::size_t>(n), false);
  for (int v : excluded) drop[static_cast<std::size_t>(v)] = true;
  std::vector<int> keep;
  for (int j = 0; j < n; ++j)
    if (!drop[static_cast<std::size_t>(j)]) keep.push_back(j);
  Matrix cols(omega.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) cols.col(static_cast<Eigen::Index>(k)) = omega.col(keep[k]);
  return numeric_rank(cols, policy) == static_cast<int>(keep.size());
}

}  // namespace

std::optional<std::vector<int>> fstress_witness(const Graph& g, const Matrix& omega, int vertex, int d,
                                                const TolerancePolicy& policy, bool* exact) {
  const auto& nb = g.neighbors(vertex);
  const int deg = static_cast<int>(nb.size());
  if (exact) *exact = true;
  if (deg < d) return std::nullopt;

  std::optional<std::vector<int>> found;
  auto test = [&](const std::vector<int>& chosen) {
    std::vector<int> excluded = chosen;
    excluded.push_back(vertex);
    if (columns_independent_excluding(omega, excluded, policy)) {
      std::vector<int> s = chosen;
      std::sort(s.begin(), s.end());
      found = s;
      return true;
    }
    return false;
  };

  if (binomial(deg, d) <= kFstressEnumerationCap) {
    for_each_subset(deg, d, [&](const std::vector<int>& idx) {
      std::vector<int> chosen;
      for (int k : idx) chosen.push_back(nb[static_cast<std::size_t>(k)]);
      return !test(chosen);
    });
    return found;
  }

  // Gale duality: the complementary columns are independent iff the kernel
  // rows of {vertex} ∪ S are, so grow S greedily on the kernel side.
  if (exact) *exact = false;
  const Matrix kernel = kernel_basis(omega, policy).vectors;
  Rng rng(0xf57e55ULL + static_cast<std::uint64_t>(vertex));
  std::vector<int> order = nb;
  for (int restart = 0; restart < 8 && !found; ++restart) {
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> rows{vertex};
    for (int v : order) {
      if (static_cast<int>(rows.size()) == d + 1) break;
      rows.push_back(v);
      if (!rows_independent(kernel, rows, policy)) rows.pop_back();
    }
    if (static_cast<int>(rows.size()) == d + 1) {
      test(std::vector<int>(rows.begin() + 1, rows.end()));
    }
  }
  return found;
}

StressClass classify(const Graph& g, const StressMatrix& omega, int d, const TolerancePolicy& policy) {
  const int n = g.num_vertices();
  if (omega.num_vertices() != n) throw Error(ErrorKind::InvalidInput, "stress matrix size differs from graph");
  StressClass cls;
  cls.rank = numeric_rank(omega.matrix(), policy);
  cls.is_psd = is_psd(omega.matrix(), policy);
  if (cls.rank != n - d - 1 || n < d + 2) return cls;

  // Gale-dual route: every (n-d-1)-subset of columns is independent iff
  // every (d+1)-subset of kernel rows is.
  const Matrix kernel = kernel_basis(omega.matrix(), policy).vectors;
  const IndependenceCheck gp = rows_in_general_position(kernel, policy);
  cls.is_gstress = gp.value;
  cls.gstress_exact = gp.exact;

  cls.is_fstress = true;
  for (int i = 0; i < n && cls.is_fstress; ++i) {
    bool exact = true;
    cls.is_fstress = fstress_witness(g, omega.matrix(), i, d, policy, &exact).has_value();
    cls.fstress_exact = cls.fstress_exact && exact;
  }
  return cls;
}

Matrix canonical_simplex(int d) {
  Matrix s = Matrix::Zero(d + 1, d);
  for (int k = 0; k < d; ++k) s(k + 1, k) = 1.0;
  return s;
}

namespace {

// Basis [P0 | 1] of the kernel of a rank-(n-d-1) stress matrix.
Matrix lifted_kernel(const StressMatrix& omega, int d, const TolerancePolicy& policy) {
  const Matrix& om = omega.matrix();
  const int n = omega.num_vertices();
  const int rank = numeric_rank(om, policy);
  if (rank != n - d - 1) {
    throw Error(ErrorKind::WrongRank,
                "stress rank " + std::to_string(rank) + ", expected " + std::to_string(n - d - 1));
  }
  const Vector ones = Vector::Ones(n);
  if ((om * ones).norm() > policy.rel_tol * om.norm() + policy.abs_floor) {
    throw Error(ErrorKind::NotAStressMatrix, "all-ones vector is not in the kernel");
  }
  const Matrix kernel = kernel_basis(om, policy).vectors;  // n x (d+1), orthonormal
  const Vector c = kernel.transpose() * ones;
  if ((kernel * c - ones).norm() > std::sqrt(policy.rel_tol) * std::sqrt(static_cast<double>(n))) {
    throw Error(ErrorKind::NotAStressMatrix, "all-ones vector is not in the computed kernel");
  }
  const Matrix complement = kernel_basis(c.transpose(), policy).vectors;  // (d+1) x d
  Matrix lifted(n, d + 1);
  lifted.leftCols(d) = kernel * complement;
  lifted.col(d).setOnes();
  return lifted;
}

std::vector<int> first_independent_pins(const Matrix& lifted, int d, const TolerancePolicy& policy) {
  std::vector<int> chosen;
  for_each_subset(static_cast<int>(lifted.rows()), d + 1, [&](const std::vector<int>& s) {
    if (rows_independent(lifted, s, policy)) {
      chosen = s;
      return false;
    }
    return true;
  });
  if (chosen.empty()) throw Error(ErrorKind::PinningFailed, "no affinely independent pin set");
  return chosen;
}

}  // namespace

std::vector<int> default_pins(const StressMatrix& omega, int d, const TolerancePolicy& policy) {
  return first_independent_pins(lifted_kernel(omega, d, policy), d, policy);
}

Framework kernel_framework(const Graph& g, const StressMatrix& omega, int d,
                           const std::optional<std::vector<int>>& pins, const TolerancePolicy& policy) {
  const int n = g.num_vertices();
  if (omega.num_vertices() != n) throw Error(ErrorKind::InvalidInput, "stress matrix size differs from graph");
  const Matrix lifted = lifted_kernel(omega, d, policy);

  std::vector<int> chosen;
  if (pins) {
    chosen = *pins;
    if (static_cast<int>(chosen.size()) != d + 1) {
      throw Error(ErrorKind::InvalidInput, "exactly d+1 pins are required");
    }
    for (int v : chosen) {
      if (v < 0 || v >= n) throw Error(ErrorKind::InvalidInput, "pin vertex out of range");
    }
    if (!rows_independent(lifted, chosen, policy)) {
      throw Error(ErrorKind::PinningFailed, "pinned vertices are affinely dependent in the kernel");
    }
  } else {
    chosen = first_independent_pins(lifted, d, policy);
  }

  // Affine map x -> A x + b sending the pins to the canonical simplex,
  // written as lifted_pins * T = simplex with T = [Aᵀ; bᵀ].
  const Matrix simplex = canonical_simplex(d);
  Matrix lifted_pins(d + 1, d + 1);
  for (int k = 0; k <= d; ++k) lifted_pins.row(k) = lifted.row(chosen[static_cast<std::size_t>(k)]);
  const Matrix transform = lifted_pins.fullPivLu().solve(simplex);
  Matrix coords = lifted * transform;
  for (int k = 0; k <= d; ++k) coords.row(chosen[static_cast<std::size_t>(k)]) = simplex.row(k);
  return Framework(g, d, std::move(coords));
}

}  // namespace stresskit
