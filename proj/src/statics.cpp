#include "stresskit/statics.hpp"

#include "stresskit/errors.hpp"

#include <algorithm>

namespace stresskit {

namespace {

Vector flatten(const Matrix& forces) {
  Vector out(forces.size());
  for (Eigen::Index i = 0; i < forces.rows(); ++i)
    for (Eigen::Index a = 0; a < forces.cols(); ++a) out(i * forces.cols() + a) = forces(i, a);
  return out;
}

Matrix unflatten(const Vector& flat, Eigen::Index n, Eigen::Index d) {
  Matrix out(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index a = 0; a < d; ++a) out(i, a) = flat(i * d + a);
  return out;
}

double max_row_norm(const Matrix& m) {
  return m.rows() == 0 ? 0.0 : m.rowwise().norm().maxCoeff();
}

}  // namespace

bool is_equilibrium_load(const Matrix& coords, const Load& load, const TolerancePolicy& policy) {
  const Matrix& f = load.forces;
  if (f.rows() != coords.rows() || f.cols() != coords.cols()) {
    throw Error(ErrorKind::InvalidInput, "load and configuration shapes differ");
  }
  require_finite(f, "load");
  const double n = static_cast<double>(std::max<Eigen::Index>(f.rows(), 1));
  const double fmax = max_row_norm(f);
  const double pmax = std::max(max_row_norm(coords), 1.0);

  const Eigen::RowVectorXd net = f.colwise().sum();
  if (net.cwiseAbs().maxCoeff() > policy.rel_tol * n * fmax + policy.abs_floor) return false;

  // Σ f_i p_iᵀ - p_i f_iᵀ as a full antisymmetric matrix.
  const Matrix fp = f.transpose() * coords;
  const Matrix wedge = fp - fp.transpose();
  return wedge.cwiseAbs().maxCoeff() <= policy.rel_tol * n * fmax * pmax + policy.abs_floor;
}

Load induced_load(const Framework& f, const Vector& edge_weights) {
  if (edge_weights.size() != f.graph().num_edges()) {
    throw Error(ErrorKind::InvalidInput, "edge weight vector has wrong length");
  }
  const Vector flat = rigidity_matrix(f).transpose() * edge_weights;
  return {unflatten(flat, f.num_vertices(), f.dim())};
}

Resolution resolve_load(const Framework& f, const Load& load, const TolerancePolicy& policy) {
  if (!is_equilibrium_load(f.coords(), load, policy)) {
    throw Error(ErrorKind::NotEquilibrium, "load has nonzero net force or torque");
  }
  const Matrix rt = rigidity_matrix(f).transpose();
  const Vector rhs = flatten(load.forces);
  Resolution res;
  if (rt.cols() == 0) {
    res.weights = Vector();
  } else {
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(rt);
    cod.setThreshold(policy.rel_tol);
    res.weights = cod.solve(rhs);
  }
  const double residual = rt.cols() == 0 ? rhs.norm() : (rt * res.weights - rhs).norm();
  const double scale = std::max(rhs.norm(), 1.0) * std::max(max_row_norm(f.coords()), 1.0);
  if (residual > policy.rel_tol * scale * 10.0 + policy.abs_floor) {
    throw Error(ErrorKind::Unresolvable, "least-squares residual " + std::to_string(residual));
  }
  return res;
}

Load restrict_load_to_support(const Load& load, const std::vector<int>& support,
                              const TolerancePolicy& policy) {
  const Matrix& f = load.forces;
  std::vector<bool> inside(static_cast<std::size_t>(f.rows()), false);
  for (int v : support) {
    if (v < 0 || v >= f.rows()) throw Error(ErrorKind::InvalidInput, "support vertex out of range");
    inside[static_cast<std::size_t>(v)] = true;
  }
  const double cut = policy.rel_tol * std::max(max_row_norm(f), 1.0) + policy.abs_floor;
  for (Eigen::Index i = 0; i < f.rows(); ++i) {
    if (!inside[static_cast<std::size_t>(i)] && f.row(i).norm() > cut) {
      throw Error(ErrorKind::InvalidInput, "load is nonzero at vertex " + std::to_string(i) + " off the support");
    }
  }
  Load out{Matrix(static_cast<Eigen::Index>(support.size()), f.cols())};
  for (std::size_t k = 0; k < support.size(); ++k) out.forces.row(static_cast<Eigen::Index>(k)) = f.row(support[k]);
  return out;
}

Matrix equilibrium_load_constraints(const Matrix& coords) {
  const Eigen::Index n = coords.rows();
  const Eigen::Index d = coords.cols();
  Matrix c = Matrix::Zero(d + d * (d - 1) / 2, n * d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index a = 0; a < d; ++a) c(a, i * d + a) = 1.0;
  Eigen::Index row = d;
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = a + 1; b < d; ++b, ++row) {
      // (f ∧ p)_{ab} = f_a p_b - p_a f_b
      for (Eigen::Index i = 0; i < n; ++i) {
        c(row, i * d + a) += coords(i, b);
        c(row, i * d + b) -= coords(i, a);
      }
    }
  }
  return c;
}

}  // namespace stresskit
