#include "stresskit/linalg.hpp"

#include "stresskit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace stresskit {

double TolerancePolicy::threshold(double largest) const {
  return std::max(rel_tol * largest, abs_floor);
}

void TolerancePolicy::validate() const {
  if (!(rel_tol > 0.0) || !(abs_floor > 0.0) || !std::isfinite(rel_tol) ||
      !std::isfinite(abs_floor)) {
    throw Error(ErrorKind::InvalidInput, "tolerance constants must be positive and finite");
  }
}

TolerancePolicy relaxed_for_differencing(const TolerancePolicy& policy) {
  return {std::max(policy.rel_tol, 1e-6), policy.abs_floor};
}

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) {
    throw Error(ErrorKind::InvalidInput, std::string(what) + " has non-finite entries");
  }
}

Vector singular_values(const Matrix& a) {
  require_finite(a);
  if (a.size() == 0) return Vector();
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues();
}

namespace {

int rank_from_singular_values(const Vector& s, const TolerancePolicy& policy) {
  if (s.size() == 0) return 0;
  const double cut = policy.threshold(s(0));
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) ++rank;
  }
  return rank;
}

}  // namespace

int numeric_rank(const Matrix& a, const TolerancePolicy& policy) {
  return rank_from_singular_values(singular_values(a), policy);
}

SubspaceBasis kernel_basis(const Matrix& a, const TolerancePolicy& policy) {
  require_finite(a);
  SubspaceBasis basis;
  basis.ambient_dim = a.cols();
  if (a.cols() == 0) {
    basis.vectors = Matrix(0, 0);
    return basis;
  }
  if (a.rows() == 0) {
    basis.vectors = Matrix::Identity(a.cols(), a.cols());
    return basis;
  }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const int rank = rank_from_singular_values(svd.singularValues(), policy);
  basis.vectors = svd.matrixV().rightCols(a.cols() - rank);
  return basis;
}

SubspaceBasis cokernel_basis(const Matrix& a, const TolerancePolicy& policy) {
  return kernel_basis(a.transpose(), policy);
}

Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

Vector symmetric_eigenvalues(const Matrix& a) {
  require_finite(a);
  if (a.rows() != a.cols()) throw Error(ErrorKind::InvalidInput, "matrix is not square");
  if (a.size() == 0) return Vector();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrize(a), Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

bool is_psd(const Matrix& a, const TolerancePolicy& policy) {
  const Vector ev = symmetric_eigenvalues(a);
  if (ev.size() == 0) return true;
  const double largest = ev.cwiseAbs().maxCoeff();
  return ev.minCoeff() >= -(policy.rel_tol * largest + policy.abs_floor);
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

void for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& visit) {
  if (k < 0 || k > n) return;
  std::vector<int> subset(static_cast<std::size_t>(k));
  std::iota(subset.begin(), subset.end(), 0);
  while (true) {
    if (!visit(subset)) return;
    int i = k - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++subset[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

bool rows_independent(const Matrix& rows, const std::vector<int>& subset,
                      const TolerancePolicy& policy) {
  Matrix sub(static_cast<Eigen::Index>(subset.size()), rows.cols());
  for (std::size_t r = 0; r < subset.size(); ++r) sub.row(static_cast<Eigen::Index>(r)) = rows.row(subset[r]);
  return numeric_rank(sub, policy) == static_cast<int>(subset.size());
}

IndependenceCheck rows_in_general_position(const Matrix& rows, const TolerancePolicy& policy,
                                           Rng* rng) {
  require_finite(rows);
  const int n = static_cast<int>(rows.rows());
  const int k = static_cast<int>(std::min<Eigen::Index>(rows.rows(), rows.cols()));
  IndependenceCheck result;
  if (n == 0) return result;

  if (binomial(n, k) <= kSubsetEnumerationCap) {
    for_each_subset(n, k, [&](const std::vector<int>& s) {
      if (!rows_independent(rows, s, policy)) {
        result.value = false;
        return false;
      }
      return true;
    });
    return result;
  }

  Rng fallback(0x5eedULL);
  Rng& gen = rng ? *rng : fallback;
  result.exact = false;
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  for (int trial = 0; trial < kRandomizedTrials && result.value; ++trial) {
    std::shuffle(all.begin(), all.end(), gen);
    std::vector<int> s(all.begin(), all.begin() + k);
    std::sort(s.begin(), s.end());
    result.value = rows_independent(rows, s, policy);
  }
  return result;
}

Matrix finite_difference_jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x,
                                  double step) {
  const Vector f0 = f(x);
  Matrix jac(f0.size(), x.size());
  Vector probe = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    probe(j) = x(j) + step;
    const Vector plus = f(probe);
    probe(j) = x(j) - step;
    const Vector minus = f(probe);
    probe(j) = x(j);
    jac.col(j) = (plus - minus) / (2.0 * step);
  }
  return jac;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  // Column-major fill order is part of the determinism contract.
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

Vector gaussian_vector(Eigen::Index size, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = normal(rng);
  return v;
}

}  // namespace stresskit
