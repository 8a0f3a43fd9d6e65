#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace stresskit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// Threshold rule shared by every rank decision in the library.
/// A singular value s counts as nonzero iff s > max(rel_tol * s_max, abs_floor).
struct TolerancePolicy {
  double rel_tol = 1e-9;
  double abs_floor = 1e-12;

  double threshold(double largest) const;
  /// Throws InvalidInput unless both constants are positive and finite.
  void validate() const;
};

/// Policy used for finite-difference Jacobians, where differencing noise
/// sits well above the default threshold.
TolerancePolicy relaxed_for_differencing(const TolerancePolicy& policy);

/// Orthonormal basis stored column-wise: vectors is ambient_dim x dim().
struct SubspaceBasis {
  Eigen::Index ambient_dim = 0;
  Matrix vectors;

  Eigen::Index dim() const { return vectors.cols(); }
  bool empty() const { return vectors.cols() == 0; }
};

/// Throws InvalidInput if any entry is NaN or infinite.
void require_finite(const Matrix& a, const char* what = "matrix");

Vector singular_values(const Matrix& a);

int numeric_rank(const Matrix& a, const TolerancePolicy& policy = {});

/// Right null space.
SubspaceBasis kernel_basis(const Matrix& a, const TolerancePolicy& policy = {});

/// Left null space (kernel of the transpose).
SubspaceBasis cokernel_basis(const Matrix& a, const TolerancePolicy& policy = {});

Matrix symmetrize(const Matrix& a);

/// Symmetrizes before testing; min eigenvalue >= -(rel_tol * max|eig| + abs_floor).
bool is_psd(const Matrix& a, const TolerancePolicy& policy = {});

/// Eigenvalues of the symmetrized matrix, ascending.
Vector symmetric_eigenvalues(const Matrix& a);

std::uint64_t binomial(int n, int k);

/// Calls visit(subset) for every k-subset of {0..n-1} in lexicographic order.
/// Enumeration stops early when visit returns false.
void for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& visit);

/// Independence verdict that may be exact or sampled.
struct IndependenceCheck {
  bool value = true;
  bool exact = true;
};

/// Enumeration cap for exhaustive general-position testing.
inline constexpr std::uint64_t kSubsetEnumerationCap = 200000;
inline constexpr int kRandomizedTrials = 32;

/// Linear general position of the rows of `rows`: every min(n, k)-subset of
/// the n row vectors in R^k is linearly independent. Above the enumeration cap
/// the test falls back to sampled subsets and reports exact = false.
IndependenceCheck rows_in_general_position(const Matrix& rows, const TolerancePolicy& policy,
                                           Rng* rng = nullptr);

bool rows_independent(const Matrix& rows, const std::vector<int>& subset,
                      const TolerancePolicy& policy);

/// Central-difference Jacobian of f at x with step h.
Matrix finite_difference_jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x,
                                  double step = 1e-6);

/// SplitMix64 mix of (seed, index); used to give independent trials their own streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);
Vector gaussian_vector(Eigen::Index size, Rng& rng);

}  // namespace stresskit
