#pragma once

#include "stresskit/frameworks.hpp"

#include <optional>
#include <vector>

namespace stresskit {

/// Edge-indexed weights ω (sorted edge order).
struct StressVector {
  Vector weights;
};

/// Symmetric n x n matrix with zeros on non-edges and zero row sums.
class StressMatrix {
 public:
  StressMatrix() = default;
  /// Validates symmetry, the non-edge zero pattern and zero row sums within
  /// rel_tol * ||Ω||_F + abs_floor; throws NotAStressMatrix otherwise.
  StressMatrix(const Graph& g, Matrix omega, const TolerancePolicy& policy = {});

  const Matrix& matrix() const { return omega_; }
  int num_vertices() const { return static_cast<int>(omega_.rows()); }

 private:
  Matrix omega_;
};

struct StressClass {
  int rank = 0;
  bool is_gstress = false;
  bool is_fstress = false;
  bool is_psd = false;
  /// False when a subset search hit its enumeration cap and fell back to sampling.
  bool gstress_exact = true;
  bool fstress_exact = true;
};

/// Orthonormal basis (columns, m x k) of the cokernel of the rigidity matrix.
SubspaceBasis stress_space(const Framework& f, const TolerancePolicy& policy = {});

/// Ω_ij = -ω_ij on edges, 0 on non-edges, Ω_ii = Σ_j ω_ij.
StressMatrix to_matrix(const Graph& g, const StressVector& omega);

/// Inverse of to_matrix on the edge entries.
StressVector edge_weights(const Graph& g, const StressMatrix& omega);

/// max_i ||(Ω [p | 1])_i|| relative to ||Ω||_F * max(1, max|p|).
double equilibrium_residual(const Framework& f, const StressMatrix& omega);

StressClass classify(const Graph& g, const StressMatrix& omega, int d, const TolerancePolicy& policy = {});

/// Fstress condition for one vertex: some d neighbours S of i leave the
/// columns of V \ ({i} ∪ S) independent. Returns the witness S if found.
std::optional<std::vector<int>> fstress_witness(const Graph& g, const Matrix& omega, int vertex, int d,
                                                const TolerancePolicy& policy, bool* exact = nullptr);

/// Cap on exhaustive d-subset enumeration per vertex in the Fstress search.
inline constexpr std::uint64_t kFstressEnumerationCap = 5000;

/// A configuration p with Ω [p | 1] = 0 whose pinned vertices sit at the
/// canonical simplex (origin, then e_1..e_d). Default pins are the
/// lexicographically first affinely independent (d+1)-set.
Framework kernel_framework(const Graph& g, const StressMatrix& omega, int d,
                           const std::optional<std::vector<int>>& pins = std::nullopt,
                           const TolerancePolicy& policy = {});

/// Lexicographically first (d+1)-set of vertices that kernel_framework can
/// pin. Throws WrongRank / PinningFailed like kernel_framework.
std::vector<int> default_pins(const StressMatrix& omega, int d, const TolerancePolicy& policy = {});

/// Origin followed by the standard basis points of R^d.
Matrix canonical_simplex(int d);

}  // namespace stresskit
