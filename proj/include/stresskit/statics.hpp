#pragma once

#include "stresskit/frameworks.hpp"

#include <vector>

namespace stresskit {

/// One force vector per vertex (n x d).
struct Load {
  Matrix forces;
};

/// One scalar per edge, in sorted edge order.
struct Resolution {
  Vector weights;
};

/// Σ f_i = 0 and Σ f_i ∧ p_i = 0, entrywise within a tolerance scaled by
/// n · max|f_i| (and by max|p_i| for the wedge sum).
bool is_equilibrium_load(const Matrix& coords, const Load& load, const TolerancePolicy& policy = {});

/// The load that edge weights ρ exert: f_i = -Σ_j ρ_ij (p_j - p_i).
Load induced_load(const Framework& f, const Vector& edge_weights);

/// Minimum-norm ρ with Σ_{j~i} ρ_ij (p_j - p_i) = -f_i at every vertex.
/// Throws NotEquilibrium for non-equilibrium loads and Unresolvable when the
/// least-squares residual exceeds the policy.
Resolution resolve_load(const Framework& f, const Load& load, const TolerancePolicy& policy = {});

/// Rows of `load` at `support`, in the given order. Throws InvalidInput if the
/// load is nonzero off the support.
Load restrict_load_to_support(const Load& load, const std::vector<int>& support,
                              const TolerancePolicy& policy = {});

/// Linear constraints (rows) whose kernel is the space of equilibrium loads,
/// with loads vectorized vertex-major like the rigidity matrix columns.
Matrix equilibrium_load_constraints(const Matrix& coords);

}  // namespace stresskit
