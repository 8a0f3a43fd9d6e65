#pragma once

#include "stresskit/stresses.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stresskit {

// ---------------------------------------------------------------------------
// Rubber-band parameterization (graphs containing a K_{d+1}).

struct RubberBandInput {
  Graph graph;
  int d = 0;
  /// Vertices of a K_{d+1}, increasing.
  std::vector<int> clique;
  /// One weight per edge not inside the clique, in sorted edge order.
  Vector weights;
  /// Positions for the clique vertices ((d+1) x d); canonical simplex if absent.
  std::optional<Matrix> clique_positions;
};

struct RubberBandResult {
  StressMatrix stress;
  Framework framework;
  StressClass classification;
  /// 2-norm condition number of the free-vertex equilibrium system.
  double condition_number = 0.0;
};

/// Indices (into g.edges()) of the edges with at least one endpoint off the clique.
std::vector<int> non_clique_edges(const Graph& g, const std::vector<int>& clique);

/// Pins the clique, solves the free-vertex equilibrium system under the given
/// weights, resolves the resultant load on the clique and assembles Ω.
/// Throws NotConnectedEnough, InvalidInput (bad clique or weight count) or
/// OutsideDomain (singular equilibrium system).
RubberBandResult rubber_band_stress(const RubberBandInput& input, const TolerancePolicy& policy = {});

/// The off-clique weights of a Gstress. Throws WrongRank / InvalidInput when
/// Ω is not a Gstress.
Vector rubber_band_readoff(const Graph& g, const StressMatrix& omega, const std::vector<int>& clique, int d,
                           const TolerancePolicy& policy = {});

/// Weights drawn uniformly from [0.25, 2].
Vector random_rubber_band_weights(int count, Rng& rng);

// ---------------------------------------------------------------------------
// Orthogonal representations and LSS stresses.

/// Signs s_k of the form <x,y> = Σ s_k x_k y_k.
using Signature = std::vector<int>;

Signature euclidean_signature(int dim);
/// Parses strings like "+++-". Throws InvalidInput on other characters.
Signature parse_signature(const std::string& text);
std::string format_signature(const Signature& s);

/// Vectors v_i (columns of a D x n matrix) with <v_i, v_j>_S = 0 on non-edges.
struct OrthogonalRep {
  Graph graph;
  Matrix vectors;
  Signature signature;

  int dim() const { return static_cast<int>(vectors.rows()); }
  Matrix gram() const;
};

inline constexpr int kDefaultGorRetries = 50;

/// Randomized greedy GOR in dimension n-d-1: each v_i is a Gaussian
/// combination of a basis of the vectors S-orthogonal to its placed
/// non-neighbours. Verified for general position; retried with fresh
/// randomness up to `retries` times (ConstructionFailed afterwards).
OrthogonalRep build_gor(const Graph& g, int d, const Signature& signature, std::uint64_t seed,
                        const TolerancePolicy& policy = {}, int retries = kDefaultGorRetries);

/// Largest |<v_i, v_j>_S| over non-edges.
double orthogonality_residual(const OrthogonalRep& rep);

IndependenceCheck gor_general_position(const OrthogonalRep& rep, const TolerancePolicy& policy = {});

/// Locally full spanning: every vertex i has d neighbours whose removal
/// (together with i) leaves D independent vectors.
bool is_for(const OrthogonalRep& rep, const TolerancePolicy& policy = {});

struct CenteringResult {
  Vector alpha;
  OrthogonalRep centered;
};

/// Random all-nonzero α in the kernel of the configuration matrix, so that
/// Σ α_i v_i = 0. Throws InvalidInput if v is not a FOR and ConstructionFailed
/// if no all-nonzero α turns up within the retry cap.
CenteringResult center_gor(const OrthogonalRep& rep, Rng& rng, const TolerancePolicy& policy = {},
                           int retries = kDefaultGorRetries);

/// Ω = Xᵀ S X for a centered representation. Throws NotCentered.
StressMatrix lss_stress(const OrthogonalRep& rep, const TolerancePolicy& policy = {});

/// Jacobian (#non-edges x nD) of the non-edge orthogonality constraints;
/// vertex i occupies columns [i*D, (i+1)*D).
Matrix orthogonality_jacobian(const OrthogonalRep& rep);

/// Orthogonality constraints plus the D barycenter equations.
Matrix centered_constraint_jacobian(const OrthogonalRep& rep);

Vector flatten_vectors(const OrthogonalRep& rep);
OrthogonalRep with_flat_vectors(const OrthogonalRep& rep, const Vector& flat);

/// Edge weights of the raw Gram matrix Xᵀ S X (no validation).
Vector gram_edge_weights(const OrthogonalRep& rep);

}  // namespace stresskit
