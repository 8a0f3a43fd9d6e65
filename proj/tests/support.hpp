#pragma once

// Fixtures and independent oracles shared by the unit and acceptance suites.
// Nothing here calls the library routine it is used to check.

#include "stresskit/certificates.hpp"
#include "stresskit/statics.hpp"

#include <vector>

namespace stresskit::testing {

/// Vertices 0..3 at (0,0), (1,0), (0,1), (1,1).
Matrix unit_square();
/// Vertex k at angle k*60 degrees on the unit circle.
Matrix hexagon_on_circle();

/// Sides +1, diagonals -1 on K_4 at unit_square(), i.e. Ω = u uᵀ with u = (1,-1,-1,1).
Matrix k4_square_stress_matrix();

/// Direct rank-plus-every-column-subset test of the Gstress definition.
bool gstress_by_column_enumeration(const Matrix& omega, int d, const TolerancePolicy& policy = {});

/// For every k <= d+1 points, checks that the k-1 difference vectors are independent.
bool affine_general_position_by_differences(const Matrix& coords, const TolerancePolicy& policy = {});

/// Smallest vertex set whose removal disconnects g (n-1 for complete graphs).
int vertex_connectivity_by_removal(const Graph& g);

/// Connected components after deleting `removed`.
bool connected_without(const Graph& g, const std::vector<int>& removed);

/// Translations and infinitesimal rotations of coords, one per column (dn x d(d+1)/2).
Matrix trivial_motions(const Matrix& coords);

/// Entry-by-entry rigidity matrix assembled from the edge list.
Matrix rigidity_matrix_by_rows(const Framework& f);

/// Builtin graphs paired with the dimension they are exercised in.
struct GraphCase {
  std::string name;
  Graph graph;
  int d;
};
std::vector<GraphCase> builtin_cases();

}  // namespace stresskit::testing
