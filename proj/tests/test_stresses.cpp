#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "stresskit/errors.hpp"

#include <functional>

using namespace stresskit;
using stresskit::testing::GraphCase;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::InvalidInput;
}

// A random combination of the stress space, or nullopt if there is none.
std::optional<StressMatrix> random_stress(const Framework& f, Rng& rng) {
  const SubspaceBasis basis = stress_space(f);
  if (basis.empty()) return std::nullopt;
  const Vector w = basis.vectors * gaussian_vector(basis.dim(), rng);
  return to_matrix(f.graph(), {w});
}

// Does some affine map carry p onto q?
bool affinely_equivalent(const Matrix& p, const Matrix& q) {
  const int n = static_cast<int>(p.rows());
  Matrix lifted(n, p.cols() + 1);
  lifted << p, Vector::Ones(n);
  const Matrix map = lifted.completeOrthogonalDecomposition().solve(q);
  return (lifted * map - q).cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, q.cwiseAbs().maxCoeff());
}

// Integer grid points: plenty of collinear triples and repeated points.
Framework grid_framework(const Graph& g, int d, Rng& rng) {
  std::uniform_int_distribution<int> coord(0, 2);
  Matrix p(g.num_vertices(), d);
  for (int i = 0; i < p.rows(); ++i)
    for (int a = 0; a < d; ++a) p(i, a) = coord(rng);
  return Framework(g, d, p);
}

}  // namespace

TEST_CASE("stress_space examples") {
  Rng rng(3);
  Matrix tri(3, 2);
  tri << 0.1, 0.2, 1.3, -0.4, 0.5, 1.7;
  CHECK(stress_space(Framework(builtin::complete(3), 2, tri)).empty());

  const Framework square(builtin::complete(4), 2, testing::unit_square());
  const SubspaceBasis s = stress_space(square);
  REQUIRE(s.dim() == 1);
  // edges (0,1) (0,2) (0,3) (1,2) (1,3) (2,3): sides +1, diagonals -1
  Vector expected(6);
  expected << 1, 1, -1, -1, 1, 1;
  const Vector w = s.vectors.col(0);
  CHECK(std::abs(std::abs(w.dot(expected.normalized())) - 1.0) <= 1e-12);
  CHECK(std::abs(w.norm() - 1.0) <= 1e-12);

  const Graph k33 = builtin::complete_bipartite(3, 3);
  CHECK(stress_space(random_framework(k33, 2, rng)).empty());
  CHECK(stress_space(Framework(k33, 2, testing::hexagon_on_circle())).dim() == 1);
}

TEST_CASE("to_matrix examples") {
  const Graph k4 = builtin::complete(4);
  CHECK(to_matrix(k4, {Vector::Zero(6)}).matrix().norm() == 0.0);

  const Graph single(2, {{0, 1}});
  Vector one(1);
  one << 1.0;
  Matrix expected(2, 2);
  expected << 1, -1, -1, 1;
  CHECK(to_matrix(single, {one}).matrix() == expected);

  Vector square(6);
  square << 1, 1, -1, -1, 1, 1;
  CHECK((to_matrix(k4, {square}).matrix() - testing::k4_square_stress_matrix()).norm() == 0.0);
  CHECK(edge_weights(k4, to_matrix(k4, {square})).weights == square);
}

TEST_CASE("StressMatrix validation") {
  const Graph p3 = builtin::path(3);
  Matrix bad = Matrix::Zero(3, 3);
  bad(0, 2) = bad(2, 0) = 1.0;
  bad(0, 0) = bad(2, 2) = -1.0;
  CHECK(kind_of([&] { StressMatrix(p3, bad); }) == ErrorKind::NotAStressMatrix);
  Matrix asym = Matrix::Zero(3, 3);
  asym(0, 1) = 1.0;
  asym(0, 0) = -1.0;
  CHECK(kind_of([&] { StressMatrix(p3, asym); }) == ErrorKind::NotAStressMatrix);
  Matrix unbalanced = Matrix::Zero(3, 3);
  unbalanced(0, 1) = unbalanced(1, 0) = -1.0;
  CHECK(kind_of([&] { StressMatrix(p3, unbalanced); }) == ErrorKind::NotAStressMatrix);
}

TEST_CASE("classify examples") {
  const Graph k4 = builtin::complete(4);
  const StressClass sq = classify(k4, StressMatrix(k4, testing::k4_square_stress_matrix()), 2);
  CHECK(sq.rank == 1);
  CHECK(sq.is_gstress);
  CHECK(sq.is_fstress);
  CHECK(sq.is_psd);
  const Vector ev = symmetric_eigenvalues(testing::k4_square_stress_matrix());
  CHECK(ev.maxCoeff() == doctest::Approx(4.0));

  const StressClass zero = classify(k4, StressMatrix(k4, Matrix::Zero(4, 4)), 2);
  CHECK(zero.rank == 0);
  CHECK_FALSE(zero.is_gstress);
  CHECK_FALSE(zero.is_fstress);

  const Graph k33 = builtin::complete_bipartite(3, 3);
  const Framework circle(k33, 2, testing::hexagon_on_circle());
  const SubspaceBasis s = stress_space(circle);
  REQUIRE(s.dim() == 1);
  const StressMatrix om = to_matrix(k33, {s.vectors.col(0)});
  const StressClass c = classify(k33, om, 2);
  CHECK(c.rank == 3);
  CHECK(c.is_gstress);
  CHECK(c.is_fstress);
  CHECK(testing::gstress_by_column_enumeration(om.matrix(), 2));
}

TEST_CASE("kernel_framework examples") {
  const Graph k4 = builtin::complete(4);
  const StressMatrix om(k4, testing::k4_square_stress_matrix());
  const Framework kf = kernel_framework(k4, om, 2, std::vector<int>{0, 1, 2});
  CHECK((kf.coords() - testing::unit_square()).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK(equilibrium_residual(kf, om) <= 1e-9);

  Rng rng(8);
  const Graph c4 = builtin::cycle(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Framework f = random_framework(c4, 1, rng);
    const SubspaceBasis s = stress_space(f);
    REQUIRE(s.dim() == 1);
    const StressMatrix cm = to_matrix(c4, {s.vectors.col(0)});
    const Framework back = kernel_framework(c4, cm, 1);
    CHECK(affinely_equivalent(f.coords(), back.coords()));
    CHECK((back.coords().topRows(2) - canonical_simplex(1)).cwiseAbs().maxCoeff() <= 1e-12);
  }

  CHECK(kind_of([&] { kernel_framework(k4, StressMatrix(k4, Matrix::Zero(4, 4)), 2); }) == ErrorKind::WrongRank);
  // a rank n-d-1 stress in the wrong dimension is a rank deficit there
  CHECK(kind_of([&] { kernel_framework(k4, om, 1); }) == ErrorKind::WrongRank);
}

TEST_CASE("kernel_framework rejects collinear pins") {
  const Graph w5 = builtin::wheel(5);
  Matrix p(6, 2);
  p << 0, 0, 1, 0, 0.7, 1.3, -2, 0, -0.6, -1.2, 0.9, -1.7;
  const Framework f(w5, 2, p);
  Rng rng(5);
  const auto om = random_stress(f, rng);
  REQUIRE(om.has_value());
  REQUIRE(numeric_rank(om->matrix()) == 3);
  CHECK(kind_of([&] { kernel_framework(w5, *om, 2, std::vector<int>{0, 1, 3}); }) == ErrorKind::PinningFailed);
  CHECK_FALSE(classify(w5, *om, 2).is_gstress);
  // the default pins skip the collinear triple
  CHECK(default_pins(*om, 2) == std::vector<int>{0, 1, 2});
}

TEST_CASE("stress vectors of a framework annihilate its lift") {
  Rng rng(21);
  for (const GraphCase& c : testing::builtin_cases()) {
    for (int trial = 0; trial < 10; ++trial) {
      const Framework f = random_framework(c.graph, c.d, rng);
      const SubspaceBasis s = stress_space(f);
      for (int k = 0; k < s.dim(); ++k) {
        const StressMatrix om = to_matrix(c.graph, {s.vectors.col(k)});
        CHECK(equilibrium_residual(f, om) <= 1e-9);
      }
    }
  }
}

TEST_CASE("Gale route agrees with column enumeration and with general position") {
  Rng rng(77);
  int gstresses = 0;
  int non_gstresses = 0;
  for (const GraphCase& c : testing::builtin_cases()) {
    for (int trial = 0; trial < 30; ++trial) {
      const Framework f = trial % 2 == 0 ? random_framework(c.graph, c.d, rng) : grid_framework(c.graph, c.d, rng);
      const auto om = random_stress(f, rng);
      if (!om) continue;
      const StressClass cls = classify(c.graph, *om, c.d);
      CAPTURE(c.name);
      CAPTURE(trial);
      CHECK(cls.is_gstress == testing::gstress_by_column_enumeration(om->matrix(), c.d));
      if (cls.is_gstress) {
        ++gstresses;
        CHECK(cls.is_fstress);
        CHECK(cls.rank == c.graph.num_vertices() - c.d - 1);
        const Framework kf = kernel_framework(c.graph, *om, c.d);
        CHECK(testing::affine_general_position_by_differences(kf.coords()));
        CHECK(equilibrium_residual(kf, *om) <= 1e-9);
      } else {
        ++non_gstresses;
      }
      if (cls.rank == c.graph.num_vertices() - c.d - 1 && affine_span_dim(f.coords()) == c.d) {
        CHECK(cls.is_gstress == testing::affine_general_position_by_differences(f.coords()));
      }
    }
  }
  CHECK(gstresses > 0);
  CHECK(non_gstresses > 0);
}

TEST_CASE("Fstress iff spanning neighbourhoods") {
  Rng rng(90);
  int checked = 0;
  int negatives = 0;
  for (const GraphCase& c : testing::builtin_cases()) {
    for (int trial = 0; trial < 40; ++trial) {
      const Framework f = trial % 4 == 0 ? random_framework(c.graph, c.d, rng) : grid_framework(c.graph, c.d, rng);
      const auto om = random_stress(f, rng);
      if (!om || numeric_rank(om->matrix()) != c.graph.num_vertices() - c.d - 1) continue;
      if (affine_span_dim(f.coords()) != c.d) continue;
      const StressClass cls = classify(c.graph, *om, c.d);
      CAPTURE(c.name);
      CHECK(cls.is_fstress == neighborhood_spans(f));
      ++checked;
      if (!cls.is_fstress) ++negatives;
    }
  }
  CHECK(checked > 20);
  MESSAGE("Fstress comparisons: " << checked << ", negatives: " << negatives);
}
