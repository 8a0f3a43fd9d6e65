// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "support.hpp"
#include "stresskit/errors.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace stresskit;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Framework grid_framework(const Graph& g, int d, Rng& rng) {
  std::uniform_int_distribution<int> coord(0, 2);
  Matrix p(g.num_vertices(), d);
  for (int i = 0; i < p.rows(); ++i)
    for (int a = 0; a < d; ++a) p(i, a) = coord(rng);
  return Framework(g, d, p);
}

StressMatrix random_stress(const Framework& f, Rng& rng) {
  const SubspaceBasis basis = stress_space(f);
  Vector w = Vector::Zero(f.graph().num_edges());
  if (!basis.empty()) w = basis.vectors * gaussian_vector(basis.dim(), rng);
  return to_matrix(f.graph(), {w});
}

// 1. s - f = m - dn + d(d+1)/2 with ranks from an independently assembled rigidity matrix.
Verdict maxwell_suite() {
  const auto start = Clock::now();
  Rng rng(1);
  int failures = 0, total = 0;
  for (const auto& c : testing::builtin_cases()) {
    const int n = c.graph.num_vertices(), m = c.graph.num_edges(), d = c.d;
    for (int t = 0; t < 100; ++t) {
      const Framework f = random_framework(c.graph, d, rng);
      const Matrix r = testing::rigidity_matrix_by_rows(f);
      const int rank = numeric_rank(r);
      const int s = m - rank;
      const int flex = d * n - rank - d * (d + 1) / 2;
      if (s - flex != m - d * n + d * (d + 1) / 2 || stress_space(f).dim() != s) ++failures;
      ++total;
    }
  }
  const double secs = seconds_since(start);
  return {failures == 0 && secs < 10.0,
          std::to_string(total) + " frameworks, " + std::to_string(failures) + " mismatches, " +
              std::to_string(secs) + " s"};
}

// 2. Kernel-route Gstress test vs brute-force column enumeration.
Verdict gale_oracle() {
  Rng rng(2);
  int disagreements = 0, total = 0, positives = 0;
  for (const auto& c : testing::builtin_cases()) {
    if (c.graph.num_vertices() > 9) continue;
    std::optional<GstressSampler> sampler;
    try {
      sampler.emplace(c.graph, c.d, StressRoute::Lss);
    } catch (const Error&) {
    }
    for (int t = 0; t < 50; ++t) {
      StressMatrix om;
      if (t % 3 == 2 && sampler) {
        om = sampler->sample(derive_seed(2, static_cast<std::uint64_t>(t))).stress;
      } else {
        const Framework f = t % 3 == 0 ? random_framework(c.graph, c.d, rng) : grid_framework(c.graph, c.d, rng);
        om = random_stress(f, rng);
      }
      const bool kernel_route = classify(c.graph, om, c.d).is_gstress;
      if (kernel_route != testing::gstress_by_column_enumeration(om.matrix(), c.d)) ++disagreements;
      if (kernel_route) ++positives;
      ++total;
    }
  }
  return {disagreements == 0, std::to_string(total) + " stresses (" + std::to_string(positives) + " Gstress), " +
                                  std::to_string(disagreements) + " disagreements"};
}

// 3. readoff(rho(w)) = w; rank and Gstress rate.
Verdict rubber_band_round_trip() {
  Rng rng(3);
  std::string detail;
  bool pass = true;
  for (const auto& [name, g, rank] : std::vector<std::tuple<std::string, Graph, int>>{
           {"W5", builtin::wheel(5), 3}, {"K4", builtin::complete(4), 1}}) {
    const std::vector<int> h{0, 1, 2};
    const int count = static_cast<int>(non_clique_edges(g, h).size());
    double worst = 0.0;
    int exact_rank = 0, gstress = 0;
    for (int t = 0; t < 100; ++t) {
      const Vector w = random_rubber_band_weights(count, rng);
      try {
        const RubberBandResult r = rubber_band_stress({g, 2, h, w, std::nullopt});
        if (numeric_rank(r.stress.matrix()) == rank) ++exact_rank;
        if (testing::gstress_by_column_enumeration(r.stress.matrix(), 2)) ++gstress;
        worst = std::max(worst, (rubber_band_readoff(g, r.stress, h, 2) - w).cwiseAbs().maxCoeff());
      } catch (const Error&) {
        worst = std::max(worst, 1.0);
      }
    }
    pass = pass && worst <= 1e-8 && exact_rank == 100 && gstress >= 99;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s max err %.2e, rank %d/100, Gstress %d/100; ", name.c_str(), worst, exact_rank,
                  gstress);
    detail += buf;
  }
  return {pass, detail};
}

// 4. Jacobian rank m - d(d+1)/2 at 10 points.
Verdict dimension_probes() {
  bool pass = true;
  std::string detail;
  for (const auto& [name, g, route, target] : std::vector<std::tuple<std::string, Graph, StressRoute, int>>{
           {"W5", builtin::wheel(5), StressRoute::RubberBand, 7},
           {"K4", builtin::complete(4), StressRoute::RubberBand, 3},
           {"prism3/lss", builtin::prism(3), StressRoute::Lss, 6}}) {
    const GstressSampler sampler(g, 2, route);
    int hits = 0;
    for (std::uint64_t p = 0; p < 10; ++p)
      if (sampler.stress_jacobian_rank(derive_seed(4, p)) == target) ++hits;
    pass = pass && hits == 10;
    detail += name + " rank " + std::to_string(target) + " at " + std::to_string(hits) + "/10; ";
  }
  return {pass, detail};
}

// 5. Orthogonality Jacobian rank 6 and tangent dimension 12 on the prism.
Verdict gor_tangent() {
  const Graph prism = builtin::prism(3);
  const int n = 6, d = 2, m = prism.num_edges();
  const int nonedges = n * (n - 1) / 2 - m;
  int hits = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const OrthogonalRep rep = build_gor(prism, d, euclidean_signature(n - d - 1), derive_seed(5, s));
    const int rank = numeric_rank(orthogonality_jacobian(rep));
    const int tangent = n * rep.dim() - rank;
    if (rank == nonedges && rank == 6 && tangent == n * (n - d) - n * (n + 1) / 2 + m && tangent == 12) ++hits;
  }
  return {hits == 10, "rank 6 / tangent 12 at " + std::to_string(hits) + "/10 GORs"};
}

// 6. LSS stresses: PSD of rank n-d-1, general-position kernel frameworks, rigid => super stable.
Verdict lss_chain() {
  bool pass = true;
  std::string detail;
  for (const auto& [name, g] : std::vector<std::pair<std::string, Graph>>{{"prism3", builtin::prism(3)},
                                                                          {"W5", builtin::wheel(5)}}) {
    const int n = g.num_vertices(), d = 2;
    int psd_rank = 0, general = 0, rigid = 0, stable = 0;
    for (std::uint64_t s = 0; s < 50; ++s) {
      const std::uint64_t seed = derive_seed(6, s);
      const OrthogonalRep gor = build_gor(g, d, euclidean_signature(n - d - 1), seed);
      Rng rng(derive_seed(seed, 1));
      const StressMatrix om = lss_stress(center_gor(gor, rng).centered);
      const Vector ev = symmetric_eigenvalues(om.matrix());
      if (ev.minCoeff() >= -1e-9 * ev.cwiseAbs().maxCoeff() && numeric_rank(om.matrix()) == n - d - 1) ++psd_rank;
      try {
        const Framework kf = kernel_framework(g, om, d);
        if (testing::affine_general_position_by_differences(kf.coords())) ++general;
        if (infinitesimally_rigid(kf)) {
          ++rigid;
          if (super_stable(kf, om)) ++stable;
        }
      } catch (const Error&) {
      }
    }
    pass = pass && psd_rank == 50 && general == 50 && stable == rigid;
    detail += name + " PSD+rank " + std::to_string(psd_rank) + "/50, general position " + std::to_string(general) +
              "/50, super stable " + std::to_string(stable) + "/" + std::to_string(rigid) + " rigid; ";
  }
  return {pass, detail};
}

// 7. GGR verdicts within 50 trials and 5 s.
Verdict ggr_verdicts() {
  const auto start = Clock::now();
  const bool k4 = ggr_test(builtin::complete(4), 2, 50, 7).verdict == "YES";
  const bool c4 = ggr_test(builtin::cycle(4), 1, 50, 7).verdict == "YES";
  const CertificateReport prism = ggr_test(builtin::prism(3), 2, 50, 7);
  const bool k33 = ggr_test(builtin::complete_bipartite(3, 3), 2, 50, 7).verdict == "NO";
  const CertificateReport path = ggr_test(builtin::path(4), 1, 50, 7);
  const bool path_gate = path.verdict == "NO" && path.trials == 0;
  const double secs = seconds_since(start);
  const bool pass = k4 && c4 && prism.verdict == "NO" && k33 && path_gate && secs < 5.0;
  return {pass, std::string("K4 ") + (k4 ? "YES" : "?") + ", C4 " + (c4 ? "YES" : "?") + ", prism3 " +
                    prism.verdict.get<std::string>() + " (max rank " + prism.observed.dump() + " < 3), K33 " +
                    (k33 ? "NO" : "?") + ", path " + (path_gate ? "NO by gate" : "?") + ", " + std::to_string(secs) +
                    " s"};
}

// 8. certify-ur with independent re-verification and 20/20 perturbations.
Verdict universal_rigidity() {
  bool pass = true;
  std::string detail;
  for (const auto& [name, g] :
       std::vector<std::pair<std::string, Graph>>{{"K4", builtin::complete(4)}, {"W5", builtin::wheel(5)}}) {
    try {
      const UniversallyRigidResult r = construct_universally_rigid(g, 2, 8, 10);
      const int n = g.num_vertices();
      const Matrix& om = r.stress.matrix();
      const bool rigid = numeric_rank(testing::rigidity_matrix_by_rows(r.framework)) == 2 * n - 3;
      const bool psd = symmetric_eigenvalues(om).minCoeff() >= -1e-9 * om.norm();
      const bool rank = numeric_rank(om) == n - 3;
      const bool equilibrium = equilibrium_residual(r.framework, r.stress) <= 1e-9;
      const bool conic = numeric_rank(conic_monomials(r.framework)) < 3;
      Rng rng(88);
      const int survived = perturbation_survivals(r.framework, r.stress, 20, 1e-6, rng);
      const bool ok = rigid && psd && rank && equilibrium && !conic && survived == 20 && r.report.trials <= 10;
      pass = pass && ok;
      detail += name + (ok ? " ok" : " FAILED") + " after " + std::to_string(r.report.trials) + " trial(s), " +
                std::to_string(survived) + "/20 perturbations; ";
    } catch (const Error& e) {
      pass = false;
      detail += name + " error " + e.what() + "; ";
    }
  }
  return {pass, detail};
}

// 9. stressedCorank vs corank over 200 samples.
Verdict corank_separation() {
  auto stats = [](const Graph& g, int d) {
    const CertificateReport r = corank_stats(g, d, 200, 9);
    return std::make_pair(r.verdict.at("corank").get<int>(), r.verdict.at("stressed_corank").get<int>());
  };
  const auto k4 = stats(builtin::complete(4), 2);
  const auto c4 = stats(builtin::cycle(4), 1);
  const auto prism = stats(builtin::prism(3), 2);
  const bool pass = k4.first == k4.second && c4.first == c4.second && prism.second > prism.first;
  auto fmt = [](const std::pair<int, int>& p) {
    return std::to_string(p.first) + "/" + std::to_string(p.second);
  };
  return {pass, "corank/stressedCorank K4 " + fmt(k4) + ", C4 " + fmt(c4) + ", prism3 " + fmt(prism)};
}

// 10. Load resolution round trip and equilibrium-load dimension.
Verdict statics_suite() {
  Rng rng(10);
  const std::vector<std::pair<Graph, int>> isostatic = {
      {builtin::complete(3), 2}, {builtin::prism(3), 2}, {builtin::complete(4), 3}, {builtin::path(5), 1}};
  double worst = 0.0;
  int resolved = 0;
  for (int t = 0; t < 100; ++t) {
    const auto& [g, d] = isostatic[static_cast<std::size_t>(t) % isostatic.size()];
    const Framework f = random_framework(g, d, rng);
    const Vector rho = gaussian_vector(g.num_edges(), rng);
    const Load load{Matrix(f.num_vertices(), d)};
    Load induced = load;
    const Vector flat = testing::rigidity_matrix_by_rows(f).transpose() * rho;
    for (int i = 0; i < f.num_vertices(); ++i)
      for (int a = 0; a < d; ++a) induced.forces(i, a) = flat(i * d + a);
    try {
      const Resolution r = resolve_load(f, induced);
      const Matrix back = induced_load(f, r.weights).forces;
      worst = std::max({worst, (back - induced.forces).cwiseAbs().maxCoeff(), (r.weights - rho).cwiseAbs().maxCoeff()});
      ++resolved;
    } catch (const Error&) {
    }
  }
  int dims = 0, cases = 0;
  for (int d = 1; d <= 3; ++d) {
    for (int n = d + 1; n <= 8; ++n) {
      const Matrix coords = gaussian_matrix(n, d, rng);
      if (static_cast<int>(kernel_basis(equilibrium_load_constraints(coords)).dim()) == d * n - d * (d + 1) / 2) ++dims;
      ++cases;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/100 resolved, max residual %.2e, load-space dimension %d/%d", resolved, worst,
                dims, cases);
  return {resolved == 100 && worst <= 1e-9 && dims == cases, buf};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"1 Maxwell index", maxwell_suite},
      {"2 Gale duality oracle", gale_oracle},
      {"3 rubber-band round trip", rubber_band_round_trip},
      {"4 Gstress dimension probe", dimension_probes},
      {"5 GOR tangent count", gor_tangent},
      {"6 LSS super stability chain", lss_chain},
      {"7 GGR verdicts", ggr_verdicts},
      {"8 universal rigidity certificate", universal_rigidity},
      {"9 corank separation", corank_separation},
      {"10 statics", statics_suite},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v{false, ""};
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::printf("[%s] %s: %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
