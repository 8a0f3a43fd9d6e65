#include "stresskit/certificates.hpp"

#include "stresskit/errors.hpp"

#include <algorithm>
#include <limits>

namespace stresskit {

std::string to_string(ReportKind kind) {
  switch (kind) {
    case ReportKind::GGR: return "GGR";
    case ReportKind::SuperStable: return "SuperStable";
    case ReportKind::CorankStats: return "CorankStats";
    case ReportKind::DimensionProbe: return "DimensionProbe";
  }
  return "Unknown";
}

std::string to_string(Caveat caveat) {
  return caveat == Caveat::CertifiedGeneric ? "certified-generic" : "probabilistic";
}

std::string to_string(StressRoute route) {
  switch (route) {
    case StressRoute::Auto: return "auto";
    case StressRoute::RubberBand: return "rubber-band";
    case StressRoute::Lss: return "lss";
  }
  return "unknown";
}

nlohmann::json CertificateReport::to_json() const {
  return {
      {"kind", to_string(kind)},
      {"verdict", verdict},
      {"target", target},
      {"observed", observed},
      {"trials", trials},
      {"seed", seed},
      {"tolerance", {{"rel_tol", tolerance.rel_tol}, {"abs_floor", tolerance.abs_floor}}},
      {"caveat", to_string(caveat)},
      {"evidence", evidence},
  };
}

namespace {

bool is_connected_enough(const Graph& g, int d) {
  return g.num_vertices() >= 2 && vertex_connectivity(g) >= d + 1;
}

int stress_dimension(const Framework& f, const TolerancePolicy& policy) {
  return static_cast<int>(stress_space(f, policy).dim());
}

}  // namespace

CertificateReport ggr_test(const Graph& g, int d, int trials, std::uint64_t seed, const TolerancePolicy& policy) {
  const int n = g.num_vertices();
  if (d < 1) throw Error(ErrorKind::InvalidInput, "dimension must be at least 1");
  if (n < d + 2) throw Error(ErrorKind::InvalidInput, "ggr test needs n >= d+2");
  if (trials < 1) throw Error(ErrorKind::InvalidInput, "at least one trial is required");

  CertificateReport report;
  report.kind = ReportKind::GGR;
  report.seed = seed;
  report.tolerance = policy;
  report.target = n - d - 1;

  const int connectivity = vertex_connectivity(g);
  if (connectivity < d + 1) {
    report.verdict = "NO";
    report.observed = nullptr;
    report.caveat = Caveat::CertifiedGeneric;
    report.evidence.push_back({{"gate", "connectivity"}, {"connectivity", connectivity}, {"required", d + 1}});
    return report;
  }

  int best_rank = -1;
  report.verdict = "NO";
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const Framework f = random_framework(g, d, rng);
    const SubspaceBasis stresses = stress_space(f, policy);
    int rank = 0;
    if (!stresses.empty()) {
      const StressVector omega{stresses.vectors * gaussian_vector(stresses.dim(), rng)};
      rank = numeric_rank(to_matrix(g, omega).matrix(), policy);
    }
    best_rank = std::max(best_rank, rank);
    report.trials = t + 1;
    report.evidence.push_back({{"trial", t}, {"stress_dim", stresses.dim()}, {"rank", rank}});
    if (rank == n - d - 1) {
      report.verdict = "YES";
      break;
    }
  }
  report.observed = best_rank;
  return report;
}

bool super_stable(const Framework& f, const StressMatrix& omega, const TolerancePolicy& policy) {
  const int n = f.num_vertices();
  const int d = f.dim();
  if (omega.num_vertices() != n) throw Error(ErrorKind::InvalidInput, "stress matrix size differs from framework");
  if (affine_span_dim(f.coords(), policy) < d) {
    throw Error(ErrorKind::SpanDeficient, "framework does not affinely span R^" + std::to_string(d));
  }
  const double residual = equilibrium_residual(f, omega);
  if (!(residual <= std::max(policy.rel_tol, 1e-9) * static_cast<double>(n))) {
    throw Error(ErrorKind::NotAStress, "equilibrium residual " + std::to_string(residual));
  }
  return is_psd(omega.matrix(), policy) && numeric_rank(omega.matrix(), policy) == n - d - 1 &&
         !on_conic_at_infinity(f, policy);
}

int perturbation_survivals(const Framework& f, const StressMatrix& omega, int trials, double magnitude, Rng& rng,
                           const TolerancePolicy& policy) {
  const Graph& g = f.graph();
  const int target = f.num_vertices() - f.dim() - 1;
  const Vector weights = edge_weights(g, omega).weights;
  int survived = 0;
  for (int t = 0; t < trials; ++t) {
    const Framework moved(g, f.dim(), f.coords() + magnitude * gaussian_matrix(f.num_vertices(), f.dim(), rng));
    const SubspaceBasis space = stress_space(moved, policy);
    if (space.empty()) continue;
    const StressVector nearest{space.vectors * (space.vectors.transpose() * weights)};
    const StressMatrix candidate = to_matrix(g, nearest);
    if (is_psd(candidate.matrix(), policy) && numeric_rank(candidate.matrix(), policy) == target) ++survived;
  }
  return survived;
}

UniversallyRigidResult construct_universally_rigid(const Graph& g, int d, std::uint64_t seed, int retry_cap,
                                                   const TolerancePolicy& policy) {
  if (!is_connected_enough(g, d)) {
    throw Error(ErrorKind::NotConnectedEnough, "graph is not " + std::to_string(d + 1) + "-connected");
  }
  const CertificateReport ggr = ggr_test(g, d, kDefaultGgrTrials, seed, policy);
  if (ggr.verdict != "YES") {
    throw Error(ErrorKind::ConstructionFailed, "graph is not generically globally rigid (ggr verdict NO)");
  }

  const int n = g.num_vertices();
  nlohmann::json attempts = nlohmann::json::array();
  for (int t = 0; t < retry_cap; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, 1000 + static_cast<std::uint64_t>(t));
    nlohmann::json diag = {{"trial", t}, {"seed", trial_seed}};
    try {
      const OrthogonalRep gor = build_gor(g, d, euclidean_signature(n - d - 1), trial_seed, policy);
      Rng rng(derive_seed(trial_seed, 1));
      const CenteringResult centered = center_gor(gor, rng, policy);
      StressMatrix stress = lss_stress(centered.centered, policy);
      Framework framework = kernel_framework(g, stress, d, std::nullopt, policy);
      const bool general = affine_general_position(framework.coords(), policy);
      const bool rigid = infinitesimally_rigid(framework, policy);
      diag["general_position"] = general;
      diag["infinitesimally_rigid"] = rigid;
      if (!rigid) {
        attempts.push_back(diag);
        continue;
      }
      const bool stable = super_stable(framework, stress, policy);
      diag["super_stable"] = stable;
      attempts.push_back(diag);
      if (!stable) continue;

      Rng wiggle(derive_seed(trial_seed, 2));
      const int survived = perturbation_survivals(framework, stress, 20, 1e-6, wiggle, policy);

      CertificateReport report;
      report.kind = ReportKind::SuperStable;
      report.verdict = true;
      report.target = {{"rank", n - d - 1}, {"psd", true}, {"conic_at_infinity", false}};
      report.observed = {{"rank", numeric_rank(stress.matrix(), policy)},
                         {"psd", is_psd(stress.matrix(), policy)},
                         {"conic_at_infinity", on_conic_at_infinity(framework, policy)},
                         {"infinitesimally_rigid", rigid},
                         {"equilibrium_residual", equilibrium_residual(framework, stress)}};
      report.trials = t + 1;
      report.seed = seed;
      report.tolerance = policy;
      report.caveat = Caveat::CertifiedGeneric;
      report.evidence = attempts;
      report.evidence.push_back({{"perturbation_trials", 20}, {"perturbation_magnitude", 1e-6},
                                 {"perturbation_survivals", survived}});
      report.evidence.push_back({{"implies", "universally rigid"}});
      return {std::move(framework), std::move(stress), std::move(report)};
    } catch (const Error& e) {
      diag["error"] = e.what();
      attempts.push_back(diag);
    }
  }
  throw Error(ErrorKind::ConstructionFailed,
              "no super stable framework within " + std::to_string(retry_cap) + " retries: " + attempts.dump());
}

// ---------------------------------------------------------------------------

GstressSampler::GstressSampler(const Graph& g, int d, StressRoute route, const TolerancePolicy& policy)
    : graph_(g), d_(d), route_(route), policy_(policy) {
  if (d < 1) throw Error(ErrorKind::InvalidInput, "dimension must be at least 1");
  if (!is_connected_enough(g, d) || g.num_vertices() < d + 2) {
    throw Error(ErrorKind::NotConnectedEnough, "graph is not " + std::to_string(d + 1) + "-connected");
  }
  if (route_ != StressRoute::Lss) clique_ = find_clique(g, d + 1);
  if (route_ == StressRoute::Auto) route_ = clique_ ? StressRoute::RubberBand : StressRoute::Lss;
  if (route_ == StressRoute::RubberBand && !clique_) {
    throw Error(ErrorKind::InvalidInput, "rubber-band route needs a K_{d+1} subgraph");
  }
}

namespace {

struct LssPoint {
  OrthogonalRep centered;
  Matrix tangent;  // nD x t
};

LssPoint lss_point(const Graph& g, int d, std::uint64_t seed, const TolerancePolicy& policy) {
  const OrthogonalRep gor = build_gor(g, d, euclidean_signature(g.num_vertices() - d - 1), derive_seed(seed, 0), policy);
  Rng rng(derive_seed(seed, 1));
  OrthogonalRep centered = center_gor(gor, rng, policy).centered;
  Matrix tangent = kernel_basis(centered_constraint_jacobian(centered), policy).vectors;
  return {std::move(centered), std::move(tangent)};
}

Vector flatten_rows(const Matrix& m) {
  Vector out(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i * m.cols() + j) = m(i, j);
  return out;
}

}  // namespace

StressSample GstressSampler::sample(std::uint64_t seed) const {
  if (route_ == StressRoute::RubberBand) {
    Rng rng(seed);
    const auto count = static_cast<int>(non_clique_edges(graph_, *clique_).size());
    RubberBandInput input{graph_, d_, *clique_, random_rubber_band_weights(count, rng), std::nullopt};
    RubberBandResult r = rubber_band_stress(input, policy_);
    return {std::move(r.stress), std::move(r.framework), r.classification};
  }
  const LssPoint point = lss_point(graph_, d_, seed, policy_);
  StressMatrix stress = lss_stress(point.centered, policy_);
  Framework framework = kernel_framework(graph_, stress, d_, std::nullopt, policy_);
  const StressClass cls = classify(graph_, stress, d_, policy_);
  return {std::move(stress), std::move(framework), cls};
}

int GstressSampler::stress_jacobian_rank(std::uint64_t seed) const {
  const TolerancePolicy relaxed = relaxed_for_differencing(policy_);
  if (route_ == StressRoute::RubberBand) {
    Rng rng(seed);
    const auto count = static_cast<int>(non_clique_edges(graph_, *clique_).size());
    const Vector w0 = random_rubber_band_weights(count, rng);
    auto map = [&](const Vector& w) {
      RubberBandInput input{graph_, d_, *clique_, w, std::nullopt};
      return edge_weights(graph_, rubber_band_stress(input, policy_).stress).weights;
    };
    return numeric_rank(finite_difference_jacobian(map, w0, kDifferenceStep), relaxed);
  }
  const LssPoint point = lss_point(graph_, d_, seed, policy_);
  const Vector y0 = flatten_vectors(point.centered);
  auto map = [&](const Vector& z) {
    return gram_edge_weights(with_flat_vectors(point.centered, y0 + point.tangent * z));
  };
  return numeric_rank(finite_difference_jacobian(map, Vector::Zero(point.tangent.cols()), kDifferenceStep), relaxed);
}

int GstressSampler::framework_jacobian_rank(std::uint64_t seed) const {
  const TolerancePolicy relaxed = relaxed_for_differencing(policy_);
  if (route_ == StressRoute::RubberBand) {
    Rng rng(seed);
    const auto count = static_cast<int>(non_clique_edges(graph_, *clique_).size());
    const Vector w0 = random_rubber_band_weights(count, rng);
    auto map = [&](const Vector& w) {
      RubberBandInput input{graph_, d_, *clique_, w, std::nullopt};
      return flatten_rows(rubber_band_stress(input, policy_).framework.coords());
    };
    return numeric_rank(finite_difference_jacobian(map, w0, kDifferenceStep), relaxed);
  }
  const LssPoint point = lss_point(graph_, d_, seed, policy_);
  const Vector y0 = flatten_vectors(point.centered);
  const std::vector<int> pins = default_pins(lss_stress(point.centered, policy_), d_, policy_);
  auto map = [&](const Vector& z) {
    const OrthogonalRep moved = with_flat_vectors(point.centered, y0 + point.tangent * z);
    const StressMatrix stress(graph_, moved.gram(), relaxed);
    return flatten_rows(kernel_framework(graph_, stress, d_, pins, policy_).coords());
  };
  return numeric_rank(finite_difference_jacobian(map, Vector::Zero(point.tangent.cols()), kDifferenceStep), relaxed);
}

CertificateReport corank_stats(const Graph& g, int d, int samples, std::uint64_t seed, const TolerancePolicy& policy,
                               StressRoute route) {
  if (samples < 1) throw Error(ErrorKind::InvalidInput, "at least one sample is required");
  const GstressSampler sampler(g, d, route, policy);
  const int m = g.num_edges();
  const int trivial = trivial_motion_count(d);

  int corank = std::numeric_limits<int>::max();
  int corank_max = 0;
  for (int s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    const int dim = stress_dimension(random_framework(g, d, rng), policy);
    corank = std::min(corank, dim);
    corank_max = std::max(corank_max, dim);
  }

  int stressed = std::numeric_limits<int>::max();
  int stressed_max = 0;
  int gstress_count = 0;
  int failures = 0;
  for (int s = 0; s < samples; ++s) {
    try {
      const StressSample sample = sampler.sample(derive_seed(seed, 100000 + static_cast<std::uint64_t>(s)));
      if (!sample.classification.is_gstress) continue;
      ++gstress_count;
      const int dim = stress_dimension(sample.framework, policy);
      stressed = std::min(stressed, dim);
      stressed_max = std::max(stressed_max, dim);
    } catch (const Error&) {
      ++failures;
    }
  }
  if (gstress_count == 0) {
    throw Error(ErrorKind::ConstructionFailed, "no Gstress sample out of " + std::to_string(samples));
  }

  const int jac_rank = sampler.framework_jacobian_rank(derive_seed(seed, 200000));
  const int dim_gstressable = jac_rank + d * (d + 1);
  const int identity_rhs = m + trivial - stressed;

  CertificateReport report;
  report.kind = ReportKind::CorankStats;
  report.verdict = {{"corank", corank}, {"stressed_corank", stressed}, {"identity_holds", dim_gstressable == identity_rhs}};
  report.target = identity_rhs;
  report.observed = dim_gstressable;
  report.trials = samples;
  report.seed = seed;
  report.tolerance = policy;
  report.caveat = Caveat::Probabilistic;
  report.evidence.push_back({{"route", to_string(sampler.route())},
                             {"corank_min", corank},
                             {"corank_max", corank_max},
                             {"stressed_corank_min", stressed},
                             {"stressed_corank_max", stressed_max},
                             {"gstress_samples", gstress_count},
                             {"failed_samples", failures}});
  report.evidence.push_back({{"framework_jacobian_rank", jac_rank},
                             {"affine_dimension", d * (d + 1)},
                             {"dim_gstressable", dim_gstressable},
                             {"m_plus_trivial_minus_stressed_corank", identity_rhs},
                             {"difference_step", kDifferenceStep}});
  return report;
}

CertificateReport dimension_probe(const Graph& g, int d, std::uint64_t seed, const TolerancePolicy& policy,
                                  StressRoute route, int points) {
  if (points < 1) throw Error(ErrorKind::InvalidInput, "at least one probe point is required");
  const GstressSampler sampler(g, d, route, policy);
  const int target = g.num_edges() - trivial_motion_count(d);
  int lo = std::numeric_limits<int>::max();
  int hi = 0;
  int hits = 0;
  CertificateReport report;
  for (int p = 0; p < points; ++p) {
    const int rank = sampler.stress_jacobian_rank(derive_seed(seed, static_cast<std::uint64_t>(p)));
    lo = std::min(lo, rank);
    hi = std::max(hi, rank);
    if (rank == target) ++hits;
    report.evidence.push_back({{"point", p}, {"jacobian_rank", rank}});
  }
  report.kind = ReportKind::DimensionProbe;
  report.verdict = hits == points;
  report.target = target;
  report.observed = {{"min_rank", lo}, {"max_rank", hi}, {"matching_points", hits}};
  report.trials = points;
  report.seed = seed;
  report.tolerance = policy;
  report.caveat = Caveat::Probabilistic;
  report.evidence.insert(report.evidence.begin(),
                         {{"route", to_string(sampler.route())}, {"difference_step", kDifferenceStep},
                          {"rank_rel_tol", relaxed_for_differencing(policy).rel_tol}});
  return report;
}

}  // namespace stresskit
