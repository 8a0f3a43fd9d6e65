#pragma once

#include "stresskit/constructions.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace stresskit {

enum class ReportKind { GGR, SuperStable, CorankStats, DimensionProbe };
enum class Caveat { CertifiedGeneric, Probabilistic };

std::string to_string(ReportKind kind);
std::string to_string(Caveat caveat);

/// Structured verdict with enough evidence (seed, policy, counts) to re-run it.
struct CertificateReport {
  ReportKind kind = ReportKind::GGR;
  nlohmann::json verdict;
  nlohmann::json target;
  nlohmann::json observed;
  int trials = 0;
  std::uint64_t seed = 0;
  TolerancePolicy tolerance;
  Caveat caveat = Caveat::Probabilistic;
  nlohmann::json evidence = nlohmann::json::array();

  /// {kind, verdict, target, observed, trials, seed, tolerance, caveat, evidence}
  nlohmann::json to_json() const;
};

inline constexpr int kDefaultGgrTrials = 50;
inline constexpr int kDefaultCorankSamples = 200;
inline constexpr int kDefaultProbePoints = 10;
inline constexpr int kDefaultUrRetries = 10;
inline constexpr double kDifferenceStep = 1e-6;

/// Randomized generic global rigidity test. Graphs that are not
/// (d+1)-connected get NO without sampling; otherwise YES iff some random
/// framework has a stress of rank n-d-1.
CertificateReport ggr_test(const Graph& g, int d, int trials = kDefaultGgrTrials, std::uint64_t seed = 0,
                           const TolerancePolicy& policy = {});

/// PSD, rank n-d-1, and edge directions off every conic at infinity.
/// Throws NotAStress if Ω is not an equilibrium stress of f and
/// SpanDeficient if f does not span R^d.
bool super_stable(const Framework& f, const StressMatrix& omega, const TolerancePolicy& policy = {});

struct UniversallyRigidResult {
  Framework framework;
  StressMatrix stress;
  CertificateReport report;
};

/// GOR -> centering -> LSS stress -> kernel framework, retried until the
/// kernel framework is infinitesimally rigid. Requires ggr_test YES.
UniversallyRigidResult construct_universally_rigid(const Graph& g, int d, std::uint64_t seed = 0,
                                                   int retry_cap = kDefaultUrRetries,
                                                   const TolerancePolicy& policy = {});

/// Perturbs f by `magnitude`-scaled Gaussian noise `trials` times and counts
/// how often the perturbed stress space still holds a PSD stress of rank
/// n-d-1 (the projection of Ω's weights onto the new stress space).
int perturbation_survivals(const Framework& f, const StressMatrix& omega, int trials, double magnitude, Rng& rng,
                           const TolerancePolicy& policy = {});

enum class StressRoute { Auto, RubberBand, Lss };

std::string to_string(StressRoute route);

/// A sampled Gstress candidate with its pinned kernel framework.
struct StressSample {
  StressMatrix stress;
  Framework framework;
  StressClass classification;
};

/// Draws stresses through the rubber-band map (graph has a K_{d+1}) or the
/// Euclidean LSS pipeline otherwise. Throws NotConnectedEnough when the graph
/// is not (d+1)-connected.
class GstressSampler {
 public:
  GstressSampler(const Graph& g, int d, StressRoute route, const TolerancePolicy& policy = {});

  StressRoute route() const { return route_; }
  const std::optional<std::vector<int>>& clique() const { return clique_; }

  StressSample sample(std::uint64_t seed) const;

  /// Finite-difference Jacobian rank of the stress parameterization at the
  /// point drawn from `seed`: weights -> Ω for the rubber-band map, centered
  /// GOR tangent directions -> Ω for the LSS map.
  int stress_jacobian_rank(std::uint64_t seed) const;

  /// Finite-difference Jacobian rank of the same parameterization composed
  /// with the stress -> pinned kernel framework map.
  int framework_jacobian_rank(std::uint64_t seed) const;

 private:
  Graph graph_;
  int d_;
  StressRoute route_;
  TolerancePolicy policy_;
  std::optional<std::vector<int>> clique_;
};

/// corank(G) and stressedCorank(G) estimates plus the dimension identity
/// dim(Gstressable) = m + d(d+1)/2 - stressedCorank.
CertificateReport corank_stats(const Graph& g, int d, int samples = kDefaultCorankSamples, std::uint64_t seed = 0,
                               const TolerancePolicy& policy = {}, StressRoute route = StressRoute::Auto);

/// Jacobian rank of the stress parameterization at several random points
/// against the target m - d(d+1)/2.
CertificateReport dimension_probe(const Graph& g, int d, std::uint64_t seed = 0, const TolerancePolicy& policy = {},
                                  StressRoute route = StressRoute::Auto, int points = kDefaultProbePoints);

}  // namespace stresskit
