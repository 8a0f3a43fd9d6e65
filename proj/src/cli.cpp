#include "stresskit/cli.hpp"

#include "stresskit/certificates.hpp"
#include "stresskit/errors.hpp"
#include "stresskit/io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace stresskit::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string input;
  int dim = 2;
  std::uint64_t seed = 0;
  double rel_tol = 1e-9;
  double abs_floor = 1e-12;
  int trials = 0;  // 0: subcommand default
  std::string out_dir;
  std::string format = "json";
  std::string signature;
  bool random_weights = false;
  std::string weights_path;
  std::string route = "auto";
  std::string stress_path;
  std::string load_path;

  TolerancePolicy policy() const {
    TolerancePolicy p{rel_tol, abs_floor};
    p.validate();
    return p;
  }
  int trials_or(int fallback) const { return trials > 0 ? trials : fallback; }
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return kExitInput;
    case ErrorKind::ConstructionFailed:
    case ErrorKind::PinningFailed:
    case ErrorKind::NotConnectedEnough: return kExitConstruction;
    default: return kExitNumerical;
  }
}

StressRoute parse_route(const std::string& name) {
  if (name == "auto") return StressRoute::Auto;
  if (name == "rubber-band") return StressRoute::RubberBand;
  if (name == "lss") return StressRoute::Lss;
  throw Error(ErrorKind::InvalidInput, "unknown route '" + name + "'");
}

json tolerance_json(const TolerancePolicy& p) { return {{"rel_tol", p.rel_tol}, {"abs_floor", p.abs_floor}}; }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot write '" + path.string() + "'");
  f << content;
}

std::string stress_csv(const Matrix& m) {
  std::ostringstream s;
  io::write_stress_csv(s, m);
  return s.str();
}

void print_human(std::ostream& out, const json& j, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      print_human(out, *it, key);
    } else {
      out << key << ": " << it->dump() << '\n';
    }
  }
}

// Emits the report on stdout and, with --out, report.json plus artifacts.
void emit(const RunConfig& cfg, std::ostream& out, const json& report, const Matrix* stress = nullptr,
          const Framework* framework = nullptr) {
  if (!cfg.out_dir.empty()) {
    const std::filesystem::path dir(cfg.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::InvalidInput, "cannot create '" + cfg.out_dir + "'");
    write_file(dir / "report.json", report.dump(2) + "\n");
    if (stress) write_file(dir / "stress.csv", stress_csv(*stress));
    if (framework) write_file(dir / "framework.json", io::framework_to_json(*framework).dump(2) + "\n");
  }
  if (cfg.format == "human") {
    print_human(out, report);
  } else if (cfg.format == "csv" && stress) {
    io::write_stress_csv(out, *stress);
  } else {
    out << report.dump(2) << '\n';
  }
}

void cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const TolerancePolicy policy = cfg.policy();
  const Framework f = io::framework_from_json(io::read_json_file(cfg.input));
  const Graph& g = f.graph();
  const int d = f.dim();
  const int rank = numeric_rank(rigidity_matrix(f), policy);
  const SubspaceBasis stresses = stress_space(f, policy);
  const int span = affine_span_dim(f.coords(), policy);
  const int flex = d * f.num_vertices() - rank - trivial_motion_count(d);

  json per_stress = json::array();
  for (Eigen::Index k = 0; k < stresses.dim(); ++k) {
    const StressMatrix omega = to_matrix(g, {stresses.vectors.col(k)});
    per_stress.push_back({{"weights", io::vector_to_json(stresses.vectors.col(k))},
                          {"class", io::stress_class_to_json(classify(g, omega, d, policy))}});
  }
  json report = {
      {"kind", "Analysis"},
      {"num_vertices", f.num_vertices()},
      {"num_edges", g.num_edges()},
      {"dim", d},
      {"rigidity_rank", rank},
      {"maxwell_index", maxwell_index(g, d)},
      {"stress_space_dim", stresses.dim()},
      {"nontrivial_flex_dim", flex},
      {"affine_span_dim", span},
      {"affine_general_position", affine_general_position(f.coords(), policy)},
      {"neighborhood_spans", neighborhood_spans(f, policy)},
      {"conic_at_infinity", on_conic_at_infinity(f, policy)},
      {"stresses", per_stress},
      {"seed", cfg.seed},
      {"tolerance", tolerance_json(policy)},
  };
  report["infinitesimally_rigid"] = span == d ? json(infinitesimally_rigid(f, policy)) : json(nullptr);
  report["isostatic"] = span == d && flex == 0 && stresses.empty();
  emit(cfg, out, report);
}

void cmd_rubber_band(const RunConfig& cfg, std::ostream& out) {
  const TolerancePolicy policy = cfg.policy();
  const Graph g = io::load_graph(cfg.input);
  const int d = cfg.dim;
  std::optional<std::vector<int>> clique;
  Vector weights;
  if (!cfg.weights_path.empty()) {
    const json j = io::read_json_file(cfg.weights_path);
    weights = io::vector_from_json(j.is_object() ? j.at("weights") : j);
    if (j.is_object() && j.contains("clique")) clique = j.at("clique").get<std::vector<int>>();
  } else if (!cfg.random_weights) {
    throw Error(ErrorKind::InvalidInput, "rubber-band needs --weights FILE or --random");
  }
  if (!clique) {
    if (d + 1 > g.num_vertices()) throw Error(ErrorKind::InvalidInput, "graph has fewer than d+1 vertices");
    clique = find_clique(g, d + 1);
    if (!clique) throw Error(ErrorKind::InvalidInput, "graph has no K_{d+1} subgraph");
  }
  if (cfg.random_weights) {
    Rng rng(cfg.seed);
    weights = random_rubber_band_weights(static_cast<int>(non_clique_edges(g, *clique).size()), rng);
  }
  const RubberBandResult r = rubber_band_stress({g, d, *clique, weights, std::nullopt}, policy);
  json report = {
      {"kind", "RubberBand"},
      {"dim", d},
      {"clique", *clique},
      {"weights", io::vector_to_json(weights)},
      {"stress_weights", io::vector_to_json(edge_weights(g, r.stress).weights)},
      {"classification", io::stress_class_to_json(r.classification)},
      {"condition_number", r.condition_number},
      {"general_position_flag", r.classification.is_gstress},
      {"seed", cfg.seed},
      {"tolerance", tolerance_json(policy)},
  };
  emit(cfg, out, report, &r.stress.matrix(), &r.framework);
}

void cmd_gor(const RunConfig& cfg, std::ostream& out) {
  const TolerancePolicy policy = cfg.policy();
  const Graph g = io::load_graph(cfg.input);
  const int d = cfg.dim;
  const int dim = g.num_vertices() - d - 1;
  const Signature sig = cfg.signature.empty() ? euclidean_signature(dim) : parse_signature(cfg.signature);
  const OrthogonalRep gor = build_gor(g, d, sig, cfg.seed, policy);
  Rng rng(derive_seed(cfg.seed, 1));
  const CenteringResult centered = center_gor(gor, rng, policy);
  const StressMatrix stress = lss_stress(centered.centered, policy);
  const Vector ev = symmetric_eigenvalues(stress.matrix());
  const double cut = policy.threshold(ev.cwiseAbs().maxCoeff());
  int positive = 0;
  int negative = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > cut) ++positive;
    if (ev(i) < -cut) ++negative;
  }
  const int missing = static_cast<int>(non_edges(g).size());
  const int jac_rank = numeric_rank(orthogonality_jacobian(gor), policy);
  json report = {
      {"kind", "GOR"},
      {"dim", d},
      {"representation_dim", dim},
      {"signature", format_signature(sig)},
      {"vectors", io::matrix_to_json(gor.vectors.transpose())},
      {"orthogonality_residual", orthogonality_residual(gor)},
      {"general_position", gor_general_position(gor, policy).value},
      {"is_for", is_for(gor, policy)},
      {"orthogonality_jacobian_rank", jac_rank},
      {"non_edges", missing},
      {"tangent_dim", g.num_vertices() * dim - jac_rank},
      {"centering_map", io::vector_to_json(centered.alpha)},
      {"classification", io::stress_class_to_json(classify(g, stress, d, policy))},
      {"positive_eigenvalues", positive},
      {"negative_eigenvalues", negative},
      {"seed", cfg.seed},
      {"tolerance", tolerance_json(policy)},
  };
  emit(cfg, out, report, &stress.matrix());
}

void cmd_ggr(const RunConfig& cfg, std::ostream& out) {
  const Graph g = io::load_graph(cfg.input);
  emit(cfg, out, ggr_test(g, cfg.dim, cfg.trials_or(kDefaultGgrTrials), cfg.seed, cfg.policy()).to_json());
}

void cmd_certify_ur(const RunConfig& cfg, std::ostream& out) {
  const Graph g = io::load_graph(cfg.input);
  const UniversallyRigidResult r =
      construct_universally_rigid(g, cfg.dim, cfg.seed, cfg.trials_or(kDefaultUrRetries), cfg.policy());
  emit(cfg, out, r.report.to_json(), &r.stress.matrix(), &r.framework);
}

void cmd_corank(const RunConfig& cfg, std::ostream& out) {
  const Graph g = io::load_graph(cfg.input);
  emit(cfg, out,
       corank_stats(g, cfg.dim, cfg.trials_or(kDefaultCorankSamples), cfg.seed, cfg.policy(), parse_route(cfg.route))
           .to_json());
}

void cmd_probe_dim(const RunConfig& cfg, std::ostream& out) {
  const Graph g = io::load_graph(cfg.input);
  emit(cfg, out,
       dimension_probe(g, cfg.dim, cfg.seed, cfg.policy(), parse_route(cfg.route), cfg.trials_or(kDefaultProbePoints))
           .to_json());
}

void cmd_statics(const RunConfig& cfg, std::ostream& out) {
  const TolerancePolicy policy = cfg.policy();
  const Framework f = io::framework_from_json(io::read_json_file(cfg.input));
  if (cfg.load_path.empty()) throw Error(ErrorKind::InvalidInput, "statics needs --load FILE");
  const Load load = io::load_from_json(io::read_json_file(cfg.load_path), f.num_vertices(), f.dim());
  const bool equilibrium = is_equilibrium_load(f.coords(), load, policy);
  json report = {{"kind", "Statics"}, {"equilibrium_load", equilibrium}, {"seed", cfg.seed},
                 {"tolerance", tolerance_json(policy)}};
  const Resolution r = resolve_load(f, load, policy);
  report.update(io::resolution_to_json(f.graph(), r));
  emit(cfg, out, report);
}

void cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const TolerancePolicy policy = cfg.policy();
  const Graph g = io::load_graph(cfg.input);
  if (cfg.stress_path.empty()) throw Error(ErrorKind::InvalidInput, "classify needs --stress FILE");
  std::ifstream in(cfg.stress_path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + cfg.stress_path + "'");
  const StressMatrix omega(g, io::read_stress_csv(in), policy);
  json report = {{"kind", "Classification"}, {"dim", cfg.dim},
                 {"classification", io::stress_class_to_json(classify(g, omega, cfg.dim, policy))},
                 {"seed", cfg.seed}, {"tolerance", tolerance_json(policy)}};
  emit(cfg, out, report);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"stresskit: equilibrium stresses, Gstress/Fstress classification and rigidity certificates"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, const std::string& input_help) {
    sub->add_option("input", cfg.input, input_help)->required();
    sub->add_option("--seed", cfg.seed, "Random seed (recorded in every report)")->capture_default_str();
    sub->add_option("--tol", cfg.rel_tol, "Relative singular-value threshold")->capture_default_str();
    sub->add_option("--abs-floor", cfg.abs_floor, "Absolute singular-value floor")->capture_default_str();
    sub->add_option("--out", cfg.out_dir, "Directory for report.json and artifacts");
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "human"}))
        ->capture_default_str();
  };
  auto with_dim = [&](CLI::App* sub) {
    sub->add_option("--dim", cfg.dim, "Target dimension d")->capture_default_str();
  };
  const std::string graph_help = "Graph JSON file or builtin:{k4,w5,k33,prism3,cycleN,pathN,kN,wN,prismN}";

  auto* analyze = app.add_subcommand("analyze", "Rigidity, stresses and predicates of a framework");
  common(analyze, "Framework JSON file");

  auto* rubber = app.add_subcommand("rubber-band", "Gstress from off-clique weights (graph with a K_{d+1})");
  common(rubber, graph_help);
  with_dim(rubber);
  rubber->add_option("--weights", cfg.weights_path, "JSON weights: array or {\"weights\":[..],\"clique\":[..]}");
  rubber->add_flag("--random", cfg.random_weights, "Draw weights uniformly from [0.25, 2] using --seed");

  auto* gor = app.add_subcommand("gor", "Orthogonal representation, centering and LSS stress");
  common(gor, graph_help);
  with_dim(gor);
  gor->add_option("--signature", cfg.signature, "Signs of the bilinear form, e.g. +++- (default all +)");

  auto* ggr = app.add_subcommand("ggr", "Randomized generic global rigidity test");
  common(ggr, graph_help);
  with_dim(ggr);
  ggr->add_option("--trials", cfg.trials, "Random frameworks to try (default 50)");

  auto* ur = app.add_subcommand("certify-ur", "Construct a super stable, infinitesimally rigid framework");
  common(ur, graph_help);
  with_dim(ur);
  ur->add_option("--trials", cfg.trials, "Retry cap (default 10)");

  auto* corank = app.add_subcommand("corank", "Estimate corank and stressedCorank");
  common(corank, graph_help);
  with_dim(corank);
  corank->add_option("--trials", cfg.trials, "Samples (default 200)");
  corank->add_option("--route", cfg.route, "auto | rubber-band | lss")->capture_default_str();

  auto* probe = app.add_subcommand("probe-dim", "Jacobian rank of the Gstress parameterization");
  common(probe, graph_help);
  with_dim(probe);
  probe->add_option("--trials", cfg.trials, "Probe points (default 10)");
  probe->add_option("--route", cfg.route, "auto | rubber-band | lss")->capture_default_str();

  auto* statics = app.add_subcommand("statics", "Resolve an equilibrium load on a framework");
  common(statics, "Framework JSON file");
  statics->add_option("--load", cfg.load_path, "Load JSON {\"load\": [[...], ...]}")->required();

  auto* cls = app.add_subcommand("classify", "Classify a stress matrix CSV");
  common(cls, graph_help);
  with_dim(cls);
  cls->add_option("--stress", cfg.stress_path, "Stress matrix CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze) cmd_analyze(cfg, out);
    else if (*rubber) cmd_rubber_band(cfg, out);
    else if (*gor) cmd_gor(cfg, out);
    else if (*ggr) cmd_ggr(cfg, out);
    else if (*ur) cmd_certify_ur(cfg, out);
    else if (*corank) cmd_corank(cfg, out);
    else if (*probe) cmd_probe_dim(cfg, out);
    else if (*statics) cmd_statics(cfg, out);
    else if (*cls) cmd_classify(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace stresskit::cli
