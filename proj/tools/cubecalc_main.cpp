// cubecalc: homotopy limits, total fibers and tower computations from the
// command line. Reports are JSON; exit 0 on success, 1 when a verification
// fails, 2 on bad input.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>

#include "cubecalc/errors.hpp"
#include "cubecalc/holim.hpp"
#include "cubecalc/json_io.hpp"
#include "cubecalc/linkmodel.hpp"
#include "cubecalc/polycalc.hpp"
#include "cubecalc/suites.hpp"
#include "cubecalc/tower.hpp"

using namespace cubecalc;

namespace {

struct RunConfig {
  std::uint64_t seed = 42;
  int trials = 50;
  std::string coeff = "Q";
  std::string out;
  int verbosity = 0;
};

struct Outcome {
  Json report;
  bool passed = true;
};

Ring ring_of(const std::string& s) {
  if (s == "Q") return Ring::rationals;
  if (s == "Z") return Ring::integers;
  throw InputError("--coeff must be Q or Z");
}

std::vector<long long> parse_list(const std::string& text) {
  const MultiIndex parsed = parse_multi_index(text);
  return {parsed.entries().begin(), parsed.entries().end()};
}

Outcome cmd_holim(const std::string& input) {
  const Diagram d = diagram_from_json(read_json_file(input));
  Json r;
  r["command"] = "holim";
  r["anchor"] = "homotopy limit over a finite poset (nerve totalization)";
  r["elements"] = d.size();
  r["coeff"] = ring_name(d.ring());
  r["homology"] = homology_report(holim(d));
  return {r, true};
}

Outcome cmd_tfiber(const std::string& input) {
  const CubeDiagram cube = cube_from_json(read_json_file(input));
  const ChainComplex fiber = tfiber(cube);
  const HomologySummary direct = homology(fiber);
  Json r;
  r["command"] = "tfiber";
  r["anchor"] = "total homotopy fiber of a cube";
  r["dimension"] = cube.dimension();
  r["tfiber"] = homology_report(fiber);
  Json iterated = Json::object();
  bool agree = true;
  for (std::size_t c = 0; c < cube.dimension(); ++c) {
    const HomologySummary h = homology(tfiber_iterated(cube, c));
    agree = agree && h == direct;
    iterated[std::to_string(cube.labels()[c])] = to_json(h);
  }
  r["iterated"] = iterated;
  r["iterated_agree"] = agree;
  r["cartesian_degree"] = connectivity_text(cartesian_degree(cube));
  return {r, agree};
}

Outcome cmd_derivative(const std::string& points, int dim) {
  const MultiIndex j = parse_multi_index(points);
  const CubeDiagram cube = derivative_cube(j, dim);
  const PointSpec spec{j.entries(), dim};
  const auto all = spec_points(spec);
  Json r;
  r["command"] = "derivative";
  r["anchor"] = "mixed derivative of the link functor as a cube total fiber";
  r["spec"] = Json{{"tvec", j.entries()}, {"n", dim}};
  Json vertices = Json::object();
  for (CubeDiagram::Mask s = 0; s < (CubeDiagram::Mask{1} << cube.dimension()); ++s) {
    std::string removed;
    for (std::size_t v = 0; v < all.size(); ++v)
      if (s & (CubeDiagram::Mask{1} << v)) removed += (removed.empty() ? "" : ",") + all[v].label();
    vertices["{" + removed + "}"] = poincare_text(poincare_of(*cube.vertex(s)));
  }
  r["vertices"] = vertices;
  r["tfiber"] = homology_report(tfiber(cube));
  r["cartesian_degree"] = connectivity_text(cartesian_degree(cube));
  return {r, true};
}

Outcome cmd_stage(const std::string& jtext, const std::string& diagram_path, int link_dim) {
  const MultiIndex j = parse_multi_index(jtext);
  Json r;
  r["command"] = "stage";
  r["anchor"] = "finite stage model over the punctured product of j";
  r["j"] = j.id();
  if (diagram_path.empty() == (link_dim == 0))
    throw InputError("stage needs exactly one of --diagram or --link");
  if (link_dim != 0) {
    const LinkProjectionSupplier supplier(j, link_dim);
    const StageModel s = stage_model(j, supplier);
    r["stage"] = homology_report(*s.stage);
    if (j.all_nonnegative())
      r["comparison_connectivity"] =
          connectivity_text(connectivity(stage_comparison_map(j, supplier)));
    return {r, true};
  }
  const Diagram d = diagram_from_json(read_json_file(diagram_path));
  if (j.all_nonnegative() && d.shape() == power_set_product(j).opposite()) {
    // Values on all tuples, including the undeleted one: report the comparison too.
    const DiagramSupplier supplier(j, d);
    r["stage"] = homology_report(*stage_model(j, supplier).stage);
    r["comparison_connectivity"] =
        connectivity_text(connectivity(stage_comparison_map(j, supplier)));
    return {r, true};
  }
  r["stage"] = homology_report(*stage_model(j, d).stage);
  return {r, true};
}

Outcome cmd_layer(const std::string& jtext, std::string stages_path) {
  const MultiIndex j = parse_multi_index(jtext);
  if (std::filesystem::is_directory(stages_path))
    stages_path = (std::filesystem::path(stages_path) / "stages.json").string();
  const Diagram stages = diagram_from_json(read_json_file(stages_path));
  const LayerModel layer = layer_model(j, stages);
  const HomologyComparison check = verify_layer_poset_equivalence(j, stages);
  Json r;
  r["command"] = "layer";
  r["anchor"] = "layer as the total fiber of the cube of stages at j_R";
  r["j"] = j.id();
  r["layer"] = homology_report(layer.layer);
  r["strict_downset_fiber"] = to_json(check.lhs);
  r["equivalence_holds"] = check.equal();
  return {r, check.equal()};
}

Outcome cmd_verify(const std::string& suite, const RunConfig& cfg) {
  const SuiteReport rep = run_suite(suite, cfg.seed, cfg.trials, ring_of(cfg.coeff));
  Json r = to_json(rep);
  r["command"] = "verify";
  return {r, rep.passed};
}

Outcome cmd_poly(const std::string& mode, const std::string& text, const std::string& degree,
                 int k) {
  const MultiPolynomial p = MultiPolynomial::parse(text);
  Json r;
  r["command"] = "poly " + mode;
  r["poly"] = p.to_string();
  if (mode == "homog") {
    const MultiIndex j = parse_multi_index(degree);
    const MultiPolynomial q = MultiPolynomial::parse(text, j.size());
    r["anchor"] = "homogeneous part by inclusion-exclusion over the truncations at j_R";
    r["degree"] = j.id();
    r["result"] = homog_extract(q, j).to_string();
    return {r, true};
  }
  if (mode == "truncate") {
    r["anchor"] = "multidegree truncation";
    if (!degree.empty()) {
      const MultiIndex j = parse_multi_index(degree);
      r["degree"] = j.id();
      r["result"] = truncate_multi(MultiPolynomial::parse(text, j.size()), j).to_string();
    } else {
      r["total_degree"] = k;
      r["result"] = truncate_total(p, k).to_string();
    }
    return {r, true};
  }
  const TwoTowersCheck c = verify_twotowers_identity(p, k);
  r["anchor"] = "total-degree truncation from the cover by multidegree downsets";
  r["k"] = k;
  r["total"] = c.total.to_string();
  r["union"] = c.union_side.to_string();
  r["holds"] = c.holds();
  return {r, c.holds()};
}

Outcome cmd_conn_gk(long long k, long long handle, long long n) {
  Json r;
  r["command"] = "conn gk";
  r["anchor"] = "connectivity estimate k(n - m - 2) + 1 - m";
  r["k"] = k;
  r["handle"] = handle;
  r["n"] = n;
  r["connectivity"] = gk_connectivity(k, handle, n);
  r["converges"] = gk_converges(handle, n);
  return {r, true};
}

Outcome cmd_conn_multi(const std::string& jtext, const std::string& ptext, long long n) {
  const MultiIndex j = parse_multi_index(jtext);
  const MultiBounds b = multi_convergence_bounds(j, parse_list(ptext), n);
  Json r;
  r["command"] = "conn multi";
  r["anchor"] = "per-variable connectivity estimates for multivariable stages";
  r["j"] = j.id();
  r["n"] = n;
  r["first"] = b.first;
  r["second"] = b.second;
  r["stagnant"] = b.stagnant;
  r["converges"] = b.converges();
  return {r, true};
}

void emit(const Json& report, const RunConfig& cfg) {
  const std::string text = report.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw InputError("cannot write '" + cfg.out + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homotopy limits and total fibers of chain-complex diagrams"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--out", cfg.out, "Write the JSON report here instead of stdout");
  app.add_flag("-v,--verbose", cfg.verbosity, "Print a one-line summary to stderr");

  std::string input;
  auto* holim_cmd = app.add_subcommand("holim", "Homotopy limit of a diagram");
  holim_cmd->add_option("--input", input, "Diagram JSON")->required();
  auto* tfiber_cmd = app.add_subcommand("tfiber", "Total fiber of a covariant cube");
  tfiber_cmd->add_option("--input", input, "Cube JSON")->required();

  std::string points;
  int dim = 3;
  auto* deriv_cmd = app.add_subcommand("derivative", "Derivative cube of the link functor");
  deriv_cmd->add_option("--points", points, "Points per component, e.g. 2,1")->required();
  deriv_cmd->add_option("--dim", dim, "Ambient dimension (>= 3)");

  std::string jtext, diagram_path, stages_path;
  int link_dim = 0;
  auto* stage_cmd = app.add_subcommand("stage", "Finite stage model");
  stage_cmd->add_option("--j", jtext, "Multidegree, e.g. 2,1")->required();
  stage_cmd->add_option("--diagram", diagram_path, "Covariant diagram on the punctured product");
  stage_cmd->add_option("--link", link_dim, "Use link models in this ambient dimension");
  auto* layer_cmd = app.add_subcommand("layer", "Layer from a diagram of stages");
  layer_cmd->add_option("--j", jtext, "Multidegree")->required();
  layer_cmd->add_option("--stages", stages_path, "Stage diagram file or directory")->required();

  std::string suite;
  auto* verify_cmd = app.add_subcommand("verify", "Run a seeded verification suite");
  verify_cmd->add_option("suite", suite, "Suite name")->required();
  verify_cmd->add_option("--seed", cfg.seed, "Seed");
  verify_cmd->add_option("--trials", cfg.trials, "Number of random trials");
  verify_cmd->add_option("--coeff", cfg.coeff, "Q or Z");

  std::string poly_text, degree;
  int total_k = 0;
  auto* poly_cmd = app.add_subcommand("poly", "Polynomial truncations");
  poly_cmd->require_subcommand(1);
  auto* homog_cmd = poly_cmd->add_subcommand("homog", "Homogeneous part of multidegree j");
  homog_cmd->add_option("--poly", poly_text, "Polynomial in x1..xm")->required();
  homog_cmd->add_option("--degree", degree, "Multidegree, e.g. 1,1")->required();
  auto* trunc_cmd = poly_cmd->add_subcommand("truncate", "Truncate at a multidegree or total degree");
  trunc_cmd->add_option("--poly", poly_text, "Polynomial in x1..xm")->required();
  auto* trunc_deg = trunc_cmd->add_option("--degree", degree, "Multidegree bound");
  trunc_cmd->add_option("--total", total_k, "Total degree bound")->excludes(trunc_deg);
  auto* two_cmd = poly_cmd->add_subcommand("twotowers", "Check the total-degree cover identity");
  two_cmd->add_option("--poly", poly_text, "Polynomial in x1..xm")->required();
  two_cmd->add_option("--k", total_k, "Total degree")->required();

  long long k = 1, handle = 0, n = 3;
  std::string ptext;
  auto* conn_cmd = app.add_subcommand("conn", "Connectivity estimates");
  conn_cmd->require_subcommand(1);
  auto* gk_cmd = conn_cmd->add_subcommand("gk", "Single-variable estimate");
  gk_cmd->add_option("--k", k, "Stage (>= 1)")->required();
  gk_cmd->add_option("--handle", handle, "Handle dimension")->required();
  gk_cmd->add_option("--n", n, "Ambient dimension")->required();
  auto* multi_cmd = conn_cmd->add_subcommand("multi", "Multivariable estimates");
  multi_cmd->add_option("--j", jtext, "Multidegree")->required();
  multi_cmd->add_option("--p", ptext, "Handle dimensions, e.g. 1,1")->required();
  multi_cmd->add_option("--n", n, "Ambient dimension")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Outcome result;
    if (*holim_cmd) result = cmd_holim(input);
    else if (*tfiber_cmd) result = cmd_tfiber(input);
    else if (*deriv_cmd) result = cmd_derivative(points, dim);
    else if (*stage_cmd) result = cmd_stage(jtext, diagram_path, link_dim);
    else if (*layer_cmd) result = cmd_layer(jtext, stages_path);
    else if (*verify_cmd) result = cmd_verify(suite, cfg);
    else if (*homog_cmd) result = cmd_poly("homog", poly_text, degree, 0);
    else if (*trunc_cmd) result = cmd_poly("truncate", poly_text, degree, total_k);
    else if (*two_cmd) result = cmd_poly("twotowers", poly_text, "", total_k);
    else if (*gk_cmd) result = cmd_conn_gk(k, handle, n);
    else result = cmd_conn_multi(jtext, ptext, n);
    result.report["passed"] = result.passed;
    emit(result.report, cfg);
    if (cfg.verbosity > 0)
      std::cerr << result.report.value("command", std::string{}) << ": "
                << (result.passed ? "ok" : "verification failed") << "\n";
    return result.passed ? 0 : 1;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: bad JSON input: " << e.what() << "\n";
    return 2;
  }
}
