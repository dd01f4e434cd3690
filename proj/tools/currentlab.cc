// currentlab: command-line front end for the library.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "currentlab/chain_io.h"
#include "currentlab/convergence_lab.h"
#include "currentlab/fillvol.h"
#include "currentlab/meshes.h"
#include "currentlab/metric_space.h"
#include "currentlab/product.h"
#include "currentlab/sliced_fill.h"
#include "currentlab/slicing.h"

namespace cl = currentlab;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitInput = 2;

struct Config {
  std::string input;
  std::string other;
  std::string output;
  std::string format = "json";
  int threads = 1;
  uint64_t seed = 0;
  int center = 0;
  double radius = 0.0;
  int k = 1;
  int grid = cl::kDefaultGrid;
  double beta = 0.5;
  double c = 0.0;
  int candidates = 8;
  int samples = 8;
  double epsilon = 0.0;
  int layers = 1;
  int exact_limit = cl::kDefaultExactLimit;
  std::vector<std::string> functions;
  std::vector<double> levels;
  std::string method = "auto";
  std::string kind = "matrix";
  bool exact = false;
  // lab
  std::string family;
  std::string quantity;
  std::string schedule;
  // generate
  std::string shape;
  double size = 1.0;
  int resolution = 8;
};

void SetUpLogging() {
  auto logger = spdlog::stderr_color_mt("currentlab");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  const char* env = std::getenv("CURRENTLAB_LOG");
  if (!env) return;
  static const std::map<std::string, spdlog::level::level_enum> levels = {
      {"error", spdlog::level::err},
      {"warn", spdlog::level::warn},
      {"info", spdlog::level::info},
      {"debug", spdlog::level::debug}};
  auto it = levels.find(env);
  if (it == levels.end()) {
    spdlog::warn("ignoring CURRENTLAB_LOG={}; expected error, warn, info or debug", env);
  } else {
    spdlog::set_level(it->second);
  }
}

json ReadJsonFile(const std::string& path) {
  if (path.empty()) throw cl::ArgumentError("--input is required");
  std::ifstream in(path);
  if (!in) throw cl::ArgumentError("cannot open " + path);
  try {
    return cl::ParseJsonText(in);
  } catch (const cl::ParseError& e) {
    throw cl::ParseError(path + ": " + e.what());
  }
}

cl::SimplicialCurrent ReadChain(const std::string& path) {
  json doc = ReadJsonFile(path);
  try {
    return cl::ChainFromJson(doc);
  } catch (const cl::ParseError& e) {
    throw cl::ParseError(path + ": " + e.what());
  }
}

cl::FiniteMetricSpace ReadSpace(const std::string& path, const std::string& kind) {
  if (path.empty()) throw cl::ArgumentError("an input file is required");
  std::ifstream in(path);
  if (!in) throw cl::ArgumentError("cannot open " + path);
  try {
    if (kind == "points") return cl::ReadPointCloudCsv(in);
    return cl::ReadDistanceMatrixCsv(in);
  } catch (const cl::ParseError& e) {
    throw cl::ParseError(path + ": " + e.what());
  }
}

std::vector<double> ParseNumbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw cl::ArgumentError(what + ": '" + item + "' is not a number");
    }
  }
  if (out.empty()) throw cl::ArgumentError(what + " is empty");
  return out;
}

// Function specs: coord:AXIS, vertex:V, graph:V, point:X,Y[,Z], const:C.
cl::PLFunction ParseFunction(const std::string& spec, cl::ComplexPtr complex) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw cl::ArgumentError("function '" + spec + "' has no kind prefix");
  std::string kind = spec.substr(0, colon);
  std::string arg = spec.substr(colon + 1);
  std::vector<double> nums = ParseNumbers(arg, "function " + spec);
  auto vertex = [&]() {
    int v = static_cast<int>(nums[0]);
    if (nums.size() != 1 || v != nums[0] || v < 0 || v >= complex->num_vertices()) {
      throw cl::ArgumentError("function " + spec + ": bad vertex");
    }
    return v;
  };
  if (kind == "coord") {
    int axis = static_cast<int>(nums[0]);
    if (nums.size() != 1 || axis != nums[0] || axis < 0 || axis >= complex->metric().dims()) {
      throw cl::ArgumentError("function " + spec + ": bad axis");
    }
    return cl::PLFunction::Coordinate(complex, axis);
  }
  if (kind == "vertex") return cl::PLFunction::DistanceFromVertex(complex, vertex());
  if (kind == "graph") return cl::PLFunction::GraphDistance(complex, vertex());
  if (kind == "point") {
    if (static_cast<int>(nums.size()) != complex->metric().dims()) {
      throw cl::ArgumentError("function " + spec + ": point has the wrong dimension");
    }
    return cl::PLFunction::DistanceFromPoint(complex, nums);
  }
  if (kind == "const") return cl::PLFunction::Constant(complex, nums[0]);
  throw cl::ArgumentError("unknown function kind '" + kind + "'");
}

std::vector<cl::PLFunction> ParseFunctions(const Config& cfg, cl::ComplexPtr complex) {
  std::vector<cl::PLFunction> out;
  for (const auto& s : cfg.functions) out.push_back(ParseFunction(s, complex));
  return out;
}

cl::LPMethod ParseMethod(const std::string& m) {
  if (m == "auto") return cl::LPMethod::kAuto;
  if (m == "simplex") return cl::LPMethod::kSimplex;
  if (m == "ipm") return cl::LPMethod::kInteriorPoint;
  throw cl::ArgumentError("unknown LP method '" + m + "'");
}

void CheckCenter(const Config& cfg, const cl::SimplicialCurrent& t) {
  if (cfg.center < 0 || cfg.center >= t.complex()->num_vertices()) {
    throw cl::ArgumentError("--center is not a vertex of the input complex");
  }
  if (!(cfg.radius > 0)) throw cl::ArgumentError("--radius must be positive");
}

json ChainWithSummary(const cl::SimplicialCurrent& t, json summary) {
  json doc = cl::ChainToJson(t);
  summary["mass"] = cl::Mass(t);
  summary["boundary_mass"] = t.dim() > 0 ? cl::Mass(cl::Boundary(t)) : 0.0;
  doc["summary"] = summary;
  return doc;
}

json SliceSummary(const cl::SliceResult& s) {
  return {{"levels", s.levels},
          {"requested_levels", s.requested_levels},
          {"snapped_levels", s.snapped_levels},
          {"non_generic_levels", s.non_generic_levels},
          {"degenerate_pieces", s.degenerate_pieces},
          {"warnings", s.warnings}};
}

// Outcome of a command: the report and whether its assertions held.
struct Result {
  json report;
  bool ok = true;
};

Result RunMass(const Config& cfg) {
  cl::SimplicialCurrent t = ReadChain(cfg.input);
  json j = {{"dim", t.dim()},
            {"simplices", t.coeffs().size()},
            {"mass", cl::Mass(t)},
            {"boundary_mass", t.dim() > 0 ? cl::Mass(cl::Boundary(t)) : 0.0},
            {"total_mass", cl::TotalMass(t)}};
  return {j, true};
}

Result RunBoundary(const Config& cfg) {
  cl::SimplicialCurrent t = ReadChain(cfg.input);
  if (t.dim() == 0) throw cl::ArgumentError("a 0-current has no boundary");
  cl::SimplicialCurrent b = cl::Boundary(t);
  bool closed = b.dim() == 0 || cl::Boundary(b).is_zero();
  return {ChainWithSummary(b, {{"boundary_of_boundary_zero", closed}}), closed};
}

Result RunEvaluate(const Config& cfg) {
  cl::SimplicialCurrent t = ReadChain(cfg.input);
  std::vector<cl::PLFunction> fs = ParseFunctions(cfg, t.complex());
  if (fs.empty()) throw cl::ArgumentError("evaluate needs --function for the form coefficient");
  std::vector<cl::PLFunction> pis(fs.begin() + 1, fs.end());
  if (static_cast<int>(pis.size()) != t.dim()) {
    throw cl::ArgumentError("evaluate needs 1 + dim functions (coefficient, then pi_1..pi_k)");
  }
  return {{{"value", cl::Evaluate(t, fs[0], pis)}, {"dim", t.dim()}}, true};
}

Result RunSlice(const Config& cfg) {
  cl::SimplicialCurrent t = ReadChain(cfg.input);
  std::vector<cl::PLFunction> fs = ParseFunctions(cfg, t.complex());
  if (fs.empty() || fs.size() != cfg.levels.size()) {
    throw cl::ArgumentError("slice needs matching --function and --level lists");
  }
  cl::SliceResult s = cl::IteratedSlice(t, fs, cfg.levels);
  return {ChainWithSummary(s.current, SliceSummary(s)), true};
}

Result RunBall(const Config& cfg) {
  cl::SimplicialCurrent t = ReadChain(cfg.input);
  CheckCenter(cfg, t);
  cl::BallResult b = cl::Ball(t, cfg.center, cfg.radius);
  json summary = {{"levels", {b.level}}, {"warnings", b.warnings}};
  return {ChainWithSummary(b.ball, summary), true};
}

Result RunSphere(const Config& cfg) {
  cl::SimplicialCurrent t = ReadChain(cfg.input);
  CheckCenter(cfg, t);
  cl::SliceResult s = cl::Sphere(t, cfg.center, cfg.radius);
  return {ChainWithSummary(s.current, SliceSummary(s)), true};
}

Result RunCoarea(const Config& cfg) {
  cl::SimplicialCurrent t = ReadChain(cfg.input);
  std::vector<cl::PLFunction> fs = ParseFunctions(cfg, t.complex());
  if (fs.size() != 1) throw cl::ArgumentError("coarea needs exactly one --function");
  if (cfg.samples < 2) throw cl::ArgumentError("--samples must be at least 2");
  cl::CoareaProfile p = cl::ComputeCoareaProfile(t, fs[0], cfg.samples, cfg.threads);
  double tol = 1e-6 * (1 + p.bound) + 2 * p.step * p.max_slice_mass;
  bool ok = p.integral <= p.bound + tol;
  json rows = json::array();
  for (size_t i = 0; i < p.levels.size(); ++i) rows.push_back({{"level", p.levels[i]}, {"mass", p.masses[i]}});
  return {{{"integral", p.integral},
           {"bound", p.bound},
           {"tolerance", tol},
           {"bound_holds", ok},
           {"step", p.step},
           {"rows", rows}},
          ok};
}

Result RunFlatnorm(const Config& cfg) {
  cl::SimplicialCurrent s = ReadChain(cfg.input);
  cl::SimplicialCurrent t(s.complex(), s.dim());
  if (!cfg.other.empty()) t = cl::CarryByCoordinates(ReadChain(cfg.other), s.complex());
  cl::FillOptions opts;
  opts.method = ParseMethod(cfg.method);
  cl::FillingReport r = cl::FlatDistance(s, t, s.complex(), opts);
  return {cl::ReportToJson(r), r.residual <= cl::kLPResidualTolerance * (1 + r.value) + 1e-7};
}

Result RunFillvol(const Config& cfg) {
  cl::SimplicialCurrent b = ReadChain(cfg.input);
  cl::FillOptions opts;
  opts.method = ParseMethod(cfg.method);
  cl::FillingReport r = b.dim() == 0 ? cl::FillingVolume0d(b) : cl::FillingVolume(b, b.complex(), opts);
  return {cl::ReportToJson(r), r.value >= r.lower_bound - 1e-9 * (1 + r.value)};
}

Result RunFillvol0(const Config& cfg) {
  json doc = ReadJsonFile(cfg.input);
  cl::SignedPointSet ps = cl::PointSetFromJson(doc);
  cl::FillingReport r = cl::FillingVolume0d(ps.space, ps.theta, ps.sigma);
  return {cl::ReportToJson(r), r.value >= r.lower_bound - 1e-9 * (1 + r.value)};
}

Result RunSf(const Config& cfg) {
  cl::SimplicialCurrent t = ReadChain(cfg.input);
  CheckCenter(cfg, t);
  cl::SlicedFillReport r =
      cl::SlicedFill(t, cfg.center, cfg.radius, ParseFunctions(cfg, t.complex()), cfg.grid, cfg.threads);
  return {cl::ToJson(r), r.bound_holds};
}

Result RunSfk(const Config& cfg) {
  cl::SimplicialCurrent t = ReadChain(cfg.input);
  CheckCenter(cfg, t);
  cl::SfkReport r = cl::SfK(t, cfg.center, cfg.radius, cfg.k, cfg.candidates, cfg.grid, cfg.threads);
  return {cl::ToJson(r), r.best.bound_holds};
}

Result RunTetra(const Config& cfg) {
  cl::SimplicialCurrent t = ReadChain(cfg.input);
  CheckCenter(cfg, t);
  cl::TetraReport r = cl::TetraCheck(t, cfg.center, cfg.radius, cfg.c, cfg.beta, cfg.samples, cfg.candidates);
  return {cl::ToJson(r), r.mass_bound_holds};
}

Result RunProduct(const Config& cfg) {
  cl::SimplicialCurrent t = ReadChain(cfg.input);
  if (!(cfg.epsilon > 0)) throw cl::ArgumentError("--epsilon must be positive");
  cl::PrismComplex pc = cl::ProductComplex(cl::SupportComplex(t), cfg.epsilon, cfg.layers);
  cl::SimplicialCurrent base = cl::Reindex(t, pc.base);
  cl::SimplicialCurrent prod = cl::ProductCurrent(base, pc);
  double expected = cfg.epsilon * cl::Mass(t);
  double mass = cl::Mass(prod);
  bool mass_ok = std::abs(mass - expected) <= 1e-9 * std::max(1.0, expected);
  // d(I x T) = psi_eps T - psi_0 T - I x dT
  cl::SimplicialCurrent rhs = cl::LiftCurrent(base, pc, pc.layers) - cl::LiftCurrent(base, pc, 0);
  if (t.dim() > 0) rhs = rhs - cl::ProductCurrent(cl::Boundary(base), pc);
  bool boundary_ok = cl::Boundary(prod) == rhs;
  json summary = {{"epsilon", cfg.epsilon},
                  {"layers", cfg.layers},
                  {"expected_mass", expected},
                  {"mass_identity_holds", mass_ok},
                  {"boundary_identity_holds", boundary_ok}};
  return {ChainWithSummary(prod, summary), mass_ok && boundary_ok};
}

Result RunIfv(const Config& cfg) {
  cl::SimplicialCurrent t = ReadChain(cfg.input);
  cl::FillOptions opts;
  opts.method = ParseMethod(cfg.method);
  cl::IntervalFillReport r = cl::IntervalFillingVolume(t, cfg.epsilon, cfg.layers, opts);
  json j = {{"fill", cl::ReportToJson(r.fill)},
            {"epsilon", r.epsilon},
            {"mass", r.mass},
            {"scaled_value", r.scaled_value},
            {"bound_holds", r.bound_holds}};
  return {j, r.bound_holds};
}

Result RunSif(const Config& cfg) {
  cl::SimplicialCurrent t = ReadChain(cfg.input);
  CheckCenter(cfg, t);
  cl::SlicedFillReport r = cl::SlicedIntervalFill(t, cfg.center, cfg.radius, ParseFunctions(cfg, t.complex()),
                                                  cfg.epsilon, cfg.grid, cfg.layers, cfg.threads);
  return {cl::ToJson(r), r.bound_holds};
}

Result RunGh(const Config& cfg) {
  cl::FiniteMetricSpace x = ReadSpace(cfg.input, cfg.kind);
  cl::FiniteMetricSpace y = ReadSpace(cfg.other, cfg.kind);
  if (cfg.exact_limit < 0) throw cl::ArgumentError("--exact-limit must be nonnegative");
  cl::GHBounds g = cl::GromovHausdorffBounds(x, y, cfg.exact_limit);
  json corr = json::array();
  for (const auto& [a, b] : g.correspondence) corr.push_back({a, b});
  return {{{"lower", g.lower}, {"upper", g.upper}, {"exact", g.exact}, {"correspondence", corr}},
          g.lower <= g.upper + 1e-12};
}

Result RunPack(const Config& cfg) {
  cl::FiniteMetricSpace x = ReadSpace(cfg.input, cfg.kind);
  if (!(cfg.radius > 0)) throw cl::ArgumentError("--radius must be positive");
  cl::PackingReport p = cfg.exact ? cl::ExactPackingNumber(x, cfg.radius) : cl::PackingNumber(x, cfg.radius);
  return {{{"radius", p.radius}, {"count", p.count}, {"centers", p.centers}, {"diameter", cl::Diameter(x)}},
          true};
}

Result RunLab(const Config& cfg) {
  cl::SequenceFamily fam = cl::BuildFamily(cfg.family, ParseNumbers(cfg.schedule, "--schedule"), cfg.seed);
  spdlog::info("built {} members of {}", fam.members.size(), fam.name);
  if (cfg.quantity == "semicontinuity") {
    cl::SemicontinuityReport r = cl::Semicontinuity(fam);
    return {cl::ToJson(r), r.last_holds};
  }
  if (cfg.quantity == "disappearing") {
    if (!(cfg.radius > 0)) throw cl::ArgumentError("--radius must be positive");
    cl::DisappearingReport r = cl::DisappearingPoints(fam, cfg.radius, cfg.c, cfg.grid, cfg.candidates, cfg.threads);
    return {cl::ToJson(r), r.bases_hold};
  }
  cl::SweepParams p;
  p.r = cfg.radius > 0 ? cfg.radius : p.r;
  p.epsilon = cfg.epsilon > 0 ? cfg.epsilon : p.epsilon;
  p.grid = cfg.grid;
  p.layers = cfg.layers;
  p.candidates = cfg.candidates;
  p.threads = cfg.threads;
  cl::ContinuityReport r = cl::ContinuitySweep(fam, cfg.quantity, p);
  return {cl::ToJson(r), r.all_hold};
}

Result RunGenerate(const Config& cfg) {
  cl::Mesh mesh;
  if (cfg.shape == "square") {
    mesh = cl::UnitSquare(cfg.resolution);
  } else if (cfg.shape == "disk") {
    mesh = cl::Disk(cfg.size, cfg.size / cfg.resolution);
  } else if (cfg.shape == "icosphere") {
    mesh = cl::Icosphere(cfg.resolution, cfg.size);
  } else if (cfg.shape == "torus") {
    mesh = cl::ThinTorus(cfg.size, cfg.resolution, 3);
  } else if (cfg.shape == "torus_chart") {
    if (!(cfg.radius > 0)) throw cl::ArgumentError("--radius sets the chart half width");
    cl::TorusChart chart = cl::ThinTorusChart(cfg.size, cfg.radius, cfg.resolution);
    json doc = cl::ChainToJson(chart.mesh.current);
    doc["summary"] = {{"center", chart.center}};
    return {doc, true};
  } else {
    throw cl::ArgumentError("unknown shape '" + cfg.shape + "'");
  }
  return {cl::ChainToJson(mesh.current), true};
}

// Scalars of an object as key,value lines, or a table when it has "rows".
std::string ToCsv(const json& j) {
  std::ostringstream out;
  auto cell = [](const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  };
  if (j.contains("rows") && j["rows"].is_array() && !j["rows"].empty() && j["rows"][0].is_object()) {
    std::vector<std::string> keys;
    for (const auto& [k, v] : j["rows"][0].items()) {
      if (!v.is_structured()) keys.push_back(k);
    }
    for (size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
    out << "\n";
    for (const auto& row : j["rows"]) {
      for (size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << cell(row.value(keys[i], json()));
      out << "\n";
    }
    return out.str();
  }
  out << "key,value\n";
  for (const auto& [k, v] : j.items()) {
    if (!v.is_structured()) out << k << "," << cell(v) << "\n";
  }
  return out.str();
}

void Emit(const Config& cfg, const json& report) {
  std::string text = cfg.format == "csv" ? ToCsv(report) : report.dump(2) + "\n";
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw cl::ArgumentError("cannot write " + cfg.output);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  SetUpLogging();
  CLI::App app{"Simplicial currents, slicing and filling volumes"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--input,-i", cfg.input, "Input file");
    sub->add_option("--output,-o", cfg.output, "Report path (default stdout)");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "Random seed for generated meshes");
  };
  auto ball_opts = [&](CLI::App* sub) {
    sub->add_option("--center", cfg.center, "Center vertex");
    sub->add_option("--radius", cfg.radius, "Radius");
  };
  auto fn_opts = [&](CLI::App* sub) {
    sub->add_option("--function", cfg.functions,
                    "PL function: coord:AXIS, vertex:V, graph:V, point:X,Y[,Z] or const:C");
  };
  auto method_opt = [&](CLI::App* sub) {
    sub->add_option("--method", cfg.method, "LP method: auto, simplex or ipm");
  };

  std::map<CLI::App*, Result (*)(const Config&)> handlers;
  auto add = [&](const std::string& name, const std::string& help, Result (*fn)(const Config&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    handlers[sub] = fn;
    return sub;
  };

  add("mass", "Mass and boundary mass of a chain", RunMass);
  add("boundary", "Boundary chain", RunBoundary);
  fn_opts(add("evaluate", "T(f, pi_1..pi_k); first --function is f", RunEvaluate));
  {
    auto* s = add("slice", "Iterated slice by functions at levels", RunSlice);
    fn_opts(s);
    s->add_option("--level", cfg.levels, "Levels, one per function");
  }
  ball_opts(add("ball", "Restriction to a metric ball", RunBall));
  ball_opts(add("sphere", "Slice by the distance from a vertex", RunSphere));
  {
    auto* s = add("coarea", "Coarea profile of slice masses", RunCoarea);
    fn_opts(s);
    s->add_option("--samples", cfg.samples, "Quadrature samples");
  }
  {
    auto* s = add("flatnorm", "Flat norm, or flat distance with --other", RunFlatnorm);
    s->add_option("--other", cfg.other, "Second chain");
    method_opt(s);
  }
  method_opt(add("fillvol", "Filling volume of a cycle", RunFillvol));
  add("fillvol0", "Filling volume of a signed point set", RunFillvol0);
  {
    auto* s = add("sf", "Sliced filling volume", RunSf);
    ball_opts(s);
    fn_opts(s);
    s->add_option("--grid", cfg.grid, "Nodes per axis");
  }
  {
    auto* s = add("sfk", "SF_k over witness tuples", RunSfk);
    ball_opts(s);
    s->add_option("--k", cfg.k, "Number of witnesses");
    s->add_option("--candidates", cfg.candidates, "Witness evaluations");
    s->add_option("--grid", cfg.grid, "Nodes per axis");
  }
  {
    auto* s = add("tetra", "Tetrahedral property check", RunTetra);
    ball_opts(s);
    s->add_option("--beta", cfg.beta, "Band parameter");
    s->add_option("--C", cfg.c, "Tetrahedral constant");
    s->add_option("--samples", cfg.samples, "Samples per axis");
    s->add_option("--candidates", cfg.candidates, "Witness evaluations");
  }
  {
    auto* s = add("product", "Product with an interval", RunProduct);
    s->add_option("--epsilon", cfg.epsilon, "Interval length");
    s->add_option("--layers", cfg.layers, "Interval subdivisions");
  }
  {
    auto* s = add("ifv", "Interval filling volume", RunIfv);
    s->add_option("--epsilon", cfg.epsilon, "Interval length");
    s->add_option("--layers", cfg.layers, "Interval subdivisions");
    method_opt(s);
  }
  {
    auto* s = add("sif", "Sliced interval filling volume", RunSif);
    ball_opts(s);
    fn_opts(s);
    s->add_option("--epsilon", cfg.epsilon, "Interval length");
    s->add_option("--layers", cfg.layers, "Interval subdivisions");
    s->add_option("--grid", cfg.grid, "Nodes per axis");
  }
  {
    auto* s = add("gh", "Gromov-Hausdorff bounds", RunGh);
    s->add_option("--other", cfg.other, "Second space");
    s->add_option("--kind", cfg.kind, "matrix or points")->check(CLI::IsMember({"matrix", "points"}));
    s->add_option("--exact-limit", cfg.exact_limit, "Largest size searched exhaustively");
  }
  {
    auto* s = add("pack", "Packing number", RunPack);
    s->add_option("--kind", cfg.kind, "matrix or points")->check(CLI::IsMember({"matrix", "points"}));
    s->add_option("--radius", cfg.radius, "Packing radius");
    s->add_flag("--exact", cfg.exact, "Exhaustive search (at most 12 points)");
  }
  CLI::App* lab = app.add_subcommand("lab", "Convergence experiments");
  lab->require_subcommand(1);
  {
    CLI::App* run = lab->add_subcommand("run", "Run a family sweep");
    common(run);
    handlers[run] = RunLab;
    run->add_option("--family", cfg.family, "sphere_splines, thin_torus, refined_sphere or refined_disk")
        ->required();
    run->add_option("--quantity", cfg.quantity, "fillvol, sf, ifv, sif, semicontinuity or disappearing")
        ->required()
        ->check(CLI::IsMember({"fillvol", "sf", "ifv", "sif", "semicontinuity", "disappearing"}));
    run->add_option("--schedule", cfg.schedule, "Comma-separated parameters")->required();
    run->add_option("--radius", cfg.radius, "Ball radius");
    run->add_option("--epsilon", cfg.epsilon, "Interval length");
    run->add_option("--grid", cfg.grid, "Nodes per axis");
    run->add_option("--layers", cfg.layers, "Interval subdivisions");
    run->add_option("--candidates", cfg.candidates, "Witness evaluations");
    run->add_option("--C", cfg.c, "C_SF for the disappearing-point check");
  }
  {
    auto* s = add("generate", "Write a mesh as Chain JSON", RunGenerate);
    s->add_option("--shape", cfg.shape, "square, disk, icosphere, torus or torus_chart")->required();
    s->add_option("--size", cfg.size, "Radius, or torus thickness eps");
    s->add_option("--resolution", cfg.resolution, "Cells, rings or frequency");
    s->add_option("--radius", cfg.radius, "Chart half width");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  CLI::App* chosen = nullptr;
  for (auto& [sub, fn] : handlers) {
    if (sub->parsed()) chosen = sub;
  }
  if (!chosen) return kExitInput;
  auto fail = [&](int code, const std::string& what) {
    spdlog::error("{}", what);
    try {
      Emit(cfg, {{"error", what}, {"exit_code", code}});
    } catch (const std::exception&) {
    }
    return code;
  };
  try {
    Result r = handlers[chosen](cfg);
    Emit(cfg, r.report);
    if (!r.ok) {
      spdlog::error("an asserted inequality failed; see the report");
      return kExitAssertion;
    }
    return kExitOk;
  } catch (const cl::AssertionFailure& e) {
    return fail(kExitAssertion, e.what());
  } catch (const cl::ParseError& e) {
    return fail(kExitInput, e.what());
  } catch (const cl::ArgumentError& e) {
    return fail(kExitInput, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(kExitInput, e.what());
  } catch (const std::exception& e) {
    return fail(kExitAssertion, e.what());
  }
}
