// Command-line front end: generators, norms, decompositions, PDE helpers and
// the scripted reproduction suites. Reports are JSON on stdout.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "carleson/bc_norm.hpp"
#include "carleson/constructions.hpp"
#include "carleson/corona.hpp"
#include "carleson/error.hpp"
#include "carleson/experiments.hpp"
#include "carleson/gauge.hpp"
#include "carleson/inner.hpp"
#include "carleson/io.hpp"
#include "carleson/pde.hpp"
#include "carleson/roberts.hpp"
#include "json.hpp"

using json = nlohmann::json;
using namespace carleson;

namespace {

struct Output {
  json report;
  std::vector<std::string> header;  // primary table, for --format csv
  std::vector<std::vector<double>> rows;
  bool violation = false;  // an invariant check flagged something
  std::string violation_what;
};

struct Global {
  bool strict = false;
  std::string format = "json";
  std::string out = "-";
};

struct GaugeOpts {
  std::string kind = "entropy";
  double alpha = 0.5;
  std::string lambda_csv;
};

void add_gauge_options(CLI::App* app, GaugeOpts& g) {
  app->add_option("--gauge", g.kind, "entropy, power or custom")
      ->check(CLI::IsMember({"entropy", "power", "custom"}))
      ->capture_default_str();
  app->add_option("--alpha", g.alpha, "exponent of the power gauge")->capture_default_str();
  app->add_option("--lambda-csv", g.lambda_csv, "t,lambda table for the custom gauge");
}

GaugeFunction make_gauge(const GaugeOpts& g) {
  if (g.kind == "entropy") return GaugeFunction::entropy();
  if (g.kind == "power") return GaugeFunction::power(g.alpha);
  if (g.lambda_csv.empty()) throw RangeError("the custom gauge needs --lambda-csv");
  auto [t, lambda] = load_lambda_csv(g.lambda_csv);
  return GaugeFunction::custom(t, lambda);
}

void check_depth(int depth, const char* what) {
  if (depth < 0 || depth > kGenerationCap) throw RangeError(std::string(what) + " must lie in [0, 48]");
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json norm_json(const NormReport& r) {
  json j{{"value", finite_or_null(r.value)}, {"tail", finite_or_null(r.tail)}, {"diverges", r.diverges},
         {"method", r.method},           {"depth", r.depth},                 {"quadrature_ok", r.quadrature_ok}};
  if (!r.per_gap.empty()) j["per_gap"] = r.per_gap;
  if (!r.per_level.empty()) j["per_level"] = r.per_level;
  return j;
}

json sweep_json(const SweepResult& r) {
  return {{"value", finite_or_null(r.value)}, {"partial", r.partial}, {"tail", finite_or_null(r.tail)},
          {"inner", r.inner},                 {"outer", r.outer},     {"diverges", r.diverges},
          {"boxes", r.boxes},                 {"depth", r.depth},     {"terms", r.terms}};
}

void indexed_table(Output& o, const char* name, const std::vector<double>& v) {
  o.header = {"index", name};
  for (std::size_t i = 0; i < v.size(); ++i) o.rows.push_back({double(i), v[i]});
}

void emit(const Global& g, const Output& o) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (g.out != "-") {
    file.open(g.out);
    if (!file) throw IoError("cannot write " + g.out);
    os = &file;
  }
  if (g.format == "csv") {
    if (o.header.empty()) throw RangeError("this command has no tabular output; use --format json");
    for (std::size_t i = 0; i < o.header.size(); ++i) *os << (i ? "," : "") << o.header[i];
    *os << '\n';
    os->precision(17);
    for (const auto& row : o.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) *os << (i ? "," : "") << row[i];
      *os << '\n';
    }
  } else {
    *os << o.report.dump(2) << '\n';
  }
  if (g.strict && o.violation) throw InvariantViolation(o.violation_what);
}

// ---------------------------------------------------------------------------

struct GenOpts {
  std::string what = "measure";
  double A = 4.0;
  int G = 10;
  double p = 0.3;
  double alpha = 1.15;
  int n = 256;
  double eps = 0.5;
};

void write_text(const Global& g, const std::function<void(std::ostream&)>& f) {
  if (g.out == "-") {
    f(std::cout);
    return;
  }
  std::ofstream file(g.out);
  if (!file) throw IoError("cannot write " + g.out);
  f(file);
}

void emit_generated(const Global& g, const std::string& what, const AtomicMeasure& mu, const ClosedSet& E) {
  write_text(g, [&](std::ostream& os) {
    if (what == "set") {
      write_closed_set(os, E);
    } else {
      write_measure(os, mu);
    }
  });
}

// ---------------------------------------------------------------------------

Output run_bc_norm(const std::string& set_path, const GaugeOpts& go, int depth) {
  check_depth(depth, "--depth");
  auto E = load_closed_set(set_path);
  auto g = make_gauge(go);
  auto r = comparability_report(E, g, depth);
  auto reg = check_regularity(g);
  Output o;
  json ratios = json::array();
  for (const auto& row : r.ratios) ratios.push_back(std::vector<double>(std::begin(row), std::end(row)));
  o.report = {{"gauge", r.gauge},
              {"depth", r.depth},
              {"arc_sum", finite_or_null(r.arc_sum)},
              {"distance_integral", finite_or_null(r.distance_integral)},
              {"dyadic_arc_sum", finite_or_null(r.dyadic_arc_sum)},
              {"privalov_integral", finite_or_null(r.privalov_integral)},
              {"dyadic_tail", finite_or_null(r.dyadic_tail)},
              {"privalov_tail", finite_or_null(r.privalov_tail)},
              {"infinite", r.infinite},
              {"ratios", ratios},
              {"K", finite_or_null(r.max_ratio)},
              {"regularity", {{"g2_lo", reg.g2_lo}, {"g2_hi", reg.g2_hi}, {"g3", reg.g3}, {"violations", reg.violations}}}};
  o.header = {"quantity", "value"};
  o.rows = {{0, r.arc_sum}, {1, r.distance_integral}, {2, r.dyadic_arc_sum}, {3, r.privalov_integral}};
  if (!reg.violations.empty()) {
    o.violation = true;
    o.violation_what = "gauge regularity: " + reg.violations.front();
  }
  return o;
}

struct RobertsOpts {
  std::string measure = "-";
  double C = 1.0;
  int j0 = 0;
  int layers = 8;
};

Output run_roberts(const RobertsOpts& ro, const GaugeOpts& go) {
  auto mu = load_measure(ro.measure);
  auto g = make_gauge(go);
  if (ro.j0 < 0 || ro.layers < 0) throw RangeError("--j0 and --layers must be non-negative");
  // The grid can only hold as many generations as fit under the cap.
  const int room = max_grid_depth(g);
  if (ro.j0 >= room && ro.layers > 0) throw RangeError("--j0 leaves no grid generations under the cap 48");
  const int layers = std::min(ro.layers, room - ro.j0);
  auto grid = build_grid(g, ro.j0 + layers);
  auto d = roberts_decompose(mu, g, grid, {ro.C, ro.j0, layers});
  auto le = light_arc_entropy(d);
  auto cert = certify(d);
  Output o;
  json jl = json::array();
  o.header = {"layer", "generation", "mass", "heavy_count", "light_entropy"};
  for (std::size_t k = 0; k < d.layers.size(); ++k) {
    const auto& L = d.layers[k];
    jl.push_back({{"generation", L.generation},
                  {"mass", L.measure.total_mass()},
                  {"heavy_count", L.heavy.size()},
                  {"light_entropy", L.light_entropy}});
    o.rows.push_back(
        {double(k + 1), double(L.generation), L.measure.total_mass(), double(L.heavy.size()), L.light_entropy});
  }
  o.report = {{"gauge", g.name()},
              {"grid", {{"generations", grid.generations}, {"c_lo", grid.c_lo}, {"c_hi", grid.c_hi},
                        {"grid_constant", grid.grid_constant}}},
              {"layers", jl},
              {"layers_requested", ro.layers},
              {"layers_used", layers},
              {"residual_mass", d.residual.total_mass()},
              {"light_entropy", le.value},
              {"bound", le.bound},
              {"bound_holds", le.holds},
              {"certification",
               {{"conservation_error", cert.conservation_error}, {"worst_layer_ratio", cert.worst_layer_ratio},
                {"conserved", cert.conserved}, {"layer_bounds", cert.layer_bounds}, {"nested", cert.nested},
                {"refining", cert.refining}}}};
  if (!(cert.conserved && cert.layer_bounds && cert.nested && le.holds)) {
    o.violation = true;
    o.violation_what = "Roberts certification failed";
  }
  return o;
}

Output run_corona(const std::string& path, const CoronaParams& params, bool area_bound) {
  check_depth(params.depth, "--depth");
  auto mu = load_measure(path);
  auto d = corona_decompose(mu, params);
  auto c = check_corona(d);
  Output o;
  json heavy = json::array(), light = json::array();
  o.header = {"kind", "generation", "index", "level", "parent"};
  for (const auto& h : d.heavy) {
    heavy.push_back({{"generation", h.arc.generation},
                     {"index", h.arc.index},
                     {"level", h.level},
                     {"parent", h.parent},
                     {"light_children", h.light_children},
                     {"unresolved", h.unresolved.size()},
                     {"meeting_counts", h.meeting_counts}});
    o.rows.push_back({1, double(h.arc.generation), double(h.arc.index), double(h.level), double(h.parent)});
  }
  for (const auto& l : d.light) {
    light.push_back({{"generation", l.arc.generation},
                     {"index", l.arc.index},
                     {"level", l.level},
                     {"parent", l.parent},
                     {"heavy_children", l.heavy_children},
                     {"unresolved", l.unresolved.size()}});
    o.rows.push_back({0, double(l.arc.generation), double(l.arc.index), double(l.level), double(l.parent)});
  }
  o.report = {{"heavy", heavy},
              {"light", light},
              {"root_unresolved", d.root_unresolved.size()},
              {"check",
               {{"ok", c.ok()}, {"alternation", c.alternation}, {"maximality", c.maximality}, {"packing", c.packing},
                {"coverage", c.coverage}, {"dense_on_sets", c.dense_on_sets}, {"coverage_error", c.coverage_error},
                {"worst_packing", c.worst_packing}, {"arcs_checked", c.arcs_checked}}}};
  if (area_bound) {
    auto b = carried_area_bound(d);
    o.report["area_bound"] = {{"dyadic_sum", b.dyadic_sum}, {"area", b.area}, {"threshold", b.threshold}, {"K", b.K}};
  }
  if (!c.ok()) {
    o.violation = true;
    o.violation_what = "corona decomposition failed its checks";
  }
  return o;
}

Output run_area(const std::string& path, double sigma, double level, int depth) {
  check_depth(depth, "--depth");
  auto mu = load_measure(path);
  auto r = sublevel_area_integral(mu, level, sigma, depth);
  Output o;
  o.report = sweep_json(r);
  o.report["level"] = level;
  o.report["sigma"] = sigma;
  indexed_table(o, "term", r.terms);
  return o;
}

struct InnerOpts {
  std::string measure = "-";
  std::string set;
  std::string op = "hp";
  double p = 0.3;
  double q = 1.0;
  int depth = 30;
  int whitney = 40;
  int n_theta = 256;
  int n_r = 64;
  double min_depth = 1e-4;
};

Output run_inner(const InnerOpts& io) {
  auto mu = load_measure(io.measure);
  Output o;
  if (io.op == "raster") {
    if (io.n_theta < 1 || io.n_r < 1) throw RangeError("raster sizes must be positive");
    auto samples = modulus_raster(mu, io.n_theta, io.n_r, io.min_depth);
    o.header = {"theta", "r", "value"};
    for (const auto& s : samples) o.rows.push_back({s.theta, s.r, s.value});
    o.report = {{"n_theta", io.n_theta}, {"n_r", io.n_r}, {"min_depth", io.min_depth}, {"samples", samples.size()}};
    return o;
  }
  if (io.op == "besov") {
    check_depth(io.depth, "--depth");
    auto r = besov_integral(mu, io.p, io.q, io.depth);
    o.report = norm_json(r);
    indexed_table(o, "term", r.per_level);
  } else {
    check_depth(io.whitney, "--whitney-depth");
    const ClosedSet E = io.set.empty() ? ClosedSet::support_of(mu) : load_closed_set(io.set);
    QuadratureOptions opt;
    opt.whitney_depth = io.whitney;
    NormReport r;
    if (io.op == "hp") {
      r = hp_norm_boundary(mu, E, io.p, opt);
    } else if (io.op == "hp-test") {
      r = hp_test_sum(mu, E, io.p);
    } else {
      r = nevanlinna_norm(mu, E, opt);
    }
    o.report = norm_json(r);
    indexed_table(o, "gap_term", r.per_gap);
    if (!r.quadrature_ok) {
      o.violation = true;
      o.violation_what = "quadrature did not reach its tolerance";
    }
  }
  o.report["op"] = io.op;
  return o;
}

struct PdeOpts {
  double p = 5.0;
  double alpha = 0.5;
  double a0 = 0.3;
  int max_iter = 100000;
  double tol = 1e-6;
  std::string measure = "-";
  std::string set;
  double beta = 0.25;
  double gamma = 1.5;
  double psi = 1.0;
  int points = 8;
};

Output run_pde_maximal(const PdeOpts& po) {
  if (po.points < 1 || po.points > 15) throw RangeError("--points must lie in [1, 15]");
  std::vector<double> grid{0.0};
  for (int k = 1; k <= po.points; ++k) grid.push_back(1.0 - std::pow(10.0, -k));
  auto s = maximal_solution_radial(po.p, grid);
  Output o;
  o.header = {"r", "u", "normalized"};
  for (std::size_t i = 0; i < s.r.size(); ++i) o.rows.push_back({s.r[i], s.u[i], s.normalized[i]});
  o.report = {{"p", po.p},
              {"alpha", s.params.alpha},
              {"C_alpha", s.params.C_alpha},
              {"u0", s.u0},
              {"blowup_radius", s.blowup},
              {"bisections", s.bisections},
              {"r", s.r},
              {"u", s.u},
              {"normalized", s.normalized}};
  return o;
}

Output run_pde_restore(const PdeOpts& po) {
  auto t = restoring_iteration(po.a0, po.alpha, po.max_iter, po.tol);
  Output o;
  indexed_table(o, "a", t.values);
  o.report = {{"alpha", po.alpha},
              {"a0", po.a0},
              {"iterations", t.iterations},
              {"converged", t.converged},
              {"monotone", t.monotone},
              {"final", t.values.back()},
              {"b_of_1", restoring_constant(1.0, po.alpha)}};
  if (!t.converged || !t.monotone) {
    o.violation = true;
    o.violation_what = "restoring iteration did not converge monotonically";
  }
  return o;
}

Output run_pde_tents(const PdeOpts& po) {
  auto mu = load_measure(po.measure);
  const ClosedSet E = po.set.empty() ? ClosedSet::support_of(mu) : load_closed_set(po.set);
  auto params = params_of_p(po.p);
  TentConfig cfg{po.gamma, po.psi, po.beta};
  validate_tent_config(params, cfg);
  auto h = tent_heights(E, mu, params, cfg);
  auto c1 = condition1_sum(E, mu, params, cfg);
  auto c2 = mu_average_condition2(E, mu, params, cfg);
  Output o;
  o.header = {"gap", "left", "length", "height", "bracket"};
  auto gaps = E.gaps();
  for (std::size_t i = 0; i < gaps.size(); ++i)
    o.rows.push_back({double(i), gaps[i].left().turns(), gaps[i].length(), h[i],
                      i < c2.brackets.size() ? c2.brackets[i] : NAN});
  o.report = {{"alpha", params.alpha},
              {"heights", h},
              {"condition1",
               {{"raw_sum", c1.raw_sum}, {"factor1", c1.factor1}, {"factor2", c1.factor2}, {"lambda", c1.lambda},
                {"inner_exponent", c1.inner_exponent}, {"holder_ok", c1.holder_ok}, {"terms", c1.terms}}},
              {"condition2_average",
               {{"value", c2.value}, {"arc_sum", c2.arc_sum}, {"max_bracket", c2.max_bracket}}}};
  if (!c1.holder_ok) {
    o.violation = true;
    o.violation_what = "Hoelder split failed";
  }
  return o;
}

Output run_reproduce(const std::string& name, const std::string& dir) {
  std::vector<SuiteOutcome> outcomes;
  if (name == "all") {
    for (const auto& n : suite_names()) outcomes.push_back(run_suite(n));
  } else {
    outcomes.push_back(run_suite(name));
  }
  Output o;
  o.report = json::array();
  o.header = {"criterion", "pass", "seconds"};
  bool all = true;
  for (const auto& r : outcomes) {
    auto files = dir.empty() ? std::vector<std::string>{} : write_tables(r, dir);
    json tables = json::object();
    for (const auto& t : r.tables) tables[t.name] = {{"header", t.header}, {"rows", t.rows}};
    o.report.push_back({{"suite", r.name},
                        {"criterion", r.id},
                        {"pass", r.pass},
                        {"seconds", r.seconds},
                        {"budget", r.budget},
                        {"detail", r.detail},
                        {"files", files},
                        {"tables", tables}});
    o.rows.push_back({double(r.id), r.pass ? 1.0 : 0.0, r.seconds});
    std::cerr << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    all = all && r.pass;
  }
  if (!all) {
    o.violation = true;
    o.violation_what = "a reproduction suite failed";
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beurling-Carleson sets, inner functions and the related PDE toolkit"};
  app.require_subcommand(1);
  Global global;
  app.add_flag("--strict", global.strict, "exit with code 6 when an invariant check is flagged");
  app.add_option("--format", global.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("-o,--out", global.out, "output path, - for stdout")->capture_default_str();
  std::function<void()> action;

  // gen
  auto* gen = app.add_subcommand("gen", "generate measures and closed sets");
  gen->require_subcommand(1);
  GenOpts gopt;
  auto what = [&](CLI::App* c) {
    c->add_option("--what", gopt.what, "measure or set")->check(CLI::IsMember({"measure", "set"}))->capture_default_str();
  };
  auto* gc = gen->add_subcommand("cantor", "Cantor set and Cantor measure");
  gc->add_option("--A", gopt.A, "reciprocal child length")->capture_default_str();
  gc->add_option("--G", gopt.G, "generations")->capture_default_str();
  what(gc);
  gc->callback([&] {
    action = [&] {
      CantorSpec s{gopt.A, gopt.G};
      auto cs = cantor_set(s);
      emit_generated(global, gopt.what, gopt.what == "set" ? AtomicMeasure() : cantor_measure(s), cs.set);
    };
  });
  auto* gp = gen->add_subcommand("pruned", "pruned Cantor set and its endpoint measure");
  gp->add_option("--p", gopt.p)->capture_default_str();
  gp->add_option("--alpha", gopt.alpha, "pruning exponent, in (1, 1+p)")->capture_default_str();
  gp->add_option("--G", gopt.G, "generations")->capture_default_str();
  what(gp);
  gp->callback([&] {
    action = [&] {
      auto pc = pruned_cantor(gopt.p, gopt.alpha, gopt.G);
      emit_generated(global, gopt.what, pc.measure, pc.set);
    };
  });
  auto* ga = gen->add_subcommand("atoms", "n equally spaced atoms of mass n^-(2-eps)");
  ga->add_option("--n", gopt.n)->capture_default_str();
  ga->add_option("--eps", gopt.eps)->capture_default_str();
  what(ga);
  ga->callback([&] {
    action = [&] {
      auto mu = equally_spaced_atoms(gopt.n, gopt.eps);
      emit_generated(global, gopt.what, mu, ClosedSet::support_of(mu));
    };
  });

  // bc-norm
  auto* bc = app.add_subcommand("bc-norm", "the four comparable Beurling-Carleson quantities of a set");
  std::string set_path = "-";
  GaugeOpts gauge;
  int bc_depth = 10;
  bc->add_option("--set", set_path, "closed set file")->capture_default_str();
  add_gauge_options(bc, gauge);
  bc->add_option("--depth", bc_depth, "dyadic depth")->capture_default_str();
  bc->callback([&] { action = [&] { emit(global, run_bc_norm(set_path, gauge, bc_depth)); }; });

  // roberts
  auto* rb = app.add_subcommand("roberts", "Roberts grating decomposition");
  RobertsOpts ropt;
  rb->add_option("--measure", ropt.measure)->capture_default_str();
  add_gauge_options(rb, gauge);
  rb->add_option("--C", ropt.C)->capture_default_str();
  rb->add_option("--j0", ropt.j0)->capture_default_str();
  rb->add_option("--layers", ropt.layers)->capture_default_str();
  rb->callback([&] { action = [&] { emit(global, run_roberts(ropt, gauge)); }; });

  // corona
  auto* co = app.add_subcommand("corona", "heavy/light corona decomposition");
  std::string co_measure = "-";
  CoronaParams cparams;
  bool area_bound = false;
  co->add_option("--measure", co_measure)->capture_default_str();
  co->add_option("--M", cparams.M, "heavy density threshold")->capture_default_str();
  co->add_option("--depth", cparams.depth)->capture_default_str();
  co->add_option("--divisor", cparams.light_ratio_divisor, "light arcs have density at most M/divisor")
      ->capture_default_str();
  co->add_flag("--area-bound", area_bound, "also compare carried-set arcs with the superlevel area");
  co->callback([&] { action = [&] { emit(global, run_corona(co_measure, cparams, area_bound)); }; });

  // area
  auto* ar = app.add_subcommand("area", "area of the sublevel set |S| < level weighted by (1-|z|)^-sigma");
  std::string ar_measure = "-";
  double sigma = 1.3, level = 0.5;
  int ar_depth = 30;
  ar->add_option("--measure", ar_measure)->capture_default_str();
  ar->add_option("--sigma", sigma)->capture_default_str();
  ar->add_option("--level", level)->capture_default_str();
  ar->add_option("--depth", ar_depth)->capture_default_str();
  ar->callback([&] { action = [&] { emit(global, run_area(ar_measure, sigma, level, ar_depth)); }; });

  // inner
  auto* in = app.add_subcommand("inner", "norms and rasters of the singular inner function");
  InnerOpts iopt;
  in->add_option("--measure", iopt.measure)->capture_default_str();
  in->add_option("--set", iopt.set, "closed set; defaults to the support of the measure");
  in->add_option("--op", iopt.op)
      ->check(CLI::IsMember({"hp", "hp-test", "nev", "besov", "raster"}))
      ->capture_default_str();
  in->add_option("--p", iopt.p)->capture_default_str();
  in->add_option("--q", iopt.q, "Besov exponent in [1, 2]")->capture_default_str();
  in->add_option("--depth", iopt.depth, "sweep depth for besov")->capture_default_str();
  in->add_option("--whitney-depth", iopt.whitney)->capture_default_str();
  in->add_option("--n-theta", iopt.n_theta)->capture_default_str();
  in->add_option("--n-r", iopt.n_r)->capture_default_str();
  in->add_option("--min-depth", iopt.min_depth)->capture_default_str();
  in->callback([&] {
    action = [&] {
      if (iopt.op == "raster") global.format = "csv";
      emit(global, run_inner(iopt));
    };
  });

  // pde
  auto* pde = app.add_subcommand("pde", "radial maximal solutions, the restoring map and tent sums");
  pde->require_subcommand(1);
  PdeOpts popt;
  auto* pm = pde->add_subcommand("maximal", "radial maximal solution of Laplace u = u^p");
  pm->add_option("--p", popt.p)->capture_default_str();
  pm->add_option("--points", popt.points, "samples at 1-r = 10^-k, k = 1..points")->capture_default_str();
  pm->callback([&] { action = [&] { emit(global, run_pde_maximal(popt)); }; });
  auto* pr = pde->add_subcommand("restore", "iterate the restoring map");
  pr->add_option("--alpha", popt.alpha)->capture_default_str();
  pr->add_option("--a0", popt.a0)->capture_default_str();
  pr->add_option("--max-iter", popt.max_iter)->capture_default_str();
  pr->add_option("--tol", popt.tol)->capture_default_str();
  pr->callback([&] { action = [&] { emit(global, run_pde_restore(popt)); }; });
  auto* pt = pde->add_subcommand("tents", "tent heights and the two tent conditions");
  pt->add_option("--measure", popt.measure)->capture_default_str();
  pt->add_option("--set", popt.set, "closed set; defaults to the support of the measure");
  pt->add_option("--p", popt.p)->capture_default_str();
  pt->add_option("--beta", popt.beta)->capture_default_str();
  pt->add_option("--gamma", popt.gamma)->capture_default_str();
  pt->add_option("--psi", popt.psi)->capture_default_str();
  pt->callback([&] { action = [&] { emit(global, run_pde_tents(popt)); }; });

  // reproduce
  auto* rp = app.add_subcommand("reproduce", "run a scripted experiment suite");
  std::string suite;
  std::string table_dir;
  std::string names = "all";
  for (const auto& n : suite_names()) names += ", " + n;
  rp->add_option("suite", suite, names)->required();
  rp->add_option("--tables", table_dir, "directory for the CSV tables");
  rp->callback([&] { action = [&] { emit(global, run_reproduce(suite, table_dir)); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ParseError("").exit_code();
  }

  try {
    if (action) action();
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
