// gkflow: command-line driver for the generalized-geometry verification
// suites and the flow pipeline.  Every subcommand emits a versioned JSON
// report (or CSV/SVG where a time series exists) and exits 0 only when all
// checks pass.  Exit codes: 0 pass, 1 check failure, 2 usage error,
// 3 numerical abort (chart exit or singular data).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gkflow/examples.hpp"
#include "gkflow/gcs.hpp"
#include "gkflow/gk_build.hpp"
#include "gkflow/metric_bismut.hpp"
#include "gkflow/report.hpp"
#include "gkflow/spinor.hpp"
#include "gkflow/zalg.hpp"

namespace {

using namespace gkflow;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string example = "kahler_torus_T4";
  double h = 1e-3;
  double dt = 1e-2;
  double t_max = 1.0;
  long steps = 0;  // integration steps over [0, t_max]; 0 = derive from dt
  long samples = 64;
  unsigned long seed = 0;
  std::string out;
  std::string format = "json";
  bool bad_twist = false;
  std::vector<double> c_values;
  long k_max = 6;
  long degree = 3;
};

void apply_config(Options& o, const report::Config& cfg) {
  o.example = cfg.get("example", o.example);
  o.h = cfg.get_double("h", o.h);
  o.dt = cfg.get_double("dt", o.dt);
  o.t_max = cfg.get_double("t_max", o.t_max);
  o.steps = cfg.get_long("steps", o.steps);
  o.samples = cfg.get_long("samples", o.samples);
  o.seed = static_cast<unsigned long>(cfg.get_long("seed", static_cast<long>(o.seed)));
  o.out = cfg.get("out", o.out);
  o.format = cfg.get("format", o.format);
}

examples::ExampleGeometry load_example(const Options& o, const report::Config& cfg) {
  examples::ExampleGeometry e;
  try {
    e = examples::get(o.example);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  e.chart.h = o.h;
  e.sample_region.h = o.h;
  for (const auto& [key, value] : cfg.kv)
    if (key.rfind("tol.", 0) == 0) e.tolerances[key.substr(4)] = std::stod(value);
  return e;
}

report::Report make_report(const std::string& command, const Options& o,
                           const std::string& example = "") {
  report::Report rep;
  rep.command = command;
  rep.example = example;
  rep.env.h = o.h;
  rep.env.dt = o.dt;
  rep.env.samples = static_cast<int>(o.samples);
  rep.env.seed = o.seed;
  return rep;
}

// Writes the selected format to --out (stdout when unset) and a short
// human-readable summary to stderr.
void emit(const report::Report& rep, const Options& o, const report::Table* table) {
  std::string payload;
  if (o.format == "json") {
    payload = rep.to_json();
  } else if (o.format == "csv") {
    payload = table ? table->to_csv() : rep.to_csv();
  } else if (o.format == "svg") {
    if (!table || table->columns.size() < 2)
      throw UsageError("--format svg requires a time-series command (flow, zalg)");
    std::vector<std::string> ys(table->columns.begin() + 1, table->columns.end());
    payload = report::svg_line_plot(*table, table->columns[0], ys,
                                    rep.command + (rep.example.empty() ? "" : " / " + rep.example));
  } else {
    throw UsageError("unknown --format '" + o.format + "' (expected json, csv, or svg)");
  }
  if (o.out.empty())
    std::cout << payload;
  else
    report::write_file(o.out, payload);

  for (const report::Check& c : rep.checks)
    std::fprintf(stderr, "[%s] %-32s residual=%10.3e tol=%8.1e\n", c.pass ? " OK " : "FAIL",
                 c.id.c_str(), c.residual, c.tolerance);
  for (const std::string& w : rep.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  std::fprintf(stderr, "%s: %s\n", rep.command.c_str(), rep.pass() ? "PASS" : "FAIL");
}

int finish(const report::Report& rep, const Options& o, const report::Table* table = nullptr) {
  emit(rep, o, table);
  return rep.pass() ? 0 : 1;
}

// --------------------------------------------------------------------------

int cmd_axioms(const Options& o, const report::Config& cfg) {
  examples::ExampleGeometry e = load_example(o, cfg);
  std::vector<Vec> pts = e.samples(static_cast<int>(o.samples), o.seed);
  report::Report rep = make_report("axioms", o, e.name);

  fields::ThreeFormField twist = e.H;
  if (o.bad_twist) {
    if (e.chart.dim < 4)
      throw UsageError("--bad-twist needs a chart of dimension >= 4 (a 3-form on a "
                       "3-dimensional chart is closed automatically)");
    const int dim = e.chart.dim;
    twist = [dim](const Vec& p) {
      fields::Alt3 v(dim);
      v.set(1, 2, 3, p(0));  // d(x0 dx1^dx2^dx3) = dx0^dx1^dx2^dx3 != 0
      return v;
    };
    rep.warnings.push_back("twist replaced by a non-closed 3-form (negative control); "
                           "the Jacobi and closedness checks are expected to fail");
  }

  // The Jacobi check nests two difference stencils, so it runs at 4th order;
  // 2nd-order truncation on trigonometric sections would eat the tolerance.
  const double tol = e.tol("axioms", 1e-4);
  fields::AxiomReport ar =
      fields::courant_axiom_suite(e.chart, twist ? &twist : nullptr, pts, o.seed, 4);
  rep.add("axioms.jacobi", "[a,[b,c]] - [[a,b],c] - [b,[a,c]] = 0 (twisted bracket)", ar.jacobi,
          tol);
  rep.add("axioms.leibniz", "[a, f b] - f[a,b] - (X_a f) b = 0", ar.leibniz, tol);
  rep.add("axioms.invariance", "X_a<b,c> - <[a,b],c> - <b,[a,c]> = 0", ar.invariance, tol);
  rep.add("axioms.skew_anomaly", "[a,a] - (0, d(xi(X))) = 0", ar.skew_anomaly, tol);
  rep.add("axioms.oneform_bracket", "[xi, eta] = 0 for pure one-forms", ar.oneform_bracket, tol);
  rep.add("axioms.twist_closed", "dH = 0", ar.dH, e.tol("dH", tol));
  return finish(rep, o);
}

int cmd_gcs_check(const Options& o, const report::Config& cfg) {
  examples::ExampleGeometry e = load_example(o, cfg);
  if (!e.I) throw UsageError("example '" + e.name + "' carries no complex structure");
  std::vector<Vec> pts = e.samples(static_cast<int>(o.samples), o.seed);
  report::Report rep = make_report("gcs-check", o, e.name);

  const double tol = e.tol("holo_poisson", 1e-4);
  double isq = 0.0;
  for (const Vec& p : pts) {
    Mat i = e.I(p);
    isq = std::max(isq, (i * i + Mat::Identity(i.rows(), i.cols())).cwiseAbs().maxCoeff());
  }
  rep.add("gcs.i_square", "I^2 + 1 = 0", isq, e.tol("i_square", 1e-10));

  gcs::HoloPoisson hp{e.I, e.sigma, e.chart};
  gcs::HoloPoissonReport hr = gcs::validate_holo_poisson(hp, pts);
  rep.add("gcs.nijenhuis_i", "Nijenhuis tensor of I vanishes", hr.nijenhuis_i, tol);
  rep.add("gcs.sigma_type", "sigma has no (1,1) or (0,2) part", hr.type20, tol);
  rep.add("gcs.sigma_schouten", "[sigma, sigma] = 0", hr.schouten, tol);

  gcs::GCStructure gc = gcs::from_holo_poisson(hp);
  double jsq = 0.0, orth = 0.0;
  const Mat pairing = linalg::pairing_matrix(e.chart.dim);
  for (const Vec& p : pts) {
    Mat j = gc.J(p);
    jsq = std::max(jsq, (j * j + Mat::Identity(j.rows(), j.cols())).cwiseAbs().maxCoeff());
    orth = std::max(orth, (j.transpose() * pairing * j - pairing).cwiseAbs().maxCoeff());
  }
  rep.add("gcs.j_square", "curly J^2 + 1 = 0", jsq, e.tol("i_square", 1e-10));
  rep.add("gcs.j_orthogonal", "<Jx, Jy> = <x, y>", orth, e.tol("i_square", 1e-10));
  rep.add("gcs.gen_nijenhuis", "generalized Nijenhuis tensor of curly J vanishes",
          gcs::gen_nijenhuis(gc, pts), tol);
  return finish(rep, o);
}

int cmd_bismut_check(const Options& o, const report::Config& cfg) {
  examples::ExampleGeometry e = load_example(o, cfg);
  if (!e.g) throw UsageError("example '" + e.name + "' carries no metric");
  std::vector<Vec> pts = e.samples(static_cast<int>(o.samples), o.seed);
  report::Report rep = make_report("bismut-check", o, e.name);

  bismut::GMetricField m{e.g, e.H, e.chart};
  const double tol_tp = e.tol("two_path", 1e-8);
  const double tol_t = e.tol("torsion", 1e-8);
  if (m.twisted())
    rep.add("bismut.twist_closed", "dH = 0", m.closedness_residual(pts), e.tol("dH", 1e-4));
  rep.add("bismut.metricity_plus", "nabla^+ g = 0 (nabla + (1/2) g^{-1} H)",
          bismut::metricity_residual(m, pts, +1), tol_t);
  rep.add("bismut.metricity_minus", "nabla^- g = 0 (nabla - (1/2) g^{-1} H)",
          bismut::metricity_residual(m, pts, -1), tol_t);
  rep.add("bismut.torsion_plus", "torsion of nabla^+ equals g^{-1} H contraction",
          bismut::bismut_torsion_residual(m, pts, +1), tol_t);
  rep.add("bismut.two_path", "matrix and bracket constructions of D agree",
          bismut::two_path_discrepancy(m, pts), tol_tp);

  bismut::GenConnection d = bismut::gen_bismut_matrix(m);
  double tval = 0.0;
  for (const Vec& p : pts) {
    fields::Alt3 diff = bismut::torsion_tensor(d, m, p) - bismut::torsion_expected(m, p);
    tval = std::max(tval, diff.max_abs());
  }
  rep.add("bismut.torsion_value", "T_D = pi_+^* H + pi_-^* H", tval, tol_t);
  rep.add("bismut.torsion_skew", "T_D(a,b,c) totally skew",
          bismut::torsion_skewness_residual(d, m, pts), tol_t);
  rep.add("bismut.torsion_mixed", "T_D vanishes on mixed C+/C- triples",
          bismut::torsion_mixed_residual(d, m, pts), tol_t);
  return finish(rep, o);
}

// Round-trip of the bi-Hermitian data through the converse constructor:
// returns max over pts of ||g' - g||, ||b' - b||, ||F' - F||, ||Q' - Q||.
double round_trip_residual(const gk::GKPair& pair, const gk::BraneSolution& s,
                           const std::vector<Vec>& pts) {
  gk::BraneSolution back = gk::solution_from_gk(pair.g, pair.I, pair.J, pair.chart, pts);
  gk::GKBuildReport rb;
  gk::GKPair rebuilt = gk::gk_from_solution(back, pts, 1e-3, &rb);
  double worst = 0.0;
  for (const Vec& p : pts) {
    worst = std::max(worst, (rebuilt.g(p) - pair.g(p)).cwiseAbs().maxCoeff());
    worst = std::max(worst, (rebuilt.b(p) - pair.b(p)).cwiseAbs().maxCoeff());
    worst = std::max(worst, (back.F(p) - s.F(p)).cwiseAbs().maxCoeff());
    worst = std::max(worst, (back.Q(p) - s.Q(p)).cwiseAbs().maxCoeff());
  }
  return worst;
}

int cmd_gk_assemble(const Options& o, const report::Config& cfg) {
  examples::ExampleGeometry e = load_example(o, cfg);
  std::vector<Vec> pts = e.samples(static_cast<int>(o.samples), o.seed);
  report::Report rep = make_report("gk-assemble", o, e.name);

  gk::BraneSolution s;
  double check_tol;
  if (e.X && e.I && e.Q && e.F) {
    // Family member of the flow at t = t_max.
    gk::FlowInput in = examples::flow_input(e);
    gk::FlowConfig fc;
    fc.dt = o.dt;
    fc.t_max = o.t_max;
    fc.sample_pts = pts;
    fc.validate_tol = e.tol("flow_validate", 1e-4);
    s = gk::family_solution(in, fc, o.t_max);
    check_tol = e.tol("gk_invariants", 1e-5);
    rep.params["t"] = o.t_max;
  } else if (e.I && e.F) {
    // Diagonal solution (J = I, Q = 0): the Kahler case.
    s = gk::BraneSolution{e.I, e.I,
                          [dim = e.chart.dim](const Vec&) { return Mat(Mat::Zero(dim, dim)); },
                          e.F, e.chart};
    check_tol = e.tol("round_trip", 1e-8);
  } else {
    throw UsageError("example '" + e.name + "' carries neither a flow datum nor (I, F)");
  }

  gk::GKBuildReport br;
  bool positive = true;
  std::string build_error;
  try {
    gk::GKPair pair = gk::gk_from_solution(s, pts, check_tol, &br);
    rep.add("gk.eigenbundle", "L+/L- are +i/-i eigenbundles of (J_B, J_A)",
            gk::eigenbundle_residual(pair, pts), check_tol);
    rep.add("gk.round_trip", "(g, b, F, Q) survive the converse extraction",
            round_trip_residual(pair, s, pts), check_tol);
    if (!e.X)
      rep.add("gk.ja_symplectic", "J_A = [[0, -F^{-1}], [F, 0]] in the Kahler case",
              gk::ja_symplectic_residual(pair, pts), check_tol);
  } catch (const std::domain_error& ex) {
    positive = false;
    build_error = ex.what();
  } catch (const std::invalid_argument& ex) {
    positive = false;
    build_error = ex.what();
  }
  rep.add("gk.groupoid_linear", "J - I = QF", br.groupoid_linear, check_tol);
  rep.add("gk.groupoid_postcd", "FJ + I^T F = 0", br.groupoid_postcd, check_tol);
  rep.add("gk.square", "I^2 = J^2 = -1", br.square_residual, check_tol);
  rep.add("gk.metric_positive", "min eigenvalue of g = -(1/2) F (I + J) is positive",
          -br.min_eigenvalue, 0.0);
  if (!positive) rep.warnings.push_back("assembly aborted: " + build_error);
  return finish(rep, o);
}

int cmd_flow(const Options& o, const report::Config& cfg) {
  examples::ExampleGeometry e = load_example(o, cfg);
  gk::FlowInput in;
  try {
    in = examples::flow_input(e);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  std::vector<Vec> pts = e.samples(static_cast<int>(o.samples), o.seed);
  report::Report rep = make_report("flow", o, e.name);

  double dt = o.dt;
  long steps = o.steps;
  if (steps > 0)
    dt = o.t_max / static_cast<double>(steps);
  else
    steps = std::lround(o.t_max / dt);
  if (steps <= 0) throw UsageError("flow needs t_max/dt >= 1 integration step");
  rep.env.dt = dt;
  rep.params["t_max"] = o.t_max;
  rep.params["steps"] = static_cast<double>(steps);

  const double tol_v = e.tol("flow_validate", 1e-4);
  auto [rq, ri] = gk::validate_flow_input(in, pts);
  rep.add("flow.module_poisson", "L_X Q = 0", rq, tol_v);
  rep.add("flow.module_i", "L_X I = QF at t = 0", ri, tol_v);
  if (!rep.pass()) {
    rep.warnings.push_back("input fails the module equations; flow not run");
    return finish(rep, o);
  }

  gk::FlowConfig fc;
  fc.dt = dt;
  fc.t_max = o.t_max;
  fc.outputs = static_cast<int>(std::min<long>(steps, 20));
  fc.validate_tol = tol_v;
  fc.sample_pts = pts;

  std::vector<gk::FlowState> states = gk::run_flow(in, fc);

  // Characterization sample: a small subset keeps the per-output D J check
  // affordable; the full-point residuals r1/r2 already cover transport.
  std::vector<Vec> char_pts(pts.begin(), pts.begin() + std::min<size_t>(pts.size(), 3));

  report::Table table;
  table.columns = {"t", "r1", "r2", "positivity_margin", "type11", "dj_residual"};
  double r1 = 0.0, r2 = 0.0, type11 = 0.0, dj = 0.0, torsion_holo = 0.0;
  double t_star = -1.0;
  long aborted = 0;
  const gk::FlowState* prev = nullptr;
  bool gk_any = false;
  for (const gk::FlowState& st : states) {
    double row_dj = std::numeric_limits<double>::quiet_NaN();
    if (st.positivity_margin > 0.0) {
      try {
        gk::GKPair pair = gk::gk_family(in, fc, st.t, e.tol("gk_invariants", 1e-5));
        gk::CharacterizationInput ci = gk::characterization_input(pair);
        auto [dja, ta] = bismut::gk_characterization(ci.ja, ci.metric, char_pts);
        auto [djb, tb] = bismut::gk_characterization(ci.jb, ci.metric, char_pts);
        row_dj = std::max(dja, djb);
        dj = std::max(dj, row_dj);
        torsion_holo = std::max(torsion_holo, std::max(ta, tb));
        gk_any = true;
      } catch (const std::domain_error& ex) {
        ++aborted;
        rep.warnings.push_back("t = " + std::to_string(st.t) +
                               ": assembly aborted (" + ex.what() + ")");
      } catch (const std::invalid_argument& ex) {
        // Typically an over-coarse --dt: the integrated family no longer
        // satisfies the groupoid relations at the invariant tolerance.
        ++aborted;
        rep.warnings.push_back("t = " + std::to_string(st.t) +
                               ": assembly aborted (" + ex.what() + ")");
      }
    } else if (t_star < 0.0) {
      // Linear interpolation of the first margin zero-crossing.
      if (prev && prev->positivity_margin > 0.0)
        t_star = prev->t + (st.t - prev->t) * prev->positivity_margin /
                               (prev->positivity_margin - st.positivity_margin);
      else
        t_star = st.t;
      rep.warnings.push_back("positivity lost near t = " + std::to_string(t_star) +
                             "; assembly skipped past the threshold");
    }
    table.add_row({st.t, st.r1, st.r2, st.positivity_margin, st.type11, row_dj});
    r1 = std::max(r1, st.r1);
    r2 = std::max(r2, st.r2);
    type11 = std::max(type11, st.type11);
    prev = &st;
  }
  if (t_star >= 0.0) rep.params["t_star"] = t_star;

  rep.add("flow.r1", "I_t - I_0 = Q Int_0^t F_s ds", r1, e.tol("r1", 1e-6));
  rep.add("flow.r2", "(Int F_s) I_t + I_0^T (Int F_s) = 0", r2, e.tol("r2", 1e-6));
  rep.add("flow.type11", "F_t is (1,1) for I_t", type11, e.tol("type11", 1e-8));
  rep.add("flow.assembly", "pair assembly succeeded at every output before positivity loss",
          static_cast<double>(aborted), 0.0);
  if (gk_any) {
    rep.add("flow.dj", "D J = 0 for the assembled pair", dj, e.tol("characterization", 1e-5));
    rep.add("flow.torsion_holo", "T_D has no (3,0) + (0,3) part", torsion_holo,
            e.tol("characterization", 1e-5));
  }
  return finish(rep, o, &table);
}

int cmd_spinor(const Options& o, const report::Config& /*cfg*/) {
  std::vector<double> cs = o.c_values;
  if (cs.empty()) cs = {0.0, 0.5, 1.0, 2.0};
  report::Report rep = make_report("spinor", o);

  using Cplx = std::complex<double>;
  // z on and inside the chart annulus (|z| = 0.5 boundary included, z = 0
  // excluded by construction); w unrestricted.
  const std::vector<Cplx> zs = {{0.5, 0.0}, {-0.5, 0.0}, {0.0, 0.5}, {1.0, 1.0}, {2.0, 0.0}};
  const std::vector<Cplx> ws = {{0.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}, {0.3, 0.7}, {0.0, -2.0}};

  examples::ExampleGeometry base = examples::elliptic(0.0);
  for (double c : cs) {
    double worst = 0.0;
    for (const Cplx& z : zs)
      for (const Cplx& w : ws) worst = std::max(worst, spinor::verify_elliptic(c, z, w));
    char buf[32];
    std::snprintf(buf, sizeof(buf), "[c=%g]", c);
    const std::string suffix = buf;
    rep.add("spinor.pure_spinor" + suffix,
            "e^{F_c} phi_0(sigma_0, Omega_0) = phi_c(sigma_c, Omega_c)", worst,
            c == 0.0 ? 1e-15 : 1e-13);

    examples::ExampleGeometry ec = examples::elliptic(c);
    ec.chart.h = o.h;
    ec.sample_region.h = o.h;
    std::vector<Vec> pts = ec.samples(static_cast<int>(o.samples), o.seed);
    auto [lin, postcd] = gcs::groupoid_residual(base.I, ec.I, ec.Q, ec.F, pts);
    rep.add("spinor.bridge_linear" + suffix, "I_c - I_0 = Q F_c", lin,
            ec.tol("groupoid_bridge", 1e-4));
    rep.add("spinor.bridge_postcd" + suffix, "F_c I_c + I_0^T F_c = 0", postcd,
            ec.tol("groupoid_bridge", 1e-4));
    double dim = 0.0;
    for (const Vec& p : pts)
      dim = std::max(dim, (ec.sigma.im(p) - base.sigma.im(p)).cwiseAbs().maxCoeff());
    rep.add("spinor.im_sigma" + suffix, "Im sigma_c = Im sigma_0", dim,
            ec.tol("im_sigma", 1e-12));
  }
  return finish(rep, o);
}

int cmd_zalg(const Options& o, const report::Config& /*cfg*/) {
  if (o.k_max < 3) throw UsageError("--k-max must be >= 3");
  report::Report rep = make_report("zalg", o);
  rep.params["k_max"] = static_cast<double>(o.k_max);
  rep.params["degree"] = static_cast<double>(o.degree);

  zalg::GradedDims gd = zalg::ring_dims(static_cast<int>(o.k_max), static_cast<int>(o.degree));
  double dim_err = 0.0;
  for (size_t k = 0; k < gd.dims.size(); ++k) {
    long expected = k == 0 ? 1 : static_cast<long>(k) * o.degree;
    dim_err = std::max(dim_err, static_cast<double>(std::labs(gd.dims[k] - expected)));
  }
  rep.add("zalg.ring_dims", "dim R_k = 1, d, 2d, ... (linear growth)", dim_err, 0.0);

  std::vector<zalg::GrowthRow> rows = zalg::growth_compare(static_cast<int>(o.k_max));
  report::Table table;
  table.columns = {"k", "twisted_dim", "poly_dim", "deficit"};
  double pat_err = 0.0;
  for (const zalg::GrowthRow& r : rows) {
    table.add_row({static_cast<double>(r.k), static_cast<double>(r.ring),
                   static_cast<double>(r.poly), static_cast<double>(r.deficit)});
    long want = r.k <= 2 ? 0 : (r.k == 3 ? 1 : -1);  // -1: just positive
    if (want >= 0)
      pat_err = std::max(pat_err, static_cast<double>(std::labs(r.deficit - want)));
    else if (r.deficit <= 0)
      pat_err = std::max(pat_err, 1.0);
  }
  rep.add("zalg.deficit_pattern", "growth deficit 0,0,0,1,... (first kernel at k = 3)", pat_err,
          0.0);

  report::Table round = report::Table::from_csv(table.to_csv());
  double rt = round.columns == table.columns && round.rows.size() == table.rows.size() ? 0.0 : 1.0;
  for (size_t i = 0; rt == 0.0 && i < table.rows.size(); ++i)
    for (size_t j = 0; j < table.rows[i].size(); ++j)
      rt = std::max(rt, std::abs(round.rows[i][j] - table.rows[i][j]));
  rep.add("zalg.csv_round_trip", "CSV table survives parse(write(table))", rt, 0.0);
  return finish(rep, o, &table);
}

int cmd_list_examples(const Options& o, const report::Config& /*cfg*/) {
  if (o.format == "json") {
    std::string payload = "[";
    bool first = true;
    for (const std::string& name : examples::example_names()) {
      examples::ExampleGeometry e = examples::get(name);
      payload += std::string(first ? "" : ",") + "\n  {\"name\": \"" + e.name +
                 "\", \"dim\": " + std::to_string(e.chart.dim) + ", \"description\": \"" +
                 e.description + "\"}";
      first = false;
    }
    payload += "\n]\n";
    if (o.out.empty())
      std::cout << payload;
    else
      report::write_file(o.out, payload);
    return 0;
  }
  for (const std::string& name : examples::example_names()) {
    examples::ExampleGeometry e = examples::get(name);
    std::printf("%-18s dim=%d  %s\n", e.name.c_str(), e.chart.dim, e.description.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  try {
    apply_config(o, report::Config::from_env());
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  }

  CLI::App app{"gkflow: numerical checks for generalized Kahler structures built from "
               "holomorphic Poisson data"};
  app.set_help_flag("--help", "print help and exit");  // frees -h/--h for the FD step
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub, bool with_example) {
    sub->set_help_flag("--help", "print help and exit");
    if (with_example)
      sub->add_option("--example", o.example, "registered example name")
          ->capture_default_str();
    sub->add_option("--h", o.h, "finite-difference step for the residual estimators")
        ->capture_default_str();
    sub->add_option("--samples", o.samples, "number of sample points")->capture_default_str();
    sub->add_option("--seed", o.seed, "sample/section seed")->capture_default_str();
    sub->add_option("--out", o.out, "output path (stdout when unset)");
    sub->add_option("--format", o.format, "output format: json, csv, svg")
        ->capture_default_str();
  };

  CLI::App* ax = app.add_subcommand("axioms", "Courant algebroid identity suite");
  add_common(ax, true);
  ax->add_flag("--bad-twist", o.bad_twist,
               "replace the twist by a non-closed 3-form (negative control)");

  CLI::App* gc = app.add_subcommand("gcs-check",
                                    "holomorphic Poisson and generalized structure validators");
  add_common(gc, true);

  CLI::App* bi = app.add_subcommand("bismut-check",
                                    "two-path generalized Bismut connection and torsion checks");
  add_common(bi, true);

  CLI::App* ga = app.add_subcommand("gk-assemble",
                                    "assemble a generalized Kahler pair and verify it");
  add_common(ga, true);
  ga->add_option("--t-max", o.t_max, "family time for flow-backed examples")
      ->capture_default_str();
  ga->add_option("--dt", o.dt, "integration step")->capture_default_str();

  CLI::App* fl = app.add_subcommand("flow", "run the flow and verify the family");
  add_common(fl, true);
  fl->add_option("--t-max", o.t_max, "flow horizon")->capture_default_str();
  fl->add_option("--dt", o.dt, "integration step")->capture_default_str();
  fl->add_option("--steps", o.steps,
                 "integration steps over [0, t_max] (overrides --dt when > 0)")
      ->capture_default_str();

  CLI::App* sp = app.add_subcommand("spinor", "pure-spinor identity sweep for the elliptic family");
  add_common(sp, false);
  sp->add_option("--c", o.c_values, "deformation parameters (default 0 0.5 1 2)");

  CLI::App* za = app.add_subcommand("zalg", "twisted coordinate ring dimension counts");
  add_common(za, false);
  za->add_option("--k-max", o.k_max, "largest grading (>= 3)")->capture_default_str();
  za->add_option("--degree", o.degree, "polarization degree d")->capture_default_str();

  CLI::App* ls = app.add_subcommand("list-examples", "print the example registry");
  add_common(ls, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return 2;
  }

  report::Config cfg;
  try {
    cfg = report::Config::from_env();
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  }

  try {
    if (app.got_subcommand(ax)) return cmd_axioms(o, cfg);
    if (app.got_subcommand(gc)) return cmd_gcs_check(o, cfg);
    if (app.got_subcommand(bi)) return cmd_bismut_check(o, cfg);
    if (app.got_subcommand(ga)) return cmd_gk_assemble(o, cfg);
    if (app.got_subcommand(fl)) return cmd_flow(o, cfg);
    if (app.got_subcommand(sp)) return cmd_spinor(o, cfg);
    if (app.got_subcommand(za)) return cmd_zalg(o, cfg);
    if (app.got_subcommand(ls)) return cmd_list_examples(o, cfg);
    std::fprintf(stderr, "error: no subcommand selected\n");
    return 2;
  } catch (const UsageError& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  } catch (const ChartError& ex) {
    std::fprintf(stderr, "numerical abort: %s\n", ex.what());
    return 3;
  } catch (const std::domain_error& ex) {
    std::fprintf(stderr, "numerical abort: %s\n", ex.what());
    return 3;
  } catch (const std::invalid_argument& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  } catch (const std::logic_error& ex) {
    std::fprintf(stderr, "check failure: %s\n", ex.what());
    return 1;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  }
}
