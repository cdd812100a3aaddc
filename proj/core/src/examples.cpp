#include "gkflow/examples.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "gkflow/complexify.hpp"
#include "gkflow/spinor.hpp"

namespace gkflow::examples {

namespace {

using Cplx = std::complex<double>;

// Map-matrix of d/dz1 ^ d/dz2 on R^4 = C^2 (coordinates x1, y1, x2, y2).
MatC dz1_dz2_base() {
  VecC a1 = VecC::Zero(4), a2 = VecC::Zero(4);
  a1(0) = Cplx(0.5, 0);
  a1(1) = Cplx(0, -0.5);
  a2(2) = Cplx(0.5, 0);
  a2(3) = Cplx(0, -0.5);
  return a2 * a1.transpose() - a1 * a2.transpose();
}

// Roots of p[0] + p[1] t + p[2] t^2 + p[3] t^3 via the companion matrix of
// the trimmed polynomial.  An identically-zero polynomial reports a root at
// the origin so callers treat the whole line as vanishing.
std::vector<Cplx> cubic_roots(const std::array<Cplx, 4>& p, double scale) {
  const double eps = 1e-12 * std::max(scale, 1.0);
  int deg = 3;
  while (deg > 0 && std::abs(p[static_cast<size_t>(deg)]) < eps) --deg;
  if (deg == 0) {
    if (std::abs(p[0]) < eps) return {Cplx(0, 0)};
    return {};
  }
  MatC comp = MatC::Zero(deg, deg);
  for (int r = 1; r < deg; ++r) comp(r, r - 1) = 1.0;
  for (int r = 0; r < deg; ++r) comp(r, deg - 1) = -p[static_cast<size_t>(r)] / p[static_cast<size_t>(deg)];
  Eigen::ComplexEigenSolver<MatC> es(comp);
  std::vector<Cplx> roots;
  for (int r = 0; r < deg; ++r) roots.push_back(es.eigenvalues()(r));
  return roots;
}

// True when the cubic has a zero inside the closed chart box (both complex
// coordinates in [lo, hi]^2).  One coordinate is swept over a grid and the
// other solved exactly, in both orders, so curve-shaped zero sets are found
// that plain point sampling would miss.
bool cubic_vanishes_on_chart(const std::vector<Cplx>& c, double lo, double hi) {
  double scale = 0.0;
  for (const Cplx& v : c) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return true;
  const int kGrid = 24;
  auto in_box = [lo, hi](const Cplx& z) {
    return z.real() >= lo && z.real() <= hi && z.imag() >= lo && z.imag() <= hi;
  };
  for (int sweep = 0; sweep < 2; ++sweep) {
    for (int a = 0; a <= kGrid; ++a) {
      for (int b = 0; b <= kGrid; ++b) {
        Cplx s(lo + (hi - lo) * a / kGrid, lo + (hi - lo) * b / kGrid);
        // Collect the polynomial in the free coordinate at fixed s.
        std::array<Cplx, 4> p;
        if (sweep == 0) {  // fixed z2 = s, polynomial in z1
          p = {c[0] + c[2] * s + c[5] * s * s + c[9] * s * s * s,
               c[1] + c[4] * s + c[8] * s * s, c[3] + c[7] * s, c[6]};
        } else {  // fixed z1 = s, polynomial in z2
          p = {c[0] + c[1] * s + c[3] * s * s + c[6] * s * s * s,
               c[2] + c[4] * s + c[7] * s * s, c[5] + c[8] * s, c[9]};
        }
        for (const Cplx& root : cubic_roots(p, scale))
          if (in_box(root)) return true;
      }
    }
  }
  return false;
}

void validate(const ExampleGeometry& e) {
  std::vector<Vec> pts = e.samples(8, 101);
  if (e.I) {
    double tol = e.tol("i_square", 1e-10);
    for (const Vec& p : pts) {
      Mat i = e.I(p);
      double r = (i * i + Mat::Identity(i.rows(), i.cols())).cwiseAbs().maxCoeff();
      if (r > tol)
        throw std::logic_error(e.name + ": I fails I^2 = -1 (residual " + std::to_string(r) + ")");
    }
  }
  if (e.I && e.sigma.re) {
    gcs::HoloPoisson hp{e.I, e.sigma, e.chart};
    gcs::HoloPoissonReport rep = gcs::validate_holo_poisson(hp, pts);
    double tol = e.tol("holo_poisson", 1e-4);
    double worst = std::max({rep.i_square, rep.nijenhuis_i, rep.type20, rep.schouten});
    if (worst > tol)
      throw std::logic_error(e.name + ": holomorphic Poisson invariants fail (residual " +
                             std::to_string(worst) + ")");
  }
  if (e.g) {
    for (const Vec& p : pts) {
      Eigen::SelfAdjointEigenSolver<Mat> es(Mat(0.5 * (e.g(p) + e.g(p).transpose())));
      if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::logic_error(e.name + ": metric not positive at a sample point");
    }
  }
  if (e.H) {
    double r = fields::d_threeform_residual(e.H, e.chart, pts);
    if (r > e.tol("dH", 1e-4))
      throw std::logic_error(e.name + ": twist 3-form not closed (residual " +
                             std::to_string(r) + ")");
  }
  if (e.F) {
    fields::ThreeFormField df = fields::ext_d_twoform(e.F, e.chart);
    double worst = 0.0;
    const int n = e.chart.dim;
    for (const Vec& p : pts) {
      fields::Alt3 v = df(p);
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          for (int c = b + 1; c < n; ++c) worst = std::max(worst, std::abs(v(a, b, c)));
    }
    if (worst > e.tol("dF", 1e-4))
      throw std::logic_error(e.name + ": F not closed (residual " + std::to_string(worst) + ")");
  }
  if (e.X && e.I && e.Q && e.F && e.tolerances.count("flow_validate")) {
    gk::FlowInput in{e.I, e.Q, e.F, e.X, e.chart};
    auto [rq, ri] = gk::validate_flow_input(in, pts);
    double tol = e.tol("flow_validate", 1e-4);
    if (rq > tol || ri > tol)
      throw std::logic_error(e.name + ": flow module equations fail (" + std::to_string(rq) +
                             ", " + std::to_string(ri) + ")");
  }
}

ExampleGeometry kahler_torus() {
  ExampleGeometry e;
  e.name = "kahler_torus_T4";
  e.description = "flat Kahler 4-torus: standard I, flat g, omega = gI, Q = 0, untwisted";
  e.chart = Chart::cube(4, 0.0, 1.0, true);
  e.sample_region = e.chart;
  Mat i0 = complexify::standard_complex_structure(4);
  e.I = [i0](const Vec&) { return i0; };
  e.g = [](const Vec&) { return Mat(Mat::Identity(4, 4)); };
  e.F = [i0](const Vec&) { return i0; };  // omega = gI with g = 1
  e.Q = [](const Vec&) { return Mat(Mat::Zero(4, 4)); };
  e.sigma.re = [](const Vec&) { return Mat(Mat::Zero(4, 4)); };
  e.sigma.im = [](const Vec&) { return Mat(Mat::Zero(4, 4)); };
  e.tolerances = {{"axioms", 1e-4},  {"two_path", 1e-8},   {"dj", 1e-8},
                  {"torsion", 1e-8}, {"i_square", 1e-12},  {"holo_poisson", 1e-10},
                  {"dF", 1e-10},     {"round_trip", 1e-8}};
  return e;
}

ExampleGeometry torus_h() {
  ExampleGeometry e;
  e.name = "torus_T3_H";
  e.description = "flat 3-torus with constant twist H = 0.7 dx1^dx2^dx3";
  e.chart = Chart::cube(3, 0.0, 1.0, true);
  e.sample_region = e.chart;
  e.g = [](const Vec&) { return Mat(Mat::Identity(3, 3)); };
  e.H = fields::constant_threeform(3, 0, 1, 2, 0.7);
  e.tolerances = {{"axioms", 1e-4}, {"two_path", 1e-8}, {"torsion", 1e-8}, {"dH", 1e-12}};
  return e;
}

ExampleGeometry synthetic_flow() {
  ExampleGeometry e;
  e.name = "synthetic_flow_R4";
  e.description =
      "constant-coefficient flow datum on R^4: standard I0, sigma = dz1^v ^ dz2^v, "
      "F0 = dx1^dy1 + dx2^dy2, X = -(1/2) Q x";
  e.chart = Chart::cube(4, -2.2, 2.2, false);
  e.sample_region = Chart::cube(4, -1.0, 1.0, false);
  Mat i0 = complexify::standard_complex_structure(4);
  Mat qhat(4, 4);
  qhat << 0, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, -1, 0, 0, 0;
  Mat a = -0.5 * qhat;
  e.I = [i0](const Vec&) { return i0; };
  e.Q = [qhat](const Vec&) { return qhat; };
  e.F = [i0](const Vec&) { return i0; };
  e.g = [](const Vec&) { return Mat(Mat::Identity(4, 4)); };
  e.X = [a](const Vec& p) -> Vec { return a * p; };
  // sigma = d/dz1 ^ d/dz2 is constant with 4 Im(sigma) = Q.
  MatC base = dz1_dz2_base();
  Mat sre = base.real(), sim = base.imag();
  e.sigma.re = [sre](const Vec&) { return sre; };
  e.sigma.im = [sim](const Vec&) { return sim; };
  e.tolerances = {{"flow_validate", 1e-10}, {"r1", 1e-6},         {"r2", 1e-6},
                  {"i_square", 1e-12},      {"holo_poisson", 1e-10}, {"dF", 1e-10},
                  {"gk_invariants", 1e-5},  {"characterization", 1e-5}};
  return e;
}

ExampleGeometry cp2_impl(const std::vector<Cplx>& coeffs) {
  if (coeffs.size() != 10)
    throw std::invalid_argument("cp2: expected 10 cubic coefficients, got " +
                                std::to_string(coeffs.size()));
  ExampleGeometry e;
  e.name = "cp2_chart";
  e.description =
      "affine chart of the projective plane with cubic Poisson structure "
      "sigma = cubic(z1, z2) dz1^v ^ dz2^v; stretch example, flows may exit";
  e.chart = Chart::cube(4, -1.0, 1.0, false);
  e.sample_region = e.chart;
  Mat i0 = complexify::standard_complex_structure(4);
  e.I = [i0](const Vec&) { return i0; };
  auto cubic = [coeffs](const Vec& p) -> Cplx {
    Cplx z1(p(0), p(1)), z2(p(2), p(3));
    const Cplx m[10] = {Cplx(1, 0), z1,          z2,      z1 * z1, z1 * z2,
                        z2 * z2,    z1 * z1 * z1, z1 * z1 * z2, z1 * z2 * z2, z2 * z2 * z2};
    Cplx s = 0;
    for (int k = 0; k < 10; ++k) s += coeffs[static_cast<size_t>(k)] * m[k];
    return s;
  };
  MatC base = dz1_dz2_base();
  e.sigma.re = [cubic, base](const Vec& p) { return Mat((cubic(p) * base).real()); };
  e.sigma.im = [cubic, base](const Vec& p) { return Mat((cubic(p) * base).imag()); };
  gcs::HoloPoisson hp{e.I, e.sigma, e.chart};
  e.Q = hp.q_block();
  e.F = [](const Vec&) { return Mat(Mat::Zero(4, 4)); };
  // Log-divisor vector field from the Poincare-Lelong section of |cubic|.
  if (cubic_vanishes_on_chart(coeffs, e.chart.box[0][0], e.chart.box[0][1]))
    throw std::domain_error("cp2: cubic vanishes inside the chart; no log-divisor field");
  gcs::GCStructure gc = gcs::from_holo_poisson(hp);
  fields::ScalarField s_abs = [cubic](const Vec& p) { return std::abs(cubic(p)); };
  e.X = gcs::poincare_lelong(gc, s_abs).X;
  e.tolerances = {{"i_square", 1e-12}, {"holo_poisson", 1e-4}, {"dF", 1e-10}};
  return e;
}

}  // namespace

std::vector<std::string> example_names() {
  return {"kahler_torus_T4", "torus_T3_H", "elliptic_Ec", "synthetic_flow_R4", "cp2_chart"};
}

ExampleGeometry elliptic(double c) {
  spinor::EllipticTensors t = spinor::elliptic_tensors(c);
  ExampleGeometry e;
  e.name = "elliptic_Ec";
  e.description =
      "elliptic curve x C chart: I_c from the deformed coframe, sigma_c, "
      "F_c = 2c dx1^dx2/(x1^2+x2^2); flow candidate X is a documented negative control";
  e.chart = t.chart;
  e.sample_region = t.chart;
  e.I = t.I;
  e.sigma = t.sigma;
  e.Q = gcs::HoloPoisson{t.I, t.sigma, t.chart}.q_block();
  e.F = t.F;
  // Rotation of the w-plane, the candidate flow field (leaves I_c and Q
  // invariant, so it cannot satisfy L_X I = QF with QF != 0).
  e.X = [](const Vec& p) -> Vec {
    Vec v = Vec::Zero(4);
    v(2) = -p(3);
    v(3) = p(2);
    return v;
  };
  e.tolerances = {{"i_square", 1e-10},      {"holo_poisson", 1e-4}, {"spinor", 1e-13},
                  {"groupoid_bridge", 1e-4}, {"im_sigma", 1e-12},    {"dF", 1e-8}};
  validate(e);
  return e;
}

ExampleGeometry cp2(const std::vector<Cplx>& cubic_coeffs) {
  ExampleGeometry e = cp2_impl(cubic_coeffs);
  validate(e);
  return e;
}

ExampleGeometry get(const std::string& name) {
  ExampleGeometry e;
  if (name == "kahler_torus_T4") {
    e = kahler_torus();
  } else if (name == "torus_T3_H") {
    e = torus_h();
  } else if (name == "elliptic_Ec") {
    return elliptic(1.0);
  } else if (name == "synthetic_flow_R4") {
    e = synthetic_flow();
  } else if (name == "cp2_chart") {
    std::vector<Cplx> coeffs(10, Cplx(0, 0));
    coeffs[0] = Cplx(1, 0);
    e = cp2_impl(coeffs);
  } else {
    throw std::invalid_argument("unknown example: " + name);
  }
  validate(e);
  return e;
}

gk::FlowInput flow_input(const ExampleGeometry& e) {
  if (!e.I || !e.Q || !e.F || !e.X)
    throw std::invalid_argument(e.name + ": example does not carry a complete flow datum");
  return gk::FlowInput{e.I, e.Q, e.F, e.X, e.chart};
}

}  // namespace gkflow::examples
