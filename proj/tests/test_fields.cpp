#include <doctest.h>

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "gkflow/fields.hpp"
#include "gkflow/spinor.hpp"
#include "support.hpp"

using namespace gkflow;
using namespace gkflow::fields;
using testutil::constant;
using testutil::constant_vec;
using testutil::points;
using testutil::rand_mat;
using testutil::unit;
using testutil::wedge_unit;

namespace {
Chart torus3() { return Chart::cube(3, 0.0, 1.0, true); }
Chart box2() { return Chart::cube(2, -1.0, 1.0, false); }
}  // namespace

TEST_SUITE("fields") {

TEST_CASE("Alt3: orbit writes, contraction, interior products") {
  Alt3 h(3);
  h.set(0, 1, 2, 0.7);
  CHECK(h(0, 1, 2) == 0.7);
  CHECK(h(1, 0, 2) == -0.7);
  CHECK(h(2, 0, 1) == 0.7);
  CHECK(h(0, 0, 2) == 0.0);
  CHECK(h.max_abs() == 0.7);

  CHECK(h.contract(unit(3, 0), unit(3, 1), unit(3, 2)) == doctest::Approx(0.7));
  CHECK(h.contract(unit(3, 1), unit(3, 0), unit(3, 2)) == doctest::Approx(-0.7));

  // i_{e1} (0.7 dx1^dx2^dx3) = 0.7 dx2^dx3 as a map-matrix.
  CHECK(max_abs(Mat(h.interior(unit(3, 0)) - 0.7 * wedge_unit(3, 1, 2))) < 1e-15);
  // i_{e2} i_{e1} H = 0.7 dx3.
  CHECK(max_abs(Vec(h.interior2(unit(3, 0), unit(3, 1)) - 0.7 * unit(3, 2))) < 1e-15);
}

TEST_CASE("exterior derivative: d(x dy) = dx^dy and constants close") {
  Chart c = box2();
  OneFormField a = [](const Vec& p) { return Vec(p(0) * unit(2, 1)); };
  TwoFormField da = ext_d_oneform(a, c);
  for (const Vec& p : points(c)) {
    CHECK(max_abs(Mat(da(p) - wedge_unit(2, 0, 1))) < 1e-10);
  }

  Chart c3 = torus3();
  TwoFormField f = constant(wedge_unit(3, 0, 1));
  ThreeFormField df = ext_d_twoform(f, c3);
  for (const Vec& p : points(c3)) CHECK(df(p).max_abs() < 1e-12);
}

TEST_CASE("exterior derivative: d of d vanishes on random scalars") {
  Chart c = torus3();
  std::mt19937_64 rng(23);
  ScalarField f = random_scalar(c, rng);
  TwoFormField dd = ext_d_oneform(ext_d(f, c), c);
  // The nested central stencils commute axis-by-axis, so the residual is
  // pure rounding amplified by 1/h^2, far below the truncation scale.
  for (const Vec& p : points(c)) CHECK(max_abs(dd(p)) < 1e-8);
}

TEST_CASE("exterior derivative: the elliptic family 2-form is closed") {
  spinor::EllipticTensors t = spinor::elliptic_tensors(1.0);
  ThreeFormField df = ext_d_twoform(t.F, t.chart);
  for (const Vec& p : points(t.chart)) CHECK(df(p).max_abs() < 1e-8);
}

TEST_CASE("lie bracket: coordinate oracle, alternation, Jacobi") {
  Chart c = box2();
  VectorField x = constant_vec(unit(2, 0));
  VectorField y = [](const Vec& p) { return Vec(p(0) * unit(2, 1)); };
  VectorField br = lie_bracket(x, y, c);
  for (const Vec& p : points(c)) CHECK(max_abs(Vec(br(p) - unit(2, 1))) < 1e-10);

  Chart c3 = torus3();
  std::mt19937_64 rng(29);
  VectorField r = random_vector(c3, rng);
  VectorField rr = lie_bracket(r, r, c3);
  for (const Vec& p : points(c3)) CHECK(max_abs(rr(p)) < 1e-13);

  // Jacobi on random smooth fields; 4th-order stencils keep the nested
  // truncation error well below the tolerance.
  VectorField a = random_vector(c3, rng), b = random_vector(c3, rng),
              d = random_vector(c3, rng);
  const int o = 4;
  VectorField j1 = lie_bracket(lie_bracket(a, b, c3, o), d, c3, o);
  VectorField j2 = lie_bracket(a, lie_bracket(b, d, c3, o), c3, o);
  VectorField j3 = lie_bracket(b, lie_bracket(a, d, c3, o), c3, o);
  for (const Vec& p : points(c3, 6)) CHECK(max_abs(Vec(j1(p) - j2(p) + j3(p))) < 1e-6);
}

TEST_CASE("lie derivative: 1-form and endomorphism oracles") {
  Chart c = box2();
  VectorField x = constant_vec(unit(2, 0));
  OneFormField a = [](const Vec& p) { return Vec(p(0) * unit(2, 1)); };
  OneFormField la = lie_oneform(x, a, c);
  for (const Vec& p : points(c)) CHECK(max_abs(Vec(la(p) - unit(2, 1))) < 1e-10);

  // Constant I is invariant under constant translations.
  Chart c4 = Chart::cube(4, -1.0, 1.0, false);
  Mat i0 = complexify::standard_complex_structure(4);
  EndoField li = lie_endo(constant_vec(Vec(Vec::Ones(4))), constant(i0), c4);
  for (const Vec& p : points(c4)) CHECK(max_abs(li(p)) < 1e-12);

  // Linear X = Ax against constant I: L_X I = IA - AI = [I, A], exact for
  // central differences on linear data.
  std::mt19937_64 rng(31);
  Mat a4 = rand_mat(4, rng);
  VectorField xlin = [a4](const Vec& p) -> Vec { return a4 * p; };
  EndoField li2 = lie_endo(xlin, constant(i0), c4);
  Mat expected = i0 * a4 - a4 * i0;
  for (const Vec& p : points(c4)) CHECK(max_abs(Mat(li2(p) - expected)) < 1e-10);

  // Map-matrix Leibniz forms for constant skew tensors under linear flows.
  Mat f = testutil::rand_skew(4, rng), q = testutil::rand_skew(4, rng);
  TwoFormField lf = lie_twoform(xlin, constant(f), c4);
  BivectorField lq = lie_bivector(xlin, constant(q), c4);
  for (const Vec& p : points(c4)) {
    CHECK(max_abs(Mat(lf(p) - (f * a4 + a4.transpose() * f))) < 1e-10);
    CHECK(max_abs(Mat(lq(p) - (-a4 * q - q * a4.transpose()))) < 1e-10);
  }
}

TEST_CASE("lie derivative commutes with d on scalars") {
  Chart c = torus3();
  std::mt19937_64 rng(37);
  VectorField x = random_vector(c, rng);
  ScalarField f = random_scalar(c, rng);
  const int o = 4;
  OneFormField lhs = lie_oneform(x, ext_d(f, c, o), c, o);
  OneFormField rhs = ext_d(lie_scalar(x, f, c, o), c, o);
  for (const Vec& p : points(c, 8)) CHECK(max_abs(Vec(lhs(p) - rhs(p))) < 1e-6);
}

TEST_CASE("schouten bracket: Poisson and non-Poisson oracles") {
  Chart c = Chart::cube(3, -1.0, 1.0, false);

  std::mt19937_64 rng(41);
  BivectorField cq = constant(testutil::rand_skew(3, rng));
  ThreeVectorField sc = schouten_square(cq, c);
  for (const Vec& p : points(c)) CHECK(sc(p).max_abs() < 1e-12);

  // Q = x1 d2^d3: the only derivative that could contribute is along d2, d3,
  // which kill the coefficient; Poisson despite the nonconstant coefficient.
  BivectorField qp = [](const Vec& p) { return Mat(p(0) * wedge_unit(3, 1, 2)); };
  ThreeVectorField sp = schouten_square(qp, c);
  for (const Vec& p : points(c)) CHECK(sp(p).max_abs() < 1e-11);

  // Q = x3 d1^d2 + x2 d2^d3 has Poisson-Jacobi defect x3 on (x1,x2,x3);
  // the library normalization reports [Q,Q]^{123} = -2 x3.
  BivectorField qn = [](const Vec& p) {
    return Mat(p(2) * wedge_unit(3, 0, 1) + p(1) * wedge_unit(3, 1, 2));
  };
  ThreeVectorField sn = schouten_square(qn, c);
  for (const Vec& p : points(c)) {
    CHECK(sn(p)(0, 1, 2) == doctest::Approx(-2.0 * p(2)).epsilon(1e-8));
  }

  // The elliptic family's bivector block is Poisson to truncation accuracy.
  spinor::EllipticTensors t = spinor::elliptic_tensors(1.0);
  ThreeVectorField se = schouten_square(t.sigma.im, t.chart);
  for (const Vec& p : points(t.chart, 8)) CHECK(se(p).max_abs() < 1e-4);
}

TEST_CASE("dorfman bracket: coordinate oracle and 1-form degeneracy") {
  Chart c = box2();
  GSectionField a{constant_vec(unit(2, 0)), constant_vec(Vec(Vec::Zero(2)))};
  GSectionField b{constant_vec(Vec(Vec::Zero(2))),
                  [](const Vec& p) { return Vec(p(0) * unit(2, 1)); }};
  GSectionField br = dorfman(a, b, c);
  for (const Vec& p : points(c)) {
    CHECK(max_abs(br.v(p)) < 1e-12);
    CHECK(max_abs(Vec(br.xi(p) - unit(2, 1))) < 1e-10);
  }

  // Brackets of two 1-forms vanish identically when untwisted.
  Chart c3 = torus3();
  std::mt19937_64 rng(43);
  GSectionField xi{constant_vec(Vec(Vec::Zero(3))), random_oneform(c3, rng)};
  GSectionField eta{constant_vec(Vec(Vec::Zero(3))), random_oneform(c3, rng)};
  GSectionField zb = dorfman(xi, eta, c3);
  for (const Vec& p : points(c3)) CHECK(zb.at(p).max_abs() < 1e-13);
}

TEST_CASE("dorfman bracket: skew anomaly is the exact derivative of the pairing") {
  Chart c = torus3();
  std::mt19937_64 rng(47);
  GSectionField a = random_section(c, rng);
  GSectionField sq = dorfman(a, a, c);
  // [a, a] = (0, d(xi(X))) = (0, d<a,a>/2).
  ScalarField half_norm = [a](const Vec& p) { return 0.5 * pairing_field(a, a)(p); };
  OneFormField expect = ext_d(half_norm, c);
  for (const Vec& p : points(c, 8)) {
    CHECK(max_abs(sq.v(p)) < 1e-12);
    CHECK(max_abs(Vec(sq.xi(p) - expect(p))) < 1e-4);
  }
  // And the skew bracket kills the anomaly entirely.
  GSectionField sk = courant_skew(a, a, c);
  for (const Vec& p : points(c, 8)) CHECK(sk.at(p).max_abs() < 1e-12);
}

TEST_CASE("dorfman bracket: Leibniz rule in the second slot") {
  Chart c = torus3();
  std::mt19937_64 rng(53);
  GSectionField a = random_section(c, rng);
  GSectionField b = random_section(c, rng);
  ScalarField f = random_scalar(c, rng);
  const int o = 4;
  GSectionField lhs = dorfman(a, scale(f, b), c, nullptr, o);
  GSectionField fab = scale(f, dorfman(a, b, c, nullptr, o));
  for (const Vec& p : points(c, 8)) {
    double xf = a.v(p).dot(gradient(f, c, p, o));
    linalg::GVector resid = lhs.at(p) - fab.at(p) - xf * b.at(p);
    CHECK(resid.max_abs() < 1e-6);
  }
}

TEST_CASE("courant axiom suite: untwisted and constant-twist tori") {
  Chart c4 = Chart::cube(4, 0.0, 1.0, true);
  auto pts = points(c4, 16);
  AxiomReport r = courant_axiom_suite(c4, nullptr, pts, 5, 4);
  CHECK(r.jacobi < 1e-6);
  CHECK(r.leibniz < 1e-6);
  CHECK(r.invariance < 1e-6);
  CHECK(r.skew_anomaly < 1e-6);
  CHECK(r.oneform_bracket < 1e-6);
  CHECK(r.dH == 0.0);

  Chart c3 = torus3();
  ThreeFormField h = constant_threeform(3, 0, 1, 2, 0.7);
  AxiomReport rt = courant_axiom_suite(c3, &h, points(c3, 16), 5, 4);
  CHECK(rt.jacobi < 1e-6);
  CHECK(rt.leibniz < 1e-6);
  CHECK(rt.invariance < 1e-6);
  CHECK(rt.skew_anomaly < 1e-6);
  CHECK(rt.dH < 1e-12);
}

TEST_CASE("pullbacks: identity, linear oracle, closedness along nonlinear maps") {
  Chart c = Chart::cube(3, -1.0, 1.0, false);
  std::mt19937_64 rng(59);
  Mat f0 = testutil::rand_skew(3, rng);

  TwoFormField fid = pullback_form(constant(f0), identity_map(3));
  for (const Vec& p : points(c)) CHECK(max_abs(Mat(fid(p) - f0)) == 0.0);

  Mat a = rand_mat(3, rng, 0.4);
  TwoFormField fl = pullback_form(constant(f0), linear_map(a));
  for (const Vec& p : points(c)) {
    CHECK(max_abs(Mat(fl(p) - a.transpose() * f0 * a)) < 1e-14);
  }

  // phi(p) = p + 0.1 sin-offsets with exact Jacobian; F = x2 dx1^dx2 is
  // closed, so the pullback must be closed too.
  SmoothMap phi{[](const Vec& p) {
                  Vec q = p;
                  q(0) += 0.1 * std::sin(p(1));
                  q(2) += 0.1 * std::sin(p(0) * p(1));
                  return q;
                },
                [](const Vec& p) {
                  Mat j = Mat::Identity(3, 3);
                  j(0, 1) = 0.1 * std::cos(p(1));
                  j(2, 0) = 0.1 * p(1) * std::cos(p(0) * p(1));
                  j(2, 1) = 0.1 * p(0) * std::cos(p(0) * p(1));
                  return j;
                }};
  TwoFormField closed = [](const Vec& p) { return Mat(p(1) * wedge_unit(3, 0, 1)); };
  ThreeFormField dpull = ext_d_twoform(pullback_form(closed, phi), c, 4);
  for (const Vec& p : points(c, 8)) CHECK(dpull(p).max_abs() < 1e-7);
}

TEST_CASE("pushforward endomorphisms and the flow two-path derivative") {
  Chart c4 = Chart::cube(4, -1.0, 1.0, false);
  Mat i0 = complexify::standard_complex_structure(4);
  std::mt19937_64 rng(61);

  EndoField pid = pushforward_endo(constant(i0), linear_diffeo(Mat(Mat::Identity(4, 4))));
  for (const Vec& p : points(c4)) CHECK(max_abs(Mat(pid(p) - i0)) < 1e-14);

  Mat a = rand_mat(4, rng, 0.5);
  Mat lin = Mat::Identity(4, 4) + 0.2 * a;  // a perturbation of 1, so invertible
  EndoField pf = pushforward_endo(constant(i0), linear_diffeo(lin));
  for (const Vec& p : points(c4)) {
    CHECK(max_abs(Mat(pf(p) * pf(p) + Mat::Identity(4, 4))) < 1e-12);
  }

  // d/dt of the pullback along the flow of X = Ax at t = 0 equals L_X I:
  // two independent code paths (matrix exponential vs lie_endo).
  VectorField xlin = [a](const Vec& p) -> Vec { return a * p; };
  EndoField li = lie_endo(xlin, constant(i0), c4);
  const double dt = 1e-4;
  Mat ep = (dt * a).exp(), em = (-dt * a).exp();
  EndoField fplus = pullback_endo(constant(i0), linear_map(ep));
  EndoField fminus = pullback_endo(constant(i0), linear_map(em));
  for (const Vec& p : points(c4, 6)) {
    Mat dot = (fplus(p) - fminus(p)) / (2.0 * dt);
    CHECK(max_abs(Mat(dot - li(p))) < 1e-6);
  }
}

TEST_CASE("random fields are periodic across the torus seam") {
  Chart c = torus3();
  std::mt19937_64 rng(67);
  ScalarField f = random_scalar(c, rng);
  VectorField x = random_vector(c, rng);
  Vec p(3);
  p << 0.31, 0.77, 0.12;
  Vec q = p;
  q(1) += c.length(1);
  CHECK(std::abs(f(p) - f(q)) < 1e-12);
  CHECK(max_abs(Vec(x(p) - x(q))) < 1e-12);
}

TEST_CASE("memoized fields reproduce their source") {
  Chart c = box2();
  std::mt19937_64 rng(71);
  Mat m0 = rand_mat(2, rng);
  int calls = 0;
  MatField base = [m0, &calls](const Vec& p) {
    ++calls;
    return Mat(m0 * p(0));
  };
  MatField cached = memoize(base);
  Vec p = points(c)[0];
  Mat first = cached(p);
  Mat second = cached(p);
  CHECK(max_abs(Mat(first - second)) == 0.0);
  CHECK(max_abs(Mat(first - Mat(m0 * p(0)))) == 0.0);
  CHECK(calls == 1);
}

}  // TEST_SUITE
