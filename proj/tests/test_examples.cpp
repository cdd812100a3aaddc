#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "gkflow/complexify.hpp"
#include "gkflow/examples.hpp"
#include "support.hpp"

using namespace gkflow;
using namespace gkflow::examples;
using Cplx = std::complex<double>;

namespace {

// Map-matrix of d/dz1 ^ d/dz2 on R^4 = C^2, the constant bivector used by
// the plane examples.
MatC dz1_dz2() {
  VecC a1 = VecC::Zero(4), a2 = VecC::Zero(4);
  a1(0) = Cplx(0.5, 0.0);
  a1(1) = Cplx(0.0, -0.5);
  a2(2) = Cplx(0.5, 0.0);
  a2(3) = Cplx(0.0, -0.5);
  return a2 * a1.transpose() - a1 * a2.transpose();
}

}  // namespace

TEST_SUITE("examples") {

TEST_CASE("registry lists five geometries and rejects unknown names") {
  std::vector<std::string> names = example_names();
  REQUIRE(names.size() == 5);
  CHECK(names == std::vector<std::string>{"kahler_torus_T4", "torus_T3_H", "elliptic_Ec",
                                          "synthetic_flow_R4", "cp2_chart"});
  for (const std::string& n : names) {
    ExampleGeometry e = get(n);  // validates internally
    CHECK(e.name == n);
    CHECK(!e.description.empty());
    for (const Vec& p : e.samples(16, 5)) CHECK(e.chart.contains(p));
  }
  CHECK_THROWS_AS(get("moebius_strip"), std::invalid_argument);
}

TEST_CASE("flat torus carries the unit Kahler package") {
  ExampleGeometry e = get("kahler_torus_T4");
  Mat i0 = complexify::standard_complex_structure(4);
  for (const Vec& p : e.samples(4, 1)) {
    CHECK(max_abs(Mat(e.I(p) - i0)) == 0.0);
    CHECK(max_abs(Mat(e.g(p) - Mat::Identity(4, 4))) == 0.0);
    CHECK(max_abs(Mat(e.F(p) - i0)) == 0.0);  // omega = g I with g = 1
    CHECK(max_abs(e.Q(p)) == 0.0);
  }
  CHECK(!e.H);
  CHECK(!e.X);
  CHECK_THROWS_AS(flow_input(e), std::invalid_argument);  // no flow field
}

TEST_CASE("twisted torus carries only the metric package") {
  ExampleGeometry e = get("torus_T3_H");
  CHECK(e.chart.dim == 3);
  CHECK(!e.I);
  REQUIRE(static_cast<bool>(e.H));
  for (const Vec& p : e.samples(4, 1)) {
    CHECK(max_abs(Mat(e.g(p) - Mat::Identity(3, 3))) == 0.0);
    CHECK(e.H(p)(0, 1, 2) == 0.7);
    CHECK(e.H(p)(1, 0, 2) == -0.7);
  }
  CHECK_THROWS_AS(flow_input(e), std::invalid_argument);
}

TEST_CASE("elliptic family validates across parameters") {
  ExampleGeometry e1 = get("elliptic_Ec");  // c = 1
  ExampleGeometry eh = elliptic(0.5);
  for (const Vec& p : eh.samples(4, 1)) {
    // F scales linearly in c on the shared chart.
    CHECK(max_abs(Mat(2.0 * eh.F(p) - e1.F(p))) < 1e-12);
  }
  REQUIRE(static_cast<bool>(e1.X));
  gk::FlowInput in = flow_input(e1);  // complete datum (documented negative control)
  CHECK(in.chart.dim == 4);
}

TEST_CASE("synthetic flow datum is complete and constant") {
  ExampleGeometry e = get("synthetic_flow_R4");
  gk::FlowInput in = flow_input(e);
  auto pts = e.samples(4, 1);
  Mat q0 = e.Q(pts[0]);
  for (const Vec& p : pts) {
    CHECK(max_abs(Mat(e.Q(p) - q0)) == 0.0);
    CHECK(max_abs(Mat(e.sigma.im(p) * 4.0 - q0)) < 1e-14);  // Q = 4 Im(sigma)
    CHECK(max_abs(Vec(in.X(p) + 0.5 * q0 * p)) < 1e-14);    // X = -(1/2) Q x
  }
}

TEST_CASE("plane chart: constant cubic gives the constant bivector and no drift") {
  ExampleGeometry e = get("cp2_chart");  // cubic = 1
  MatC base = dz1_dz2();
  for (const Vec& p : e.samples(4, 1)) {
    CHECK(max_abs(Mat(e.sigma.re(p) - base.real())) < 1e-14);
    CHECK(max_abs(Mat(e.sigma.im(p) - base.imag())) < 1e-14);
    CHECK(max_abs(Mat(e.Q(p) - 4.0 * base.imag())) < 1e-14);
    CHECK(max_abs(e.F(p)) == 0.0);
    // |cubic| = 1 everywhere: the log-divisor field vanishes.
    CHECK(max_abs(e.X(p)) < 1e-10);
  }
}

TEST_CASE("plane chart: generic nonvanishing cubic") {
  std::vector<Cplx> coeffs(10, Cplx(0, 0));
  coeffs[0] = Cplx(3.0, 0.0);
  coeffs[1] = Cplx(0.3, 0.0);
  coeffs[2] = Cplx(0.0, 0.2);
  coeffs[4] = Cplx(0.1, -0.1);
  ExampleGeometry e = cp2(coeffs);  // validates the Poisson invariants
  auto pts = e.samples(6, 1);

  double max_x = 0.0;
  for (const Vec& p : pts) {
    Vec x = e.X(p);
    for (int i = 0; i < 4; ++i) CHECK(std::isfinite(x(i)));
    max_x = std::max(max_x, max_abs(x));
  }
  CHECK(max_x > 1e-8);  // the divisor field is nontrivial once the cubic varies

  auto [rq, ri] = gk::validate_flow_input(flow_input(e), pts);
  CHECK(std::isfinite(rq));
  CHECK(std::isfinite(ri));
  CHECK(rq < 1e-3);  // the log-divisor field is Poisson
}

TEST_CASE("plane chart: cubics vanishing inside the box are rejected") {
  auto with = [](int idx, Cplx v) {
    std::vector<Cplx> c(10, Cplx(0, 0));
    c[static_cast<size_t>(idx)] = v;
    return c;
  };
  CHECK_THROWS_AS(cp2(with(1, Cplx(1, 0))), std::domain_error);  // cubic = z1
  CHECK_THROWS_AS(cp2(with(2, Cplx(1, 0))), std::domain_error);  // cubic = z2

  // (z1 - 1/2)^3 vanishes on a line crossing the chart.
  std::vector<Cplx> shifted(10, Cplx(0, 0));
  shifted[0] = Cplx(-0.125, 0.0);
  shifted[1] = Cplx(0.75, 0.0);
  shifted[3] = Cplx(-1.5, 0.0);
  shifted[6] = Cplx(1.0, 0.0);
  CHECK_THROWS_AS(cp2(shifted), std::domain_error);

  CHECK_THROWS_AS(cp2(std::vector<Cplx>(9, Cplx(1, 0))), std::invalid_argument);
}

}  // TEST_SUITE
