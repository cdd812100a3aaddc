#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "gkflow/examples.hpp"
#include "gkflow/spinor.hpp"
#include "support.hpp"

using namespace gkflow;
using namespace gkflow::spinor;
using testutil::points;
using testutil::wedge_unit;

namespace {

constexpr Cplx kI{0.0, 1.0};

int mask(int g) { return 1 << g; }
int mask(int g1, int g2) { return (1 << g1) | (1 << g2); }

}  // namespace

TEST_SUITE("spinor") {

TEST_CASE("wedge: nilpotence, anticommutativity, binomial product") {
  ExtForm dz = ExtForm::monomial(mask(kDz), 1.0);
  ExtForm dw = ExtForm::monomial(mask(kDw), 1.0);

  CHECK(wedge(dz, dz).max_abs_diff(ExtForm{}) == 0.0);
  CHECK(wedge(dz, dw).max_abs_diff(ExtForm::monomial(mask(kDz, kDw), 1.0)) == 0.0);
  CHECK(wedge(dw, dz).max_abs_diff(ExtForm::monomial(mask(kDz, kDw), -1.0)) == 0.0);

  ExtForm a = ExtForm::scalar(1.0) + dz;
  ExtForm b = ExtForm::scalar(1.0) + dw;
  ExtForm expected = ExtForm::scalar(1.0) + dz + dw + ExtForm::monomial(mask(kDz, kDw), 1.0);
  CHECK(wedge(a, b).max_abs_diff(expected) == 0.0);
}

TEST_CASE("interior and bivector contraction: signs of the dual pairing") {
  ExtForm dzdw = ExtForm::monomial(mask(kDz, kDw), 1.0);
  CHECK(interior(kDz, dzdw).max_abs_diff(ExtForm::monomial(mask(kDw), 1.0)) == 0.0);
  CHECK(interior(kDw, dzdw).max_abs_diff(ExtForm::monomial(mask(kDz), -1.0)) == 0.0);
  CHECK(interior(kDzBar, dzdw).max_abs_diff(ExtForm{}) == 0.0);

  ExtBivector dz_dw;  // d/dz ^ d/dw
  dz_dw.set(kDz, kDw, 1.0);
  CHECK(contract(dz_dw, dzdw).max_abs_diff(ExtForm::scalar(1.0)) == 0.0);
  CHECK(contract(dz_dw, ExtForm::monomial(mask(kDzBar, kDwBar), 1.0)).max_abs_diff(ExtForm{}) ==
        0.0);

  // sigma_0 against Omega_0 contracts to the w coordinate.
  Cplx z(1.3, -0.4), w(0.2, 0.8);
  CHECK(contract(sigma_c(0.0, z, w), omega_c(0.0, z, w)).max_abs_diff(ExtForm::scalar(w)) <
        1e-15);
}

TEST_CASE("truncated exponentials: series terms and exact inversion") {
  ExtForm a = ExtForm::monomial(mask(kDzBar), Cplx(0.3, 0.7));
  CHECK(exp_wedge(ExtForm{}, a).max_abs_diff(a) == 0.0);

  ExtForm f = ExtForm::monomial(mask(kDz, kDzBar), 1.0) +
              ExtForm::monomial(mask(kDw, kDwBar), 2.0);
  ExtForm expected = ExtForm::scalar(1.0) + f +
                     ExtForm::monomial(mask(kDz, kDzBar) | mask(kDw, kDwBar), 2.0);
  CHECK(exp_wedge(f, ExtForm::scalar(1.0)).max_abs_diff(expected) == 0.0);

  // e^{-F} undoes e^{F} exactly on a fully generic element.
  ExtForm generic;
  for (int m = 0; m < 16; ++m) generic += ExtForm::monomial(m, Cplx(0.1 * m - 0.4, 0.05 * m));
  ExtForm back = exp_wedge(-1.0 * f, exp_wedge(f, generic));
  CHECK(back.max_abs_diff(generic) < 1e-15);

  // e^{sigma_0} adds the scalar contraction and stops there.
  Cplx z(0.9, 0.1), w(-0.6, 0.5);
  ExtForm omega = omega_c(0.0, z, w);
  CHECK(exp_contract(sigma_c(0.0, z, w), omega).max_abs_diff(omega + ExtForm::scalar(w)) <
        1e-15);
}

TEST_CASE("pure spinor identity: hand oracle at c = z = w = 1") {
  // Left side: Omega_0 = dz^dw, e^{sigma_0} adds the scalar 1, and
  // F_c = i dz^dzbar contributes one wedge term; every higher term dies.
  // Right side: sigma_c = (d/dz + i d/dwbar)^d/dw, Omega_c = dz^dw + i dz^dzbar,
  // and the contraction again yields the scalar 1.  Both sides equal
  //   1 + dz^dw + i dz^dzbar.
  ExtForm expected = ExtForm::scalar(1.0) + ExtForm::monomial(mask(kDz, kDw), 1.0) +
                     ExtForm::monomial(mask(kDz, kDzBar), kI);

  Cplx one(1.0, 0.0);
  ExtForm lhs = exp_wedge(f_c(1.0, one), exp_contract(sigma_c(0.0, one, one),
                                                      omega_c(0.0, one, one)));
  ExtForm rhs = exp_contract(sigma_c(1.0, one, one), omega_c(1.0, one, one));
  CHECK(lhs.max_abs_diff(expected) < 1e-15);
  CHECK(rhs.max_abs_diff(expected) < 1e-15);
  CHECK(verify_elliptic(1.0, one, one) < 1e-15);
}

TEST_CASE("pure spinor identity: parameter sweep and degenerate point") {
  for (double c : {0.0, 0.5, 1.0, 2.0})
    for (Cplx z : {Cplx(0.5, 0.0), Cplx(1.0, 1.0), Cplx(-0.3, 1.9), Cplx(2.0, 0.0)})
      for (Cplx w : {Cplx(0.0, 0.0), Cplx(1.0, 0.0), Cplx(-0.7, 0.2)})
        CHECK(verify_elliptic(c, z, w) < 1e-13);

  CHECK_THROWS_AS(verify_elliptic(1.0, Cplx(0.0, 0.0), Cplx(1.0, 0.0)), std::domain_error);
}

TEST_CASE("real tensor realization of the family") {
  EllipticTensors t0 = elliptic_tensors(0.0);
  for (double c : {1.0, 2.5}) {
    EllipticTensors t = elliptic_tensors(c);
    auto pts = points(t.chart, 6);
    for (const Vec& p : pts) {
      Mat i = t.I(p);
      CHECK(max_abs(Mat(i * i + Mat::Identity(4, 4))) < 1e-10);
      // The deformation is purely real: Im sigma_c is c-independent.
      CHECK(max_abs(Mat(t.sigma.im(p) - t0.sigma.im(p))) < 1e-12);
      // F_c = 2c dx1^dx2 / (x1^2 + x2^2) on the x1 + i x2 = z chart.
      double scale = 2.0 * c / (p(0) * p(0) + p(1) * p(1));
      CHECK(max_abs(Mat(t.F(p) - scale * wedge_unit(4, 0, 1))) < 1e-14);
    }
  }

  for (double c : {0.0, 1.0, 2.5}) {
    EllipticTensors t = elliptic_tensors(c);
    auto pts = points(t.chart, 6);
    gcs::HoloPoissonReport rep =
        gcs::validate_holo_poisson(gcs::HoloPoisson{t.I, t.sigma, t.chart}, pts);
    CHECK(rep.i_square < 1e-10);
    CHECK(rep.nijenhuis_i < 1e-4);
    CHECK(rep.type20 < 1e-4);
    CHECK(rep.schouten < 1e-4);
  }
}

}  // TEST_SUITE
