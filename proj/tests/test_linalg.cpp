#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "gkflow/complexify.hpp"
#include "gkflow/linalg.hpp"
#include "support.hpp"

using namespace gkflow;
using namespace gkflow::linalg;
using testutil::rand_mat;
using testutil::rand_skew;
using testutil::rand_spd;
using testutil::rand_vec;
using testutil::unit;
using testutil::wedge_unit;

TEST_SUITE("linalg") {

TEST_CASE("pairing: duality, isotropy, split signature") {
  const int n = 3;
  std::mt19937_64 rng(7);

  CHECK(pairing(GVector::vector(unit(n, 0)), GVector::covector(unit(n, 0))) ==
        doctest::Approx(1.0));

  // <a, a> = 2 xi(X) with the no-half normalization.
  Vec x = rand_vec(n, rng), xi = rand_vec(n, rng);
  GVector a(x, xi);
  CHECK(pairing(a, a) == doctest::Approx(2.0 * xi.dot(x)));

  // T and T* are isotropic.
  CHECK(pairing(GVector::vector(x), GVector::vector(rand_vec(n, rng))) == 0.0);
  CHECK(pairing(GVector::covector(xi), GVector::covector(rand_vec(n, rng))) == 0.0);

  // Stacked Gram matrix is the off-diagonal block swap and has signature (n, n).
  Mat p = pairing_matrix(n);
  CHECK(max_abs(Mat(p.topLeftCorner(n, n))) == 0.0);
  CHECK(max_abs(Mat(p.topRightCorner(n, n) - Mat::Identity(n, n))) == 0.0);
  Eigen::SelfAdjointEigenSolver<Mat> es(p);
  for (int i = 0; i < n; ++i) {
    CHECK(es.eigenvalues()(i) == doctest::Approx(-1.0));
    CHECK(es.eigenvalues()(n + i) == doctest::Approx(1.0));
  }

  // pairing agrees with the Gram matrix on stacked coordinates.
  GVector b(rand_vec(n, rng), rand_vec(n, rng));
  CHECK(pairing(a, b) == doctest::Approx(a.stacked().dot(p * b.stacked())));
}

TEST_CASE("shear: block structure and additivity") {
  const int n = 4;
  std::mt19937_64 rng(11);
  Mat f1 = rand_skew(n, rng), f2 = rand_skew(n, rng);

  CHECK(max_abs(Mat(shear(Mat::Zero(n, n)) - Mat::Identity(2 * n, 2 * n))) == 0.0);

  GEndo e(shear(f1));
  CHECK(max_abs(Mat(e.block_A() - Mat::Identity(n, n))) == 0.0);
  CHECK(max_abs(e.block_Q()) == 0.0);
  CHECK(max_abs(Mat(e.block_F() - f1)) == 0.0);
  CHECK(max_abs(Mat(e.block_B() - Mat::Identity(n, n))) == 0.0);

  // X + xi -> X + xi + i_X F.
  Vec x = rand_vec(n, rng), xi = rand_vec(n, rng);
  GVector sheared = GVector::from_stacked(shear(f1) * GVector(x, xi).stacked());
  CHECK(max_abs(Vec(sheared.v - x)) == 0.0);
  CHECK(max_abs(Vec(sheared.xi - (xi + f1 * x))) < 1e-14);

  // Shears of commuting (abelian) 2-forms compose additively.
  CHECK(max_abs(Mat(shear(f1) * shear(f2) - shear(f1 + f2))) < 1e-14);
}

TEST_CASE("b-transform: conjugation, Poisson block invariance, additivity") {
  const int n = 4;
  std::mt19937_64 rng(13);
  Mat i0 = complexify::standard_complex_structure(n);
  Mat q = rand_skew(n, rng), f = rand_skew(n, rng), f2 = rand_skew(n, rng);
  Mat j = GEndo::from_blocks(i0, q, Mat::Zero(n, n), -i0.transpose()).m;

  CHECK(max_abs(Mat(b_transform(j, Mat::Zero(n, n)) - j)) == 0.0);

  // e^{-F} [[I, Q], [0, -I^T]] e^{F}: upper-left becomes I + QF, the upper
  // right (anchor image of T*) stays Q.
  GEndo t(b_transform(j, f));
  CHECK(max_abs(Mat(t.block_A() - (i0 + q * f))) < 1e-13);
  CHECK(max_abs(Mat(t.block_Q() - q)) < 1e-13);

  CHECK(max_abs(Mat(b_transform(b_transform(j, f), f2) - b_transform(j, f + f2))) < 1e-12);
}

TEST_CASE("anti-involution: squares to one, flips the pairing, swaps C+/-") {
  const int n = 3;
  std::mt19937_64 rng(17);
  GVector a(rand_vec(n, rng), rand_vec(n, rng));
  GVector b(rand_vec(n, rng), rand_vec(n, rng));

  GVector cca = anti_involution(anti_involution(a));
  CHECK(max_abs(Vec(cca.v - a.v)) == 0.0);
  CHECK(max_abs(Vec(cca.xi - a.xi)) == 0.0);
  CHECK(max_abs(Mat(anti_involution_matrix(n) * anti_involution_matrix(n) -
                    Mat::Identity(2 * n, 2 * n))) == 0.0);

  CHECK(pairing(anti_involution(a), anti_involution(b)) == doctest::Approx(-pairing(a, b)));

  // With b = 0, C maps C+ = {X + gX} onto C- = {X - gX}.
  GMetricFiber m(rand_spd(n, rng));
  Vec x = rand_vec(n, rng);
  GVector plus(x, m.g * x);
  auto [p, q] = project_pm(anti_involution(plus), m);
  CHECK(p.max_abs() < 1e-13);
  CHECK(max_abs(Vec(q.v - x)) < 1e-13);
}

TEST_CASE("generalized metric: reflection, projections, positivity") {
  const int n = 3;
  std::mt19937_64 rng(19);
  Mat g = rand_spd(n, rng);
  Mat b = rand_skew(n, rng);
  GMetricFiber m(g, b);

  // The reflection squares to one and fixes C+ = {X + (b+g)X}.
  Mat r = m.reflection();
  CHECK(max_abs(Mat(r * r - Mat::Identity(2 * n, 2 * n))) < 1e-12);
  Vec x = rand_vec(n, rng);
  GVector cp(x, (b + g) * x);
  CHECK(max_abs(Vec(r * cp.stacked() - cp.stacked())) < 1e-12);
  GVector cm(x, (b - g) * x);
  CHECK(max_abs(Vec(r * cm.stacked() + cm.stacked())) < 1e-12);

  // project_pm: C+ members are fixed points, parts sum back, and each part
  // satisfies its graph relation xi = (b +- g) v.
  auto [pp, pm] = project_pm(cp, m);
  CHECK(max_abs(Vec(pp.stacked() - cp.stacked())) < 1e-12);
  CHECK(pm.max_abs() < 1e-12);

  GVector a(rand_vec(n, rng), rand_vec(n, rng));
  auto [ap, am] = project_pm(a, m);
  CHECK(max_abs(Vec((ap + am).stacked() - a.stacked())) < 1e-12);
  CHECK(max_abs(Vec(ap.xi - (b + g) * ap.v)) < 1e-12);
  CHECK(max_abs(Vec(am.xi - (b - g) * am.v)) < 1e-12);

  // Pure covector with g = 1, b = 0 splits as (0, e1) = 1/2 (e1, e1) + 1/2 (-e1, e1).
  GMetricFiber id(Mat::Identity(n, n));
  auto [hp, hm] = project_pm(GVector::covector(unit(n, 0)), id);
  CHECK(max_abs(Vec(hp.v - 0.5 * unit(n, 0))) < 1e-14);
  CHECK(max_abs(Vec(hp.xi - 0.5 * unit(n, 0))) < 1e-14);
  CHECK(max_abs(Vec(hm.v + 0.5 * unit(n, 0))) < 1e-14);
  CHECK(max_abs(Vec(hm.xi - 0.5 * unit(n, 0))) < 1e-14);

  // G via projections vs the reflection Gram matrix R^T P, and the explicit
  // b = 0 formula G(a,a) = g(X,X) + g^{-1}(xi,xi).
  Mat gram = r.transpose() * pairing_matrix(n);
  CHECK(metric_form(a, a, m) == doctest::Approx(a.stacked().dot(gram * a.stacked())));
  CHECK(metric_form(a, a, m) > 0.0);
  CHECK(metric_form(a, a, id) ==
        doctest::Approx(a.v.dot(a.v) + a.xi.dot(a.xi)));
  CHECK(metric_form(GVector::zero(n), GVector::zero(n), m) == 0.0);
}

TEST_CASE("fiber structure check: complex, symplectic, and failing candidates") {
  const int n = 4;
  Mat i0 = complexify::standard_complex_structure(n);

  auto [s1, o1] = check_gcs_fiber(GEndo::from_blocks(i0, Mat::Zero(n, n), Mat::Zero(n, n),
                                                     -i0.transpose())
                                      .m);
  CHECK(s1 < 1e-14);
  CHECK(o1 < 1e-14);

  // [[0, -F^{-1}], [F, 0]] for the standard symplectic F (= i0 as a map).
  auto [s2, o2] = check_gcs_fiber(
      GEndo::from_blocks(Mat::Zero(n, n), Mat(-i0.inverse()), i0, Mat::Zero(n, n)).m);
  CHECK(s2 < 1e-14);
  CHECK(o2 < 1e-14);

  // The identity is pairing-orthogonal but fails J^2 = -1 by exactly 2.
  auto [s3, o3] = check_gcs_fiber(Mat(Mat::Identity(2 * n, 2 * n)));
  CHECK(s3 == doctest::Approx(2.0));
  CHECK(o3 == 0.0);
}

TEST_CASE("constructor guards") {
  CHECK_THROWS_AS(GVector(Vec::Zero(3), Vec::Zero(2)), std::invalid_argument);
  CHECK_THROWS_AS(GEndo(Mat(Mat::Zero(3, 3))), std::invalid_argument);
  CHECK_THROWS_AS(GMetricFiber(Mat(-Mat::Identity(2, 2))), std::invalid_argument);
}

}  // TEST_SUITE
