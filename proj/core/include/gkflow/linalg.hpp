#pragma once

// Pointwise (single-fiber) linear algebra on V + V* with the split-signature
// pairing. Everything here is exact matrix algebra; no differentiation.
//
// Conventions, fixed once for the whole library:
//
//  * Pairing: <X+xi, Y+eta> = eta(X) + xi(Y).  No 1/2 factor, so that
//    <pi^* xi, a> = xi(pi(a)) holds on the nose.  kPairingScale marks the
//    convention; if a downstream identity ever looks off by a factor of two,
//    this is the first thing to suspect.
//
//  * Skew 2-tensors are stored as the matrices of their interior-product
//    maps: for a 2-form F, mat(F) * X = i_X F (first slot), so
//    F(X,Y) = dot(mat(F) X, Y); for a bivector Q, mat(Q) * xi = i_xi Q.
//    Wedge uses the determinant convention (dx^dy)(e1,e2) = 1, i.e.
//    mat(dx^dy) = [[0,-1],[1,0]].  With this choice the block compositions
//    J - I = QF, FJ + I^T F = 0, e^F = [[1,0],[F,1]], g = -1/2 F(I+J) are
//    literal matrix products, and the dual map I^* is plainly I^T.

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <utility>

namespace gkflow {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using VecC = Eigen::VectorXcd;
using MatC = Eigen::MatrixXcd;

inline double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
inline double max_abs(const Vec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }
inline double max_abs(const MatC& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

namespace linalg {

inline constexpr double kPairingScale = 1.0;

// Section value of V + V*: vector part and covector part, same dimension.
struct GVector {
  Vec v;
  Vec xi;

  GVector() = default;
  GVector(Vec v_, Vec xi_) : v(std::move(v_)), xi(std::move(xi_)) {
    if (v.size() != xi.size())
      throw std::invalid_argument("GVector: vector and covector parts must have equal dimension");
  }
  static GVector vector(const Vec& x) { return GVector(x, Vec::Zero(x.size())); }
  static GVector covector(const Vec& x) { return GVector(Vec::Zero(x.size()), x); }
  static GVector zero(int n) { return GVector(Vec::Zero(n), Vec::Zero(n)); }

  int dim() const { return static_cast<int>(v.size()); }
  Vec stacked() const {
    Vec s(2 * v.size());
    s << v, xi;
    return s;
  }
  static GVector from_stacked(const Vec& s) {
    const int n = static_cast<int>(s.size()) / 2;
    return GVector(s.head(n), s.tail(n));
  }
  double max_abs() const {
    return std::max(gkflow::max_abs(v), gkflow::max_abs(xi));
  }

  GVector operator+(const GVector& o) const { return GVector(v + o.v, xi + o.xi); }
  GVector operator-(const GVector& o) const { return GVector(v - o.v, xi - o.xi); }
  GVector operator*(double s) const { return GVector(s * v, s * xi); }
};
inline GVector operator*(double s, const GVector& a) { return a * s; }

double pairing(const GVector& a, const GVector& b);

// Matrix of the pairing in the stacked (v, xi) basis: [[0, 1], [1, 0]].
Mat pairing_matrix(int n);

// Endomorphism of V + V* in stacked block form [[A, Q], [F, B]].
struct GEndo {
  Mat m;  // 2n x 2n

  GEndo() = default;
  explicit GEndo(Mat m_) : m(std::move(m_)) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0)
      throw std::invalid_argument("GEndo: matrix must be square of even dimension");
  }
  static GEndo from_blocks(const Mat& A, const Mat& Q, const Mat& F, const Mat& B);

  int n() const { return static_cast<int>(m.rows()) / 2; }
  Mat block_A() const { return m.topLeftCorner(n(), n()); }
  Mat block_Q() const { return m.topRightCorner(n(), n()); }
  Mat block_F() const { return m.bottomLeftCorner(n(), n()); }
  Mat block_B() const { return m.bottomRightCorner(n(), n()); }
};

// e^F = [[1,0],[F,1]]: X+xi -> X + xi + i_X F.
Mat shear(const Mat& F);

// Conjugation e^{-F} J e^{F}.
Mat b_transform(const Mat& J, const Mat& F);

// C(X + xi) = X - xi.
GVector anti_involution(const GVector& a);
Mat anti_involution_matrix(int n);

// Fiber generalized metric data: g symmetric positive, b skew (both n x n,
// stored as maps per the convention above).
struct GMetricFiber {
  Mat g;
  Mat b;

  GMetricFiber(Mat g_, Mat b_);
  explicit GMetricFiber(Mat g_) : GMetricFiber(std::move(g_), Mat()) {}

  int n() const { return static_cast<int>(g.rows()); }
  // C_+ = {X + (b+g)X},  C_- = {X + (b-g)X}.
  Mat reflection() const;  // endomorphism with C_+/- eigenvalues +/-1
};

// Decompose a = a_plus + a_minus with a_plus in C_+, a_minus in C_-.
std::pair<GVector, GVector> project_pm(const GVector& a, const GMetricFiber& m);

// G(a, a) = <a_+, a_+> - <a_-, a_->.
double metric_form(const GVector& a, const GVector& b, const GMetricFiber& m);

// Residuals (||J^2 + 1||_max, ||J^T P J - P||_max) for a candidate
// generalized complex fiber structure.
std::pair<double, double> check_gcs_fiber(const Mat& J);

}  // namespace linalg
}  // namespace gkflow
