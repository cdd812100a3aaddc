#include "gkflow/linalg.hpp"

namespace gkflow::linalg {

double pairing(const GVector& a, const GVector& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("pairing: dimension mismatch");
  return kPairingScale * (b.xi.dot(a.v) + a.xi.dot(b.v));
}

Mat pairing_matrix(int n) {
  Mat p = Mat::Zero(2 * n, 2 * n);
  p.topRightCorner(n, n) = Mat::Identity(n, n);
  p.bottomLeftCorner(n, n) = Mat::Identity(n, n);
  return kPairingScale * p;
}

GEndo GEndo::from_blocks(const Mat& A, const Mat& Q, const Mat& F, const Mat& B) {
  const auto n = A.rows();
  if (Q.rows() != n || F.rows() != n || B.rows() != n ||
      A.cols() != n || Q.cols() != n || F.cols() != n || B.cols() != n)
    throw std::invalid_argument("GEndo::from_blocks: blocks must be square of equal size");
  Mat m(2 * n, 2 * n);
  m << A, Q, F, B;
  return GEndo(m);
}

Mat shear(const Mat& F) {
  if (F.rows() != F.cols())
    throw std::invalid_argument("shear: F must be square");
  const auto n = F.rows();
  Mat e = Mat::Identity(2 * n, 2 * n);
  e.bottomLeftCorner(n, n) = F;
  return e;
}

Mat b_transform(const Mat& J, const Mat& F) {
  if (J.rows() != J.cols() || J.rows() != 2 * F.rows())
    throw std::invalid_argument("b_transform: J must be 2n x 2n for n x n F");
  return shear(-F) * J * shear(F);
}

GVector anti_involution(const GVector& a) { return GVector(a.v, -a.xi); }

Mat anti_involution_matrix(int n) {
  Mat c = Mat::Identity(2 * n, 2 * n);
  c.bottomRightCorner(n, n) *= -1.0;
  return c;
}

GMetricFiber::GMetricFiber(Mat g_, Mat b_) : g(std::move(g_)), b(std::move(b_)) {
  if (b.size() == 0) b = Mat::Zero(g.rows(), g.cols());
  if (g.rows() != g.cols() || b.rows() != b.cols() || g.rows() != b.rows())
    throw std::invalid_argument("GMetricFiber: g and b must be square of equal size");
  if (max_abs(Mat(g - g.transpose())) > 1e-12 * (1.0 + max_abs(g)))
    throw std::invalid_argument("GMetricFiber: g must be symmetric");
  if (max_abs(Mat(b + b.transpose())) > 1e-12 * (1.0 + max_abs(b)))
    throw std::invalid_argument("GMetricFiber: b must be skew");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (g + g.transpose()));
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("GMetricFiber: g must be positive definite");
}

Mat GMetricFiber::reflection() const {
  const int nn = n();
  // On C_+/-: X + (b +/- g)X.  Solving for the +/-1 eigenspace reflection
  // gives, in stacked blocks, [[-g^-1 b, g^-1], [g - b g^-1 b, b g^-1]].
  Mat gi = g.inverse();
  Mat r(2 * nn, 2 * nn);
  r.topLeftCorner(nn, nn) = -gi * b;
  r.topRightCorner(nn, nn) = gi;
  r.bottomLeftCorner(nn, nn) = g - b * gi * b;
  r.bottomRightCorner(nn, nn) = b * gi;
  return r;
}

std::pair<GVector, GVector> project_pm(const GVector& a, const GMetricFiber& m) {
  if (a.dim() != m.n())
    throw std::invalid_argument("project_pm: dimension mismatch");
  // a_+ = (u, (b+g)u), a_- = (w, (b-g)w); u + w = v, b v + g(u - w) = xi.
  Vec d = m.g.ldlt().solve(a.xi - m.b * a.v);
  Vec u = 0.5 * (a.v + d);
  Vec w = 0.5 * (a.v - d);
  return {GVector(u, m.b * u + m.g * u), GVector(w, m.b * w - m.g * w)};
}

double metric_form(const GVector& a, const GVector& b, const GMetricFiber& m) {
  auto [ap, am] = project_pm(a, m);
  auto [bp, bm] = project_pm(b, m);
  return pairing(ap, bp) - pairing(am, bm);
}

std::pair<double, double> check_gcs_fiber(const Mat& J) {
  if (J.rows() != J.cols() || J.rows() % 2 != 0)
    throw std::invalid_argument("check_gcs_fiber: J must be 2n x 2n");
  const int n = static_cast<int>(J.rows()) / 2;
  Mat p = pairing_matrix(n);
  double r1 = max_abs(Mat(J * J + Mat::Identity(2 * n, 2 * n)));
  double r2 = max_abs(Mat(J.transpose() * p * J - p));
  return {r1, r2};
}

}  // namespace gkflow::linalg
