#include "gkflow/complexify.hpp"

#include <stdexcept>

namespace gkflow::complexify {

namespace {
const std::complex<double> kI(0.0, 1.0);
}

Mat standard_complex_structure(int n) {
  if (n <= 0 || n % 2 != 0)
    throw std::invalid_argument("standard_complex_structure: n must be positive even");
  Mat m = Mat::Zero(n, n);
  for (int k = 0; k < n; k += 2) {
    m(k, k + 1) = -1.0;
    m(k + 1, k) = 1.0;
  }
  return m;
}

MatC holo_projector(const Mat& I) {
  const auto n = I.rows();
  return 0.5 * (MatC::Identity(n, n) - kI * I.cast<std::complex<double>>());
}

MatC antiholo_projector(const Mat& I) {
  const auto n = I.rows();
  return 0.5 * (MatC::Identity(n, n) + kI * I.cast<std::complex<double>>());
}

MatC holo_frame(const Mat& I) {
  const int n = static_cast<int>(I.rows());
  if (n % 2 != 0) throw std::invalid_argument("holo_frame: odd dimension");
  MatC p = holo_projector(I);
  Eigen::ColPivHouseholderQR<MatC> qr(p);
  MatC q = qr.householderQ();
  return q.leftCols(n / 2);
}

Mat complex_structure_from_coframe(const MatC& theta_rows, double tol) {
  const int half = static_cast<int>(theta_rows.rows());
  const int n = static_cast<int>(theta_rows.cols());
  if (2 * half != n)
    throw std::invalid_argument("complex_structure_from_coframe: need n/2 coframe rows");
  MatC m(n, n);
  m.topRows(half) = theta_rows;
  m.bottomRows(half) = theta_rows.conjugate();
  VecC d(n);
  for (int k = 0; k < n; ++k) d[k] = (k < half) ? kI : -kI;
  // Rows satisfy theta(I X) = i theta(X):  M I = D M.
  MatC ic = m.fullPivLu().solve(d.asDiagonal() * m);
  if (max_abs(Mat(ic.imag())) > tol)
    throw std::invalid_argument("complex_structure_from_coframe: result not real");
  Mat i = ic.real();
  if (max_abs(Mat(i * i + Mat::Identity(n, n))) > tol)
    throw std::invalid_argument("complex_structure_from_coframe: I^2 != -1");
  return i;
}

RealPair split(const MatC& s) { return {s.real(), s.imag()}; }

Mat bivector_block(const MatC& sigma_mat) { return kBivectorBlockScale * sigma_mat.imag(); }

double type20_residual(const Mat& I, const MatC& sigma_mat) {
  MatC ic = I.cast<std::complex<double>>();
  double r1 = max_abs(MatC(ic * sigma_mat - kI * sigma_mat));
  double r2 = max_abs(MatC(sigma_mat * ic.transpose() - kI * sigma_mat));
  return std::max(r1, r2);
}

}  // namespace gkflow::complexify
