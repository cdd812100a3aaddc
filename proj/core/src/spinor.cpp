#include "gkflow/spinor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace gkflow::spinor {

namespace {

// Coordinate vectors of the holomorphic/antiholomorphic frame in the real
// basis (x1, x2, x3, x4): d/dz = (d1 - i d2)/2, etc.
VecC frame_dz() {
  VecC v = VecC::Zero(4);
  v(0) = Cplx(0.5, 0.0);
  v(1) = Cplx(0.0, -0.5);
  return v;
}
VecC frame_dw() {
  VecC v = VecC::Zero(4);
  v(2) = Cplx(0.5, 0.0);
  v(3) = Cplx(0.0, -0.5);
  return v;
}

// mat(u ^ v) = v u^T - u v^T (map-matrix convention, first-slot contraction).
MatC bivector_mat(const VecC& u, const VecC& v) {
  return v * u.transpose() - u * v.transpose();
}

}  // namespace

ExtForm ExtForm::scalar(Cplx v) { return monomial(0, v); }

ExtForm ExtForm::monomial(int mask, Cplx coeff) {
  ExtForm f;
  f.c[static_cast<size_t>(mask)] = coeff;
  return f;
}

ExtForm& ExtForm::operator+=(const ExtForm& o) {
  for (int i = 0; i < 16; ++i) c[i] += o.c[i];
  return *this;
}

ExtForm& ExtForm::operator-=(const ExtForm& o) {
  for (int i = 0; i < 16; ++i) c[i] -= o.c[i];
  return *this;
}

ExtForm& ExtForm::operator*=(Cplx s) {
  for (auto& v : c) v *= s;
  return *this;
}

double ExtForm::max_abs_diff(const ExtForm& o) const {
  double worst = 0.0;
  for (int i = 0; i < 16; ++i) worst = std::max(worst, std::abs(c[i] - o.c[i]));
  return worst;
}

void ExtBivector::set(int u, int v, Cplx coeff) {
  b(u, v) = coeff;
  b(v, u) = -coeff;
}

ExtForm wedge(const ExtForm& a, const ExtForm& b) {
  ExtForm out;
  for (int ma = 0; ma < 16; ++ma) {
    if (a.c[ma] == Cplx(0, 0)) continue;
    for (int mb = 0; mb < 16; ++mb) {
      if (b.c[mb] == Cplx(0, 0) || (ma & mb)) continue;
      // Sign of interleaving: generators of mb crossing the higher ones of ma.
      int swaps = 0;
      for (int j = 0; j < 4; ++j)
        if (mb & (1 << j)) swaps += std::popcount(static_cast<unsigned>(ma) >> (j + 1));
      double sign = (swaps % 2 == 0) ? 1.0 : -1.0;
      out.c[ma | mb] += sign * a.c[ma] * b.c[mb];
    }
  }
  return out;
}

ExtForm interior(int gen, const ExtForm& a) {
  ExtForm out;
  const int bit = 1 << gen;
  for (int m = 0; m < 16; ++m) {
    if (!(m & bit) || a.c[m] == Cplx(0, 0)) continue;
    int below = std::popcount(static_cast<unsigned>(m & (bit - 1)));
    double sign = (below % 2 == 0) ? 1.0 : -1.0;
    out.c[m & ~bit] += sign * a.c[m];
  }
  return out;
}

ExtForm contract(const ExtBivector& q, const ExtForm& a) {
  ExtForm out;
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) {
      if (q.b(u, v) == Cplx(0, 0)) continue;
      ExtForm t = interior(v, interior(u, a));
      t *= q.b(u, v);
      out += t;
    }
  return out;
}

ExtForm exp_wedge(const ExtForm& f, const ExtForm& a) {
  ExtForm out = a;
  ExtForm fa = wedge(f, a);
  out += fa;
  ExtForm ffa = wedge(f, fa);
  ffa *= 0.5;
  return out += ffa;
}

ExtForm exp_contract(const ExtBivector& q, const ExtForm& a) {
  ExtForm out = a;
  ExtForm qa = contract(q, a);
  out += qa;
  ExtForm qqa = contract(q, qa);
  qqa *= 0.5;
  return out += qqa;
}

ExtBivector sigma_c(double c, Cplx z, Cplx w) {
  // (z dz^v + i c wbar dwbar^v) ^ (w dw^v)
  ExtBivector q;
  q.set(kDz, kDw, z * w);
  q.set(kDwBar, kDw, Cplx(0, c) * std::conj(w) * w);
  return q;
}

ExtForm omega_c(double c, Cplx z, Cplx w) {
  // dz/z ^ (dw + i c w dzbar/zbar)
  ExtForm out = ExtForm::monomial((1 << kDz) | (1 << kDw), 1.0 / z);
  out += ExtForm::monomial((1 << kDz) | (1 << kDzBar),
                           Cplx(0, c) * w / (z * std::conj(z)));
  return out;
}

ExtForm f_c(double c, Cplx z) {
  return ExtForm::monomial((1 << kDz) | (1 << kDzBar), Cplx(0, c) / (z * std::conj(z)));
}

double verify_elliptic(double c, Cplx z, Cplx w) {
  if (z == Cplx(0, 0)) throw std::domain_error("verify_elliptic: z must be nonzero");
  ExtForm lhs = exp_wedge(f_c(c, z), exp_contract(sigma_c(0.0, z, w), omega_c(0.0, z, w)));
  ExtForm rhs = exp_contract(sigma_c(c, z, w), omega_c(c, z, w));
  return lhs.max_abs_diff(rhs);
}

EllipticTensors elliptic_tensors(double c) {
  EllipticTensors out;
  Chart chart;
  chart.dim = 4;
  chart.box = {{0.5, 2.0}, {0.5, 2.0}, {-1.0, 1.0}, {-1.0, 1.0}};
  chart.periodic = {false, false, false, false};
  chart.h = 1e-3;
  out.chart = chart;

  out.I = [c](const Vec& p) -> Mat {
    Cplx z(p(0), p(1)), w(p(2), p(3));
    MatC rows(2, 4);
    // theta^1 = dz, theta^2 = dw + i c w dzbar/zbar.
    rows.row(0) << Cplx(1, 0), Cplx(0, 1), Cplx(0, 0), Cplx(0, 0);
    Cplx a = Cplx(0, c) * w / std::conj(z);
    rows.row(1) << a, -Cplx(0, 1) * a, Cplx(1, 0), Cplx(0, 1);
    return complexify::complex_structure_from_coframe(rows);
  };

  VecC az = frame_dz(), aw = frame_dw();
  VecC awb = aw.conjugate();
  out.sigma.re = [c, az, aw, awb](const Vec& p) -> Mat {
    Cplx z(p(0), p(1)), w(p(2), p(3));
    MatC s = z * w * bivector_mat(az, aw) +
             Cplx(0, c) * std::conj(w) * w * bivector_mat(awb, aw);
    return s.real();
  };
  out.sigma.im = [c, az, aw, awb](const Vec& p) -> Mat {
    Cplx z(p(0), p(1)), w(p(2), p(3));
    MatC s = z * w * bivector_mat(az, aw) +
             Cplx(0, c) * std::conj(w) * w * bivector_mat(awb, aw);
    return s.imag();
  };

  out.F = [c](const Vec& p) -> Mat {
    Mat f = Mat::Zero(4, 4);
    double r2 = p(0) * p(0) + p(1) * p(1);
    f(1, 0) = 2.0 * c / r2;  // mat(dx1 ^ dx2) = [[0, -1], [1, 0]] block
    f(0, 1) = -f(1, 0);
    return f;
  };
  return out;
}

}  // namespace gkflow::spinor
