#pragma once

// Exact exterior algebra over the four complex generators dz, dzbar, dw,
// dwbar, used to verify the elliptic-curve pure-spinor identity
// e^{F_c} e^{sigma_0} Omega_0 = e^{sigma_c} Omega_c coefficientwise and to
// extract the corresponding real tensor fields on a 4-chart.

#include <array>
#include <complex>

#include "gkflow/gcs.hpp"

namespace gkflow::spinor {

using Cplx = std::complex<double>;

// Generators in mask-bit order.
enum Generator : int { kDz = 0, kDzBar = 1, kDw = 2, kDwBar = 3 };

// A complex exterior form: one coefficient per subset of the generators.
struct ExtForm {
  std::array<Cplx, 16> c{};

  static ExtForm scalar(Cplx v);
  static ExtForm monomial(int mask, Cplx coeff);

  ExtForm& operator+=(const ExtForm& o);
  ExtForm& operator-=(const ExtForm& o);
  ExtForm& operator*=(Cplx s);
  friend ExtForm operator+(ExtForm a, const ExtForm& b) { return a += b; }
  friend ExtForm operator-(ExtForm a, const ExtForm& b) { return a -= b; }
  friend ExtForm operator*(Cplx s, ExtForm a) { return a *= s; }

  double max_abs_diff(const ExtForm& o) const;
};

// A complex bivector sum_{u<v} b(u, v) d_u ^ d_v over the dual generators.
struct ExtBivector {
  MatC b = MatC::Zero(4, 4);  // antisymmetric coefficients

  void set(int u, int v, Cplx coeff);
};

ExtForm wedge(const ExtForm& a, const ExtForm& b);

// Interior product by one dual generator.
ExtForm interior(int gen, const ExtForm& a);

// Contraction by a bivector; i_{X ^ Y} = i_Y o i_X, so that
// (dz ^ dw) contracted with the bivector on (z, w) gives +1.
ExtForm contract(const ExtBivector& q, const ExtForm& a);

// e^F a = a + F ^ a + (1/2) F ^ F ^ a (the series truncates in 4 generators).
ExtForm exp_wedge(const ExtForm& f, const ExtForm& a);
// e^sigma a = a + sigma . a + (1/2) sigma . (sigma . a).
ExtForm exp_contract(const ExtBivector& q, const ExtForm& a);

// The elliptic family data at a point: sigma_c = (z dz^v + i c wbar dwbar^v)
// ^ w dw^v, Omega_c = dz/z ^ (dw + i c w dzbar/zbar), F_c = i c dz^dzbar/(z zbar).
ExtBivector sigma_c(double c, Cplx z, Cplx w);
ExtForm omega_c(double c, Cplx z, Cplx w);
ExtForm f_c(double c, Cplx z);

// Max coefficient discrepancy of e^{F_c} e^{sigma_0} Omega_0 vs
// e^{sigma_c} Omega_c.  Throws std::domain_error when z = 0.
double verify_elliptic(double c, Cplx z, Cplx w);

// Real tensor fields of the family on the chart x1 + i x2 = z, x3 + i x4 = w
// with x1, x2 in [0.5, 2] (so z != 0) and x3, x4 in [-1, 1].
struct EllipticTensors {
  fields::EndoField I;         // coframe {dz, dw + i c w dzbar/zbar}
  gcs::ComplexBivector sigma;  // sigma_c in real map-matrix components
  fields::TwoFormField F;      // F_c = 2c dx1^dx2 / (x1^2 + x2^2)
  Chart chart;
};
EllipticTensors elliptic_tensors(double c);

}  // namespace gkflow::spinor
