#pragma once

// Tensor fields on coordinate charts with finite-difference calculus.
//
// Fields are closures (point -> value), never grids, so evaluation is exact
// at arbitrary points and no interpolation error enters.  All derivatives
// are central differences with the chart's step h (2nd order by default,
// optional 4th-order stencil).
//
// Matrix-valued fields follow the map-matrix convention of linalg.hpp:
//   2-form  F:  mat(F)·X = i_X F,          F(X,Y) = (mat(F)·X)·Y
//   bivector Q: mat(Q)·xi = i_xi Q   (first-slot contraction)
//   endo    I:  plain matrix of the (1,1)-tensor
// so that structural equations (J - I = QF, FJ + I^T F = 0, ...) are literal
// matrix products.

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <vector>

#include "gkflow/chart.hpp"
#include "gkflow/linalg.hpp"

namespace gkflow::fields {

using ScalarField = std::function<double(const Vec&)>;
using VecField = std::function<Vec(const Vec&)>;
using VectorField = VecField;   // components X^i
using OneFormField = VecField;  // components a_i
using MatField = std::function<Mat(const Vec&)>;
using TwoFormField = MatField;   // map-matrix, mat(F)·X = i_X F
using BivectorField = MatField;  // map-matrix, mat(Q)·xi = i_xi Q
using EndoField = MatField;      // endomorphisms of T
using GEndoField = MatField;     // endomorphisms of T+T* (2n x 2n)

// Dense fully antisymmetric rank-3 array (components of a 3-form H_{ijk}
// or of a 3-vector like [Q,Q]^{ijk}).  set() writes the whole orbit.
class Alt3 {
 public:
  Alt3() = default;
  explicit Alt3(int dim);

  int dim() const { return n_; }
  double operator()(int i, int j, int k) const { return c_[(i * n_ + j) * n_ + k]; }
  void set(int i, int j, int k, double value);
  double max_abs() const;

  Alt3& operator+=(const Alt3& o);
  Alt3& operator*=(double s);
  friend Alt3 operator+(Alt3 a, const Alt3& b) { return a += b; }
  friend Alt3 operator-(const Alt3& a, const Alt3& b);
  friend Alt3 operator*(double s, Alt3 a) { return a *= s; }
  friend Alt3 operator/(Alt3 a, double s) { return a *= (1.0 / s); }

  // Full contraction H(X,Y,Z).
  double contract(const Vec& x, const Vec& y, const Vec& z) const;
  // Map-matrix of the 2-form i_X H:  mat(i_X H)_{ij} = H(X, e_j, e_i).
  Mat interior(const Vec& x) const;
  // Components of the 1-form i_Y i_X H = H(X, Y, ·).
  Vec interior2(const Vec& x, const Vec& y) const;

 private:
  int n_ = 0;
  std::vector<double> c_;
};

using ThreeFormField = std::function<Alt3(const Vec&)>;
using ThreeVectorField = std::function<Alt3(const Vec&)>;

ThreeFormField zero_threeform(int dim);
// H = k · dx^{i}∧dx^{j}∧dx^{k} style constant 3-form.
ThreeFormField constant_threeform(int dim, int i, int j, int k, double coeff);

// ---------------------------------------------------------------------------
// Finite differences.  order is 2 or 4; the step is chart.h.  All evaluation
// points produced by stencils are wrapped on periodic axes; non-periodic
// stencil points outside the box raise ChartError.

double partial(const ScalarField& f, const Chart& c, const Vec& p, int axis, int order = 2);
Vec partial(const VecField& f, const Chart& c, const Vec& p, int axis, int order = 2);
Mat partial(const MatField& f, const Chart& c, const Vec& p, int axis, int order = 2);

// Jacobian A of a vector field, A(i,j) = d X^i / d x^j.
Mat jacobian(const VecField& x, const Chart& c, const Vec& p, int order = 2);

// Gradient of a scalar as a 1-form value.
Vec gradient(const ScalarField& f, const Chart& c, const Vec& p, int order = 2);

// ---------------------------------------------------------------------------
// Exterior derivative (named per input rank; the map-matrix identities are
//   mat(d a) = Jac(a) - Jac(a)^T,  (dF)_{ijk} = d_i F_{jk} + d_j F_{ki} + d_k F_{ij}).

OneFormField ext_d(const ScalarField& f, const Chart& c, int order = 2);
TwoFormField ext_d_oneform(const OneFormField& a, const Chart& c, int order = 2);
ThreeFormField ext_d_twoform(const TwoFormField& f, const Chart& c, int order = 2);

// Max-abs of the 4-form d H over the given points (0 when dim < 4).
double d_threeform_residual(const ThreeFormField& h, const Chart& c,
                            const std::vector<Vec>& pts, int order = 2);

// ---------------------------------------------------------------------------
// Lie calculus (named per tensor kind; all take the flowing vector field X).

VectorField lie_bracket(const VectorField& x, const VectorField& y, const Chart& c, int order = 2);
ScalarField lie_scalar(const VectorField& x, const ScalarField& f, const Chart& c, int order = 2);
OneFormField lie_oneform(const VectorField& x, const OneFormField& a, const Chart& c, int order = 2);
// mat(L_X F) = X·dF + F A + A^T F,  A = Jac(X)
TwoFormField lie_twoform(const VectorField& x, const TwoFormField& f, const Chart& c, int order = 2);
// mat(L_X Q) = X·dQ - A Q - Q A^T
BivectorField lie_bivector(const VectorField& x, const BivectorField& q, const Chart& c, int order = 2);
// L_X I = X·dI - A I + I A
EndoField lie_endo(const VectorField& x, const EndoField& i, const Chart& c, int order = 2);

// Schouten bracket [Q,Q], components [Q,Q]^{ijk}; zero iff Q is Poisson.
ThreeVectorField schouten_square(const BivectorField& q, const Chart& c, int order = 2);

// ---------------------------------------------------------------------------
// Pointwise exterior algebra helpers.

// mat(a ∧ b) for 1-form values a, b:  b a^T - a b^T.
Mat wedge11(const Vec& a, const Vec& b);

// ---------------------------------------------------------------------------
// Sections of T + T* and the (twisted) Courant bracket.

struct GSectionField {
  VectorField v;
  OneFormField xi;

  linalg::GVector at(const Vec& p) const { return linalg::GVector(v(p), xi(p)); }
};

GSectionField constant_section(const linalg::GVector& a);
GSectionField add(const GSectionField& a, const GSectionField& b);
GSectionField scale(const ScalarField& f, const GSectionField& a);
// The section p -> J(p)·a(p) for a gendo field J.
GSectionField apply_gendo(const GEndoField& j, const GSectionField& a);
ScalarField pairing_field(const GSectionField& a, const GSectionField& b);

// Dorfman bracket [a,b] = ([X,Y], L_X eta - i_Y d xi + i_Y i_X H).
// H may be null (untwisted).  Closedness of H is the caller's obligation;
// courant_axiom_suite and the structure constructors check it and report.
GSectionField dorfman(const GSectionField& a, const GSectionField& b, const Chart& c,
                      const ThreeFormField* h = nullptr, int order = 2);
// Skew bracket [a,b]_sk = ½([a,b] - [b,a]).
GSectionField courant_skew(const GSectionField& a, const GSectionField& b, const Chart& c,
                           const ThreeFormField* h = nullptr, int order = 2);

// ---------------------------------------------------------------------------
// Smooth maps, pullbacks, pushforwards.

struct SmoothMap {
  std::function<Vec(const Vec&)> value;
  std::function<Mat(const Vec&)> jac;  // D phi, (i,j) = d phi^i / d x^j
};

// A diffeomorphism carried as the pair (phi, phi^{-1}).
struct Diffeo {
  SmoothMap fwd;
  SmoothMap inv;
};

SmoothMap identity_map(int dim);
SmoothMap linear_map(const Mat& a);
Diffeo linear_diffeo(const Mat& a);

// (phi^*F)(p) = Dphi(p)^T · F(phi(p)) · Dphi(p)
TwoFormField pullback_form(const TwoFormField& f, const SmoothMap& phi);
// (phi^*I)(p) = Dphi(p)^{-1} · I(phi(p)) · Dphi(p)
EndoField pullback_endo(const EndoField& i, const SmoothMap& phi);
// Pushforward along a diffeo: I^phi = pullback along phi^{-1}, etc.
EndoField pushforward_endo(const EndoField& i, const Diffeo& phi);
BivectorField pushforward_bivector(const BivectorField& q, const Diffeo& phi);

// ---------------------------------------------------------------------------
// Deterministic pseudo-random smooth sections for property suites.  On
// periodic axes only 2*pi/L-periodic building blocks are used so fields stay
// smooth across the seam; on bounded axes, low-degree polynomials.

ScalarField random_scalar(const Chart& c, std::mt19937_64& rng, double amplitude = 0.3);
VectorField random_vector(const Chart& c, std::mt19937_64& rng, double amplitude = 0.3);
OneFormField random_oneform(const Chart& c, std::mt19937_64& rng, double amplitude = 0.3);
GSectionField random_section(const Chart& c, std::mt19937_64& rng, double amplitude = 0.3);

// ---------------------------------------------------------------------------
// Courant axiom suite (the defining algebroid identities, evaluated on random
// smooth sections at the supplied points).

struct AxiomReport {
  double jacobi = 0;        // [a,[b,c]] - [[a,b],c] - [b,[a,c]]
  double leibniz = 0;       // [a, f b] - f [a,b] - (X_a f) b
  double invariance = 0;    // X_a<b,c> - <[a,b],c> - <b,[a,c]>
  double skew_anomaly = 0;  // [a,a] - (0, d xi(X))
  double oneform_bracket = 0;  // [xi, eta] with H = 0 must vanish
  double dH = 0;            // closedness residual of the twist
};

AxiomReport courant_axiom_suite(const Chart& c, const ThreeFormField* h,
                                const std::vector<Vec>& pts, std::uint64_t seed,
                                int order = 2);

// ---------------------------------------------------------------------------
// Point-keyed memoization for expensive field closures (e.g. flow-transported
// tensors evaluated repeatedly on difference stencils).

template <class V>
class PointCache {
 public:
  template <class F>
  V get_or(const Vec& p, F&& compute) {
    std::vector<double> key(p.data(), p.data() + p.size());
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    V value = compute();
    std::lock_guard<std::mutex> lock(mu_);
    return map_.emplace(std::move(key), std::move(value)).first->second;
  }

 private:
  std::mutex mu_;
  std::map<std::vector<double>, V> map_;
};

MatField memoize(MatField f);

}  // namespace gkflow::fields
