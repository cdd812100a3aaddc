#include "gkflow/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace gkflow::fields {

// ---------------------------------------------------------------------------
// Alt3

Alt3::Alt3(int dim) : n_(dim), c_(static_cast<size_t>(dim) * dim * dim, 0.0) {
  if (dim <= 0) throw std::invalid_argument("Alt3: dim must be positive");
}

void Alt3::set(int i, int j, int k, double value) {
  if (i == j || j == k || i == k) {
    if (value != 0.0) throw std::invalid_argument("Alt3::set: repeated index with nonzero value");
    return;
  }
  auto at = [&](int a, int b, int c) -> double& { return c_[(a * n_ + b) * n_ + c]; };
  at(i, j, k) = value;
  at(j, k, i) = value;
  at(k, i, j) = value;
  at(j, i, k) = -value;
  at(i, k, j) = -value;
  at(k, j, i) = -value;
}

double Alt3::max_abs() const {
  double m = 0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

Alt3& Alt3::operator+=(const Alt3& o) {
  if (o.n_ != n_) throw std::invalid_argument("Alt3: dimension mismatch");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Alt3& Alt3::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Alt3 operator-(const Alt3& a, const Alt3& b) {
  Alt3 r = a;
  r += (-1.0) * b;
  return r;
}

double Alt3::contract(const Vec& x, const Vec& y, const Vec& z) const {
  double s = 0;
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) {
      if (a == b) continue;
      for (int c = 0; c < n_; ++c) s += x[a] * y[b] * z[c] * (*this)(a, b, c);
    }
  return s;
}

Mat Alt3::interior(const Vec& x) const {
  Mat m = Mat::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      double s = 0;
      for (int a = 0; a < n_; ++a) s += x[a] * (*this)(a, j, i);
      m(i, j) = s;
    }
  return m;
}

Vec Alt3::interior2(const Vec& x, const Vec& y) const {
  Vec v = Vec::Zero(n_);
  for (int k = 0; k < n_; ++k) {
    double s = 0;
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) s += x[a] * y[b] * (*this)(a, b, k);
    v[k] = s;
  }
  return v;
}

ThreeFormField zero_threeform(int dim) {
  return [dim](const Vec&) { return Alt3(dim); };
}

ThreeFormField constant_threeform(int dim, int i, int j, int k, double coeff) {
  Alt3 h(dim);
  h.set(i, j, k, coeff);
  return [h](const Vec&) { return h; };
}

// ---------------------------------------------------------------------------
// Finite differences

namespace {

Vec stencil_point(const Chart& c, const Vec& p, int axis, double offset) {
  Vec q = p;
  q[axis] += offset;
  q = c.wrap(q);
  c.require_inside(q);
  return q;
}

template <class F, class V>
V central_diff(const F& f, const Chart& c, const Vec& p, int axis, int order) {
  const double h = c.h;
  if (order == 2) {
    V plus = f(stencil_point(c, p, axis, h));
    V minus = f(stencil_point(c, p, axis, -h));
    return (plus - minus) / (2.0 * h);
  }
  if (order == 4) {
    V p1 = f(stencil_point(c, p, axis, h));
    V m1 = f(stencil_point(c, p, axis, -h));
    V p2 = f(stencil_point(c, p, axis, 2.0 * h));
    V m2 = f(stencil_point(c, p, axis, -2.0 * h));
    return (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h);
  }
  throw std::invalid_argument("finite-difference order must be 2 or 4");
}

}  // namespace

double partial(const ScalarField& f, const Chart& c, const Vec& p, int axis, int order) {
  return central_diff<ScalarField, double>(f, c, p, axis, order);
}

Vec partial(const VecField& f, const Chart& c, const Vec& p, int axis, int order) {
  return central_diff<VecField, Vec>(f, c, p, axis, order);
}

Mat partial(const MatField& f, const Chart& c, const Vec& p, int axis, int order) {
  return central_diff<MatField, Mat>(f, c, p, axis, order);
}

Mat jacobian(const VecField& x, const Chart& c, const Vec& p, int order) {
  Mat a(c.dim, c.dim);
  for (int j = 0; j < c.dim; ++j) a.col(j) = partial(x, c, p, j, order);
  return a;
}

Vec gradient(const ScalarField& f, const Chart& c, const Vec& p, int order) {
  Vec g(c.dim);
  for (int j = 0; j < c.dim; ++j) g[j] = partial(f, c, p, j, order);
  return g;
}

// ---------------------------------------------------------------------------
// Exterior derivative

OneFormField ext_d(const ScalarField& f, const Chart& c, int order) {
  return [f, c, order](const Vec& p) { return gradient(f, c, p, order); };
}

TwoFormField ext_d_oneform(const OneFormField& a, const Chart& c, int order) {
  return [a, c, order](const Vec& p) {
    Mat jac = jacobian(a, c, p, order);
    return Mat(jac - jac.transpose());
  };
}

ThreeFormField ext_d_twoform(const TwoFormField& f, const Chart& c, int order) {
  return [f, c, order](const Vec& p) {
    const int n = c.dim;
    std::vector<Mat> dm(n);
    for (int l = 0; l < n; ++l) dm[l] = partial(f, c, p, l, order);
    Alt3 out(n);
    // F_{jk} = mat(F)_{kj}; (dF)_{ijk} = d_i F_{jk} + d_j F_{ki} + d_k F_{ij}
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
          out.set(i, j, k, dm[i](k, j) + dm[j](i, k) + dm[k](j, i));
    return out;
  };
}

double d_threeform_residual(const ThreeFormField& h, const Chart& c,
                            const std::vector<Vec>& pts, int order) {
  const int n = c.dim;
  if (n < 4) return 0.0;
  double worst = 0;
  for (const Vec& p : pts) {
    std::vector<Alt3> dh(n, Alt3(n));
    for (int l = 0; l < n; ++l)
      dh[l] = central_diff<ThreeFormField, Alt3>(h, c, p, l, order);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
          for (int l = k + 1; l < n; ++l) {
            double v = dh[i](j, k, l) - dh[j](i, k, l) + dh[k](i, j, l) - dh[l](i, j, k);
            worst = std::max(worst, std::abs(v));
          }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Lie calculus

namespace {

Mat directional_mat(const MatField& m, const VectorField& x, const Chart& c, const Vec& p,
                    int order) {
  Vec xv = x(p);
  Mat out = Mat::Zero(c.dim, c.dim);
  for (int k = 0; k < c.dim; ++k)
    if (xv[k] != 0.0) out += xv[k] * partial(m, c, p, k, order);
  return out;
}

}  // namespace

VectorField lie_bracket(const VectorField& x, const VectorField& y, const Chart& c, int order) {
  return [x, y, c, order](const Vec& p) {
    return Vec(jacobian(y, c, p, order) * x(p) - jacobian(x, c, p, order) * y(p));
  };
}

ScalarField lie_scalar(const VectorField& x, const ScalarField& f, const Chart& c, int order) {
  return [x, f, c, order](const Vec& p) { return x(p).dot(gradient(f, c, p, order)); };
}

OneFormField lie_oneform(const VectorField& x, const OneFormField& a, const Chart& c, int order) {
  return [x, a, c, order](const Vec& p) {
    Vec xv = x(p);
    Vec da = Vec::Zero(c.dim);
    for (int k = 0; k < c.dim; ++k)
      if (xv[k] != 0.0) da += xv[k] * partial(a, c, p, k, order);
    return Vec(da + jacobian(x, c, p, order).transpose() * a(p));
  };
}

TwoFormField lie_twoform(const VectorField& x, const TwoFormField& f, const Chart& c, int order) {
  return [x, f, c, order](const Vec& p) {
    Mat a = jacobian(x, c, p, order);
    Mat m = f(p);
    return Mat(directional_mat(f, x, c, p, order) + m * a + a.transpose() * m);
  };
}

BivectorField lie_bivector(const VectorField& x, const BivectorField& q, const Chart& c,
                           int order) {
  return [x, q, c, order](const Vec& p) {
    Mat a = jacobian(x, c, p, order);
    Mat m = q(p);
    return Mat(directional_mat(q, x, c, p, order) - a * m - m * a.transpose());
  };
}

EndoField lie_endo(const VectorField& x, const EndoField& i, const Chart& c, int order) {
  return [x, i, c, order](const Vec& p) {
    Mat a = jacobian(x, c, p, order);
    Mat m = i(p);
    return Mat(directional_mat(i, x, c, p, order) - a * m + m * a);
  };
}

ThreeVectorField schouten_square(const BivectorField& q, const Chart& c, int order) {
  return [q, c, order](const Vec& p) {
    const int n = c.dim;
    Mat m = q(p);
    std::vector<Mat> dm(n);
    for (int l = 0; l < n; ++l) dm[l] = partial(q, c, p, l, order);
    Alt3 out(n);
    // mat entries N_{ba} = Q^{ab}; cyclic coordinate formula, zero iff Poisson.
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          double s = 0;
          for (int l = 0; l < n; ++l)
            s += m(i, l) * dm[l](j, k) + m(j, l) * dm[l](k, i) + m(k, l) * dm[l](i, j);
          out.set(i, j, k, -2.0 * s);
        }
    return out;
  };
}

// ---------------------------------------------------------------------------
// Pointwise helpers

Mat wedge11(const Vec& a, const Vec& b) { return b * a.transpose() - a * b.transpose(); }

// ---------------------------------------------------------------------------
// Sections and Courant bracket

GSectionField constant_section(const linalg::GVector& a) {
  return {[a](const Vec&) { return a.v; }, [a](const Vec&) { return a.xi; }};
}

GSectionField add(const GSectionField& a, const GSectionField& b) {
  return {[a, b](const Vec& p) { return Vec(a.v(p) + b.v(p)); },
          [a, b](const Vec& p) { return Vec(a.xi(p) + b.xi(p)); }};
}

GSectionField scale(const ScalarField& f, const GSectionField& a) {
  return {[f, a](const Vec& p) { return Vec(f(p) * a.v(p)); },
          [f, a](const Vec& p) { return Vec(f(p) * a.xi(p)); }};
}

GSectionField apply_gendo(const GEndoField& j, const GSectionField& a) {
  auto value = [j, a](const Vec& p) {
    return linalg::GVector::from_stacked(j(p) * a.at(p).stacked());
  };
  return {[value](const Vec& p) { return value(p).v; },
          [value](const Vec& p) { return value(p).xi; }};
}

ScalarField pairing_field(const GSectionField& a, const GSectionField& b) {
  return [a, b](const Vec& p) { return linalg::pairing(a.at(p), b.at(p)); };
}

GSectionField dorfman(const GSectionField& a, const GSectionField& b, const Chart& c,
                      const ThreeFormField* h, int order) {
  ThreeFormField twist;
  if (h) twist = *h;
  VectorField xv = [a, b, c, order](const Vec& p) {
    return Vec(jacobian(b.v, c, p, order) * a.v(p) - jacobian(a.v, c, p, order) * b.v(p));
  };
  OneFormField xiv = [a, b, c, twist, order](const Vec& p) {
    OneFormField lx_eta = lie_oneform(a.v, b.xi, c, order);
    Mat d_xi = jacobian(a.xi, c, p, order);
    d_xi = Mat(d_xi - d_xi.transpose());  // mat(d xi)
    Vec out = lx_eta(p) - d_xi * b.v(p);
    if (twist) out += twist(p).interior2(a.v(p), b.v(p));
    return out;
  };
  return {xv, xiv};
}

GSectionField courant_skew(const GSectionField& a, const GSectionField& b, const Chart& c,
                           const ThreeFormField* h, int order) {
  GSectionField ab = dorfman(a, b, c, h, order);
  GSectionField ba = dorfman(b, a, c, h, order);
  return {[ab, ba](const Vec& p) { return Vec(0.5 * (ab.v(p) - ba.v(p))); },
          [ab, ba](const Vec& p) { return Vec(0.5 * (ab.xi(p) - ba.xi(p))); }};
}

// ---------------------------------------------------------------------------
// Maps

SmoothMap identity_map(int dim) {
  return {[](const Vec& p) { return p; }, [dim](const Vec&) { return Mat(Mat::Identity(dim, dim)); }};
}

SmoothMap linear_map(const Mat& a) {
  return {[a](const Vec& p) { return Vec(a * p); }, [a](const Vec&) { return a; }};
}

Diffeo linear_diffeo(const Mat& a) {
  Mat inv = a.inverse();
  return {linear_map(a), linear_map(inv)};
}

TwoFormField pullback_form(const TwoFormField& f, const SmoothMap& phi) {
  return [f, phi](const Vec& p) {
    Mat j = phi.jac(p);
    return Mat(j.transpose() * f(phi.value(p)) * j);
  };
}

EndoField pullback_endo(const EndoField& i, const SmoothMap& phi) {
  return [i, phi](const Vec& p) {
    Mat j = phi.jac(p);
    return Mat(j.inverse() * i(phi.value(p)) * j);
  };
}

EndoField pushforward_endo(const EndoField& i, const Diffeo& phi) {
  return pullback_endo(i, phi.inv);
}

BivectorField pushforward_bivector(const BivectorField& q, const Diffeo& phi) {
  return [q, phi](const Vec& p) {
    Mat jinv = phi.inv.jac(p);
    Mat j = jinv.inverse();  // D(fwd) at fwd^{-1}(p)
    return Mat(j * q(phi.inv.value(p)) * j.transpose());
  };
}

// ---------------------------------------------------------------------------
// Random smooth sections

namespace {

// One smooth univariate building block per axis: periodic axes get a
// full-period sine with random phase, bounded axes a centred polynomial.
std::function<double(double)> axis_basis(const Chart& c, int axis, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double lo = c.box[axis][0];
  double len = c.length(axis);
  if (c.periodic[axis]) {
    double phase = 2.0 * M_PI * unif(rng);
    return [lo, len, phase](double x) { return std::sin(2.0 * M_PI * (x - lo) / len + phase); };
  }
  double mid = lo + 0.5 * len;
  bool quad = unif(rng) < 0.5;
  return [mid, len, quad](double x) {
    double u = 2.0 * (x - mid) / len;
    return quad ? u * u : u;
  };
}

}  // namespace

ScalarField random_scalar(const Chart& c, std::mt19937_64& rng, double amplitude) {
  std::uniform_real_distribution<double> coeff(-amplitude, amplitude);
  const int n = c.dim;
  std::vector<std::function<double(double)>> basis;
  basis.reserve(n);
  for (int i = 0; i < n; ++i) basis.push_back(axis_basis(c, i, rng));
  double c0 = coeff(rng);
  std::vector<double> lin(n);
  for (double& v : lin) v = coeff(rng);
  std::vector<double> cross(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) cross[i * n + j] = coeff(rng);
  return [c0, lin, cross, basis, n](const Vec& p) {
    std::vector<double> u(n);
    for (int i = 0; i < n; ++i) u[i] = basis[i](p[i]);
    double s = c0;
    for (int i = 0; i < n; ++i) s += lin[i] * u[i];
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += cross[i * n + j] * u[i] * u[j];
    return s;
  };
}

VectorField random_vector(const Chart& c, std::mt19937_64& rng, double amplitude) {
  std::vector<ScalarField> comps;
  comps.reserve(c.dim);
  for (int i = 0; i < c.dim; ++i) comps.push_back(random_scalar(c, rng, amplitude));
  int n = c.dim;
  return [comps, n](const Vec& p) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = comps[i](p);
    return v;
  };
}

OneFormField random_oneform(const Chart& c, std::mt19937_64& rng, double amplitude) {
  return random_vector(c, rng, amplitude);
}

GSectionField random_section(const Chart& c, std::mt19937_64& rng, double amplitude) {
  return {random_vector(c, rng, amplitude), random_oneform(c, rng, amplitude)};
}

// ---------------------------------------------------------------------------
// Axiom suite

AxiomReport courant_axiom_suite(const Chart& c, const ThreeFormField* h,
                                const std::vector<Vec>& pts, std::uint64_t seed, int order) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  GSectionField a = random_section(c, rng);
  GSectionField b = random_section(c, rng);
  GSectionField d = random_section(c, rng);
  ScalarField f = random_scalar(c, rng);

  AxiomReport rep;

  GSectionField ab = dorfman(a, b, c, h, order);
  GSectionField ad = dorfman(a, d, c, h, order);
  GSectionField bd = dorfman(b, d, c, h, order);

  // Jacobi in Leibniz form: [a,[b,d]] = [[a,b],d] + [b,[a,d]]
  GSectionField lhs = dorfman(a, bd, c, h, order);
  GSectionField rhs1 = dorfman(ab, d, c, h, order);
  GSectionField rhs2 = dorfman(b, ad, c, h, order);

  // Leibniz: [a, f b] = f [a,b] + (X_a f) b
  GSectionField fb = scale(f, b);
  GSectionField afb = dorfman(a, fb, c, h, order);
  ScalarField xaf = lie_scalar(a.v, f, c, order);

  // Invariance: X_a <b,d> = <[a,b],d> + <b,[a,d]>
  ScalarField pair_bd = pairing_field(b, d);
  ScalarField dpair = lie_scalar(a.v, pair_bd, c, order);

  // Skew anomaly: [a,a] = (0, d(xi(X)))
  GSectionField aa = dorfman(a, a, c, h, order);
  ScalarField xi_of_x = [a](const Vec& p) { return a.xi(p).dot(a.v(p)); };

  // Bracket of two 1-forms vanishes.
  const int dim = c.dim;
  GSectionField form1{[dim](const Vec&) { return Vec(Vec::Zero(dim)); }, a.xi};
  GSectionField form2{[dim](const Vec&) { return Vec(Vec::Zero(dim)); }, b.xi};
  GSectionField ff = dorfman(form1, form2, c, h, order);

  for (const Vec& p : pts) {
    linalg::GVector jac_res = lhs.at(p) - rhs1.at(p) - rhs2.at(p);
    rep.jacobi = std::max(rep.jacobi, jac_res.max_abs());

    linalg::GVector leib = afb.at(p) - f(p) * ab.at(p) - xaf(p) * b.at(p);
    rep.leibniz = std::max(rep.leibniz, leib.max_abs());

    double inv = dpair(p) - linalg::pairing(ab.at(p), d.at(p)) - linalg::pairing(b.at(p), ad.at(p));
    rep.invariance = std::max(rep.invariance, std::abs(inv));

    linalg::GVector anomaly = aa.at(p);
    anomaly.xi -= gradient(xi_of_x, c, p, order);
    rep.skew_anomaly = std::max(rep.skew_anomaly, anomaly.max_abs());

    rep.oneform_bracket = std::max(rep.oneform_bracket, ff.at(p).max_abs());
  }
  if (h) rep.dH = d_threeform_residual(*h, c, pts, order);
  return rep;
}

// ---------------------------------------------------------------------------
// Memoization

MatField memoize(MatField f) {
  auto cache = std::make_shared<PointCache<Mat>>();
  return [cache, f](const Vec& p) { return cache->get_or(p, [&] { return f(p); }); };
}

}  // namespace gkflow::fields
