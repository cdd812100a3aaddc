#include "gkflow/metric_bismut.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <string>

#include "gkflow/complexify.hpp"

namespace gkflow::bismut {

namespace {

using fields::Alt3;
using fields::GSectionField;
using linalg::GVector;

double gnorm(const GVector& a) { return a.stacked().norm(); }

// Constant coordinate frame of T + T*: e_A = dx-axis A < n, basis covector
// for A >= n.
GVector frame_vector(int n, int a) {
  Vec u = Vec::Zero(n);
  u(a % n) = 1.0;
  return a < n ? GVector::vector(u) : GVector::covector(u);
}

// Full connection coefficients C[k](i, j) multiplying X^i Y^j: Levi-Civita
// plus sign/2 * g^{kl} H_{ijl}.
std::vector<Mat> conn_coeffs(const GMetricField& m, const Vec& p, int sign, int order) {
  std::vector<Mat> c = christoffels(m.g, m.chart, p, order);
  if (sign != 0 && m.twisted()) {
    const int n = m.chart.dim;
    Mat ginv = m.g(p).inverse();
    Alt3 h = m.H(p);
    for (int k = 0; k < n; ++k) {
      Mat corr = Mat::Zero(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) s += ginv(k, l) * h(i, j, l);
          corr(i, j) = s;
        }
      c[k] += 0.5 * sign * corr;
    }
  }
  return c;
}

Vec nabla_vec_coeffs(const std::vector<Mat>& c, const fields::VectorField& y, const Chart& chart,
                     const Vec& x, const Vec& p, int order) {
  Vec out = fields::jacobian(y, chart, p, order) * x;
  for (int k = 0; k < chart.dim; ++k) out(k) += x.dot(c[k] * y(p));
  return out;
}

Vec nabla_oneform_coeffs(const std::vector<Mat>& c, const fields::OneFormField& eta,
                         const Chart& chart, const Vec& x, const Vec& p, int order) {
  Vec out = fields::jacobian(eta, chart, p, order) * x;
  Vec ev = eta(p);
  for (int k = 0; k < chart.dim; ++k) out -= ev(k) * (x.transpose() * c[k]).transpose();
  return out;
}

struct MatrixPathData {
  GMetricField m;
  int order;
  fields::PointCache<std::vector<Mat>> gamma;  // Levi-Civita coefficients
  fields::PointCache<Mat> ginv;
};

}  // namespace

double GMetricField::closedness_residual(const std::vector<Vec>& pts, int order) const {
  if (!twisted()) return 0.0;
  return fields::d_threeform_residual(H, chart, pts, order);
}

std::vector<Mat> christoffels(const fields::MatField& g, const Chart& c, const Vec& p, int order) {
  const int n = c.dim;
  std::vector<Mat> dg(n);
  for (int a = 0; a < n; ++a) dg[a] = fields::partial(g, c, p, a, order);
  Mat ginv = g(p).inverse();
  std::vector<Mat> gamma(n, Mat::Zero(n, n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += ginv(k, l) * (dg[i](l, j) + dg[j](i, l) - dg[l](i, j));
        gamma[k](i, j) = 0.5 * s;
      }
  return gamma;
}

Vec nabla_vec(const GMetricField& m, const fields::VectorField& y, const Vec& x, const Vec& p,
              int sign, int order) {
  return nabla_vec_coeffs(conn_coeffs(m, p, sign, order), y, m.chart, x, p, order);
}

Vec nabla_oneform(const GMetricField& m, const fields::OneFormField& eta, const Vec& x,
                  const Vec& p, int sign, int order) {
  return nabla_oneform_coeffs(conn_coeffs(m, p, sign, order), eta, m.chart, x, p, order);
}

double metricity_residual(const GMetricField& m, const std::vector<Vec>& pts, int sign,
                          int order) {
  const int n = m.chart.dim;
  double worst = 0.0;
  for (const Vec& p : pts) {
    std::vector<Mat> c = conn_coeffs(m, p, sign, order);
    Mat gv = m.g(p);
    for (int a = 0; a < n; ++a) {
      // (nabla_a g)_{ij} = d_a g_{ij} - C^k_{ai} g_{kj} - C^k_{aj} g_{ik}
      Mat dg = fields::partial(m.g, m.chart, p, a, order);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double r = dg(i, j);
          for (int k = 0; k < n; ++k) r -= c[k](a, i) * gv(k, j) + c[k](a, j) * gv(i, k);
          worst = std::max(worst, std::abs(r));
        }
    }
  }
  return worst;
}

double bismut_torsion_residual(const GMetricField& m, const std::vector<Vec>& pts, int sign,
                               int order) {
  const int n = m.chart.dim;
  double worst = 0.0;
  for (const Vec& p : pts) {
    std::vector<Mat> c = conn_coeffs(m, p, sign, order);
    Mat gv = m.g(p);
    Alt3 h = m.twisted() ? m.H(p) : Alt3(n);
    // Coordinate fields commute, so T(e_i, e_j) = C(e_i, e_j) - C(e_j, e_i).
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          double t = 0.0;
          for (int k = 0; k < n; ++k) t += gv(l, k) * (c[k](i, j) - c[k](j, i));
          worst = std::max(worst, std::abs(t - sign * h(i, j, l)));
        }
  }
  return worst;
}

GenConnection gen_bismut_matrix(const GMetricField& m, int order) {
  auto data = std::make_shared<MatrixPathData>();
  data->m = m;
  data->order = order;
  GenConnection d;
  d.method = "matrix";
  d.eval = [data](const GSectionField& z, const GSectionField& w, const Vec& p) -> GVector {
    const GMetricField& m = data->m;
    const int ord = data->order;
    Vec x = z.v(p);
    std::vector<Mat> gamma =
        data->gamma.get_or(p, [&] { return conn_coeffs(m, p, 0, ord); });
    Vec vec_part = nabla_vec_coeffs(gamma, w.v, m.chart, x, p, ord);
    Vec form_part = nabla_oneform_coeffs(gamma, w.xi, m.chart, x, p, ord);
    if (m.twisted()) {
      Mat ixh = m.H(p).interior(x);  // mat(i_X H)
      Mat ginv = data->ginv.get_or(p, [&] { return Mat(m.g(p).inverse()); });
      vec_part += 0.5 * ginv * ixh * ginv * w.xi(p);
      form_part += 0.5 * ixh * w.v(p);
    }
    return GVector(vec_part, form_part);
  };
  return d;
}

GenConnection gen_bismut_bracket(const GMetricField& m, int order) {
  auto gm = std::make_shared<GMetricField>(m);
  GenConnection d;
  d.method = "bracket";
  d.eval = [gm, order](const GSectionField& z, const GSectionField& w, const Vec& p) -> GVector {
    // Sign +1 selects the C_+ component, -1 the C_- component; twist applies
    // the anti-involution C to the projected part (C swaps C_+ and C_-, and
    // Z_- + C(Z_+) = 0 for covectors, which is what kills the T* directions).
    auto proj = [gm](const GSectionField& s, int pm, bool twist) -> GSectionField {
      GSectionField out;
      auto part = [gm, s, pm, twist](const Vec& q) -> GVector {
        auto [plus, minus] = linalg::project_pm(s.at(q), gm->fiber(q));
        GVector sel = pm > 0 ? plus : minus;
        return twist ? linalg::anti_involution(sel) : sel;
      };
      out.v = [part](const Vec& q) { return part(q).v; };
      out.xi = [part](const Vec& q) { return part(q).xi; };
      return out;
    };
    const fields::ThreeFormField* h = gm->twisted() ? &gm->H : nullptr;
    GSectionField zm = proj(z, -1, false), zp = proj(z, +1, false);
    GSectionField czm = proj(z, -1, true), czp = proj(z, +1, true);
    GSectionField wp = proj(w, +1, false), wm = proj(w, -1, false);
    linalg::GMetricFiber fib = gm->fiber(p);
    auto bracket_part = [&](const GSectionField& a, const GSectionField& b, int pm) -> GVector {
      GVector val = fields::dorfman(a, b, gm->chart, h, order).at(p);
      auto [plus, minus] = linalg::project_pm(val, fib);
      return pm > 0 ? plus : minus;
    };
    return bracket_part(zm, wp, +1) + bracket_part(zp, wm, -1) + bracket_part(czm, wm, -1) +
           bracket_part(czp, wp, +1);
  };
  return d;
}

double two_path_discrepancy(const GMetricField& m, const std::vector<Vec>& pts, int order) {
  const int n = m.chart.dim;
  GenConnection dm = gen_bismut_matrix(m, order);
  GenConnection db = gen_bismut_bracket(m, order);
  double worst = 0.0;
  for (int a = 0; a < 2 * n; ++a) {
    GSectionField za = fields::constant_section(frame_vector(n, a));
    for (int b = 0; b < 2 * n; ++b) {
      GSectionField wb = fields::constant_section(frame_vector(n, b));
      for (const Vec& p : pts)
        worst = std::max(worst, gnorm(dm.eval(za, wb, p) - db.eval(za, wb, p)));
    }
  }
  return worst;
}

double torsion_component(const GenConnection& d, const GMetricField& m, const GVector& a,
                         const GVector& b, const GVector& c, const Vec& p, int order) {
  GSectionField fa = fields::constant_section(a);
  GSectionField fb = fields::constant_section(b);
  GSectionField fc = fields::constant_section(c);
  const fields::ThreeFormField* h = m.twisted() ? &m.H : nullptr;
  GVector sk = fields::courant_skew(fa, fb, m.chart, h, order).at(p);
  double t = linalg::pairing(d.eval(fa, fb, p) - d.eval(fb, fa, p) - sk, c) +
             0.5 * (linalg::pairing(d.eval(fc, fa, p), b) - linalg::pairing(d.eval(fc, fb, p), a));
  return kTorsionPairingScale * t;
}

Alt3 torsion_tensor(const GenConnection& d, const GMetricField& m, const Vec& p, int order) {
  const int n = m.chart.dim;
  const int dim = 2 * n;
  const fields::ThreeFormField* h = m.twisted() ? &m.H : nullptr;
  std::vector<GSectionField> frame(dim);
  std::vector<GVector> fval(dim);
  for (int a = 0; a < dim; ++a) {
    fval[a] = frame_vector(n, a);
    frame[a] = fields::constant_section(fval[a]);
  }
  std::vector<std::vector<GVector>> dv(dim, std::vector<GVector>(dim, GVector::zero(n)));
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) dv[a][b] = d.eval(frame[a], frame[b], p);
  std::vector<std::vector<GVector>> sk(dim, std::vector<GVector>(dim, GVector::zero(n)));
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b)
      sk[a][b] = fields::courant_skew(frame[a], frame[b], m.chart, h, order).at(p);
  Alt3 t(dim);
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b)
      for (int c = b + 1; c < dim; ++c) {
        double val =
            linalg::pairing(dv[a][b] - dv[b][a] - sk[a][b], fval[c]) +
            0.5 * (linalg::pairing(dv[c][a], fval[b]) - linalg::pairing(dv[c][b], fval[a]));
        t.set(a, b, c, kTorsionPairingScale * val);
      }
  return t;
}

Alt3 torsion_expected(const GMetricField& m, const Vec& p) {
  const int n = m.chart.dim;
  const int dim = 2 * n;
  Alt3 t(dim);
  if (!m.twisted()) return t;
  Alt3 h = m.H(p);
  linalg::GMetricFiber fib = m.fiber(p);
  std::vector<Vec> plus(dim), minus(dim);
  for (int a = 0; a < dim; ++a) {
    auto [pa, ma] = linalg::project_pm(frame_vector(n, a), fib);
    plus[a] = pa.v;
    minus[a] = ma.v;
  }
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b)
      for (int c = b + 1; c < dim; ++c)
        t.set(a, b, c, h.contract(plus[a], plus[b], plus[c]) +
                           h.contract(minus[a], minus[b], minus[c]));
  return t;
}

double torsion_skewness_residual(const GenConnection& d, const GMetricField& m,
                                 const std::vector<Vec>& pts, int order) {
  const int n = m.chart.dim;
  const int dim = 2 * n;
  double worst = 0.0;
  for (const Vec& p : pts)
    for (int a = 0; a < dim; ++a)
      for (int b = a + 1; b < dim; ++b) {
        GVector ea = frame_vector(n, a), eb = frame_vector(n, b);
        // Pick a third leg distinct from both.
        GVector ec = frame_vector(n, (b + 1) % dim);
        double t1 = torsion_component(d, m, ea, eb, ec, p, order);
        double t2 = torsion_component(d, m, eb, ea, ec, p, order);
        worst = std::max(worst, std::abs(t1 + t2));
      }
  return worst;
}

double torsion_mixed_residual(const GenConnection& d, const GMetricField& m,
                              const std::vector<Vec>& pts, int order) {
  const int n = m.chart.dim;
  const int dim = 2 * n;
  double worst = 0.0;
  for (const Vec& p : pts) {
    linalg::GMetricFiber fib = m.fiber(p);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b)
        for (int c = 0; c < dim; ++c) {
          auto [pa, ma] = linalg::project_pm(frame_vector(n, a), fib);
          auto [pb, mb] = linalg::project_pm(frame_vector(n, b), fib);
          (void)ma;
          (void)pb;
          worst = std::max(
              worst, std::abs(torsion_component(d, m, pa, mb, frame_vector(n, c), p, order)));
        }
  }
  return worst;
}

std::pair<double, double> gk_characterization(const gcs::GCStructure& j, const GMetricField& m,
                                              const std::vector<Vec>& pts, int order,
                                              double ortho_tol) {
  const int n = m.chart.dim;
  const int dim = 2 * n;
  fields::GEndoField jf = fields::memoize(j.J);
  GenConnection d = gen_bismut_matrix(m, order);
  double r1 = 0.0, r2 = 0.0;
  std::vector<GSectionField> frame(dim);
  for (int a = 0; a < dim; ++a) frame[a] = fields::constant_section(frame_vector(n, a));
  for (const Vec& p : pts) {
    Mat jp = jf(p);
    Mat refl = m.fiber(p).reflection();
    double comm = (jp * refl - refl * jp).cwiseAbs().maxCoeff();
    if (comm > ortho_tol)
      throw std::invalid_argument(
          "gk_characterization: structure does not commute with the metric reflection "
          "(residual " +
          std::to_string(comm) + ")");
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        GSectionField jw = fields::apply_gendo(jf, frame[b]);
        GVector lhs = d.eval(frame[a], jw, p);
        GVector rhs = GVector::from_stacked(jp * d.eval(frame[a], frame[b], p).stacked());
        r1 = std::max(r1, gnorm(lhs - rhs));
      }
    // (3,0) + (0,3) torsion components in an eigenframe of J.
    Alt3 t = torsion_tensor(d, m, p, order);
    MatC ell = complexify::holo_frame(jp);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c) {
          std::complex<double> s = 0.0;
          for (int aa = 0; aa < dim; ++aa)
            for (int bb = 0; bb < dim; ++bb)
              for (int cc = 0; cc < dim; ++cc) {
                double tv = t(aa, bb, cc);
                if (tv != 0.0) s += tv * ell(aa, a) * ell(bb, b) * ell(cc, c);
              }
          r2 = std::max(r2, std::abs(s));
        }
  }
  return {r1, r2};
}

}  // namespace gkflow::bismut
