#include "gkflow/gcs.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace gkflow::gcs {

namespace {
const std::complex<double> kI(0.0, 1.0);

// Complex analogue of the real cyclic Schouten formula, for sigma = R + iM.
double schouten_square_complex_residual(const ComplexBivector& sigma, const Chart& c,
                                        const std::vector<Vec>& pts, int order) {
  const int n = c.dim;
  double worst = 0;
  for (const Vec& p : pts) {
    MatC s = sigma.at(p);
    std::vector<MatC> ds(n);
    for (int l = 0; l < n; ++l) {
      Mat dre = fields::partial(sigma.re, c, p, l, order);
      Mat dim = fields::partial(sigma.im, c, p, l, order);
      ds[l] = dre.cast<std::complex<double>>() + kI * dim;
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          std::complex<double> acc = 0;
          for (int l = 0; l < n; ++l)
            acc += s(i, l) * ds[l](j, k) + s(j, l) * ds[l](k, i) + s(k, l) * ds[l](i, j);
          worst = std::max(worst, std::abs(-2.0 * acc));
        }
  }
  return worst;
}

}  // namespace

fields::BivectorField HoloPoisson::q_block() const {
  fields::BivectorField im = sigma.im;
  return [im](const Vec& p) { return Mat(complexify::kBivectorBlockScale * im(p)); };
}

HoloPoissonReport validate_holo_poisson(const HoloPoisson& hp, const std::vector<Vec>& pts,
                                        int order) {
  HoloPoissonReport rep;
  const Chart& c = hp.chart;
  const int n = c.dim;
  fields::EndoField i_field = fields::memoize(hp.I);

  for (const Vec& p : pts) {
    Mat i = i_field(p);
    rep.i_square = std::max(rep.i_square, max_abs(Mat(i * i + Mat::Identity(n, n))));
    rep.type20 = std::max(rep.type20, complexify::type20_residual(i, hp.sigma.at(p)));
  }

  // Classical Nijenhuis tensor on constant coordinate fields:
  // N(X,Y) = [IX, IY] - I[IX, Y] - I[X, IY] - [X, Y] (the last term vanishes).
  for (int a = 0; a < n; ++a) {
    fields::VectorField ia = [i_field, a](const Vec& p) { return Vec(i_field(p).col(a)); };
    for (int b = a + 1; b < n; ++b) {
      fields::VectorField ib = [i_field, b](const Vec& p) { return Vec(i_field(p).col(b)); };
      fields::VectorField t1 = fields::lie_bracket(ia, ib, c, order);
      // [IX, e_b] and [e_a, IY] with constant second/first arguments:
      fields::VectorField eb = [n, b](const Vec&) {
        Vec v = Vec::Zero(n);
        v[b] = 1;
        return v;
      };
      fields::VectorField ea = [n, a](const Vec&) {
        Vec v = Vec::Zero(n);
        v[a] = 1;
        return v;
      };
      fields::VectorField t2 = fields::lie_bracket(ia, eb, c, order);
      fields::VectorField t3 = fields::lie_bracket(ea, ib, c, order);
      for (const Vec& p : pts) {
        Vec nij = t1(p) - i_field(p) * (t2(p) + t3(p));
        rep.nijenhuis_i = std::max(rep.nijenhuis_i, max_abs(nij));
      }
    }
  }

  rep.schouten = schouten_square_complex_residual(hp.sigma, c, pts, order);
  return rep;
}

GCStructure from_holo_poisson(const HoloPoisson& hp, const std::vector<Vec>* validate_pts,
                              double tol, int order) {
  if (validate_pts) {
    HoloPoissonReport rep = validate_holo_poisson(hp, *validate_pts, order);
    auto check = [tol](double r, const char* what) {
      if (!(r < tol)) {
        std::ostringstream msg;
        msg << "from_holo_poisson: invariant '" << what << "' violated, residual " << r
            << " (tolerance " << tol << ")";
        throw std::invalid_argument(msg.str());
      }
    };
    check(rep.i_square, "I^2 = -1");
    check(rep.nijenhuis_i, "Nijenhuis(I) = 0");
    check(rep.type20, "sigma type (2,0)");
    check(rep.schouten, "[sigma, sigma] = 0");
  }
  fields::EndoField i = hp.I;
  fields::BivectorField q = hp.q_block();
  const int n = hp.chart.dim;
  fields::GEndoField j = [i, q, n](const Vec& p) {
    Mat m = Mat::Zero(2 * n, 2 * n);
    Mat ip = i(p);
    m.topLeftCorner(n, n) = ip;
    m.topRightCorner(n, n) = q(p);
    m.bottomRightCorner(n, n) = -ip.transpose();
    return m;
  };
  return GCStructure{j, fields::ThreeFormField(), hp.chart};
}

GCStructure from_symplectic(const fields::TwoFormField& omega, const Chart& chart) {
  const int n = chart.dim;
  fields::GEndoField j = [omega, n](const Vec& p) {
    Mat w = omega(p);
    Eigen::FullPivLU<Mat> lu(w);
    if (!lu.isInvertible())
      throw std::domain_error("from_symplectic: degenerate 2-form at a sample point");
    Mat winv = lu.inverse();
    Mat m = Mat::Zero(2 * n, 2 * n);
    m.topRightCorner(n, n) = -winv;
    m.bottomLeftCorner(n, n) = w;
    return m;
  };
  return GCStructure{j, fields::ThreeFormField(), chart};
}

fields::BivectorField poisson_from_gcs(const GCStructure& g) {
  fields::GEndoField j = g.J;
  const int n = g.chart.dim;
  return [j, n](const Vec& p) { return Mat(j(p).topRightCorner(n, n)); };
}

double gen_nijenhuis(const GCStructure& g, const std::vector<Vec>& pts, int order) {
  const Chart& c = g.chart;
  const int n = c.dim;
  fields::GEndoField j = fields::memoize(g.J);
  const fields::ThreeFormField* h = g.twisted() ? &g.H : nullptr;

  std::vector<fields::GSectionField> frame;
  frame.reserve(2 * n);
  for (int a = 0; a < n; ++a) {
    Vec e = Vec::Zero(n);
    e[a] = 1;
    frame.push_back(fields::constant_section(linalg::GVector::vector(e)));
  }
  for (int a = 0; a < n; ++a) {
    Vec e = Vec::Zero(n);
    e[a] = 1;
    frame.push_back(fields::constant_section(linalg::GVector::covector(e)));
  }

  double worst = 0;
  for (size_t ia = 0; ia < frame.size(); ++ia) {
    fields::GSectionField jx = fields::apply_gendo(j, frame[ia]);
    for (size_t ib = ia + 1; ib < frame.size(); ++ib) {
      fields::GSectionField jy = fields::apply_gendo(j, frame[ib]);
      fields::GSectionField t1 = fields::courant_skew(jx, jy, c, h, order);
      fields::GSectionField t2 = fields::courant_skew(jx, frame[ib], c, h, order);
      fields::GSectionField t3 = fields::courant_skew(frame[ia], jy, c, h, order);
      fields::GSectionField t4 = fields::courant_skew(frame[ia], frame[ib], c, h, order);
      for (const Vec& p : pts) {
        Mat jp = j(p);
        Vec nij = t1.at(p).stacked() - jp * (t2.at(p).stacked() + t3.at(p).stacked()) -
                  t4.at(p).stacked();
        worst = std::max(worst, max_abs(nij));
      }
    }
  }
  return worst;
}

std::pair<double, double> groupoid_residual(const fields::EndoField& Ii,
                                            const fields::EndoField& Ij,
                                            const fields::BivectorField& q,
                                            const fields::TwoFormField& f,
                                            const std::vector<Vec>& pts) {
  double r1 = 0, r2 = 0;
  for (const Vec& p : pts) {
    Mat ii = Ii(p), ij = Ij(p), qp = q(p), fp = f(p);
    r1 = std::max(r1, max_abs(Mat(ij - ii - qp * fp)));
    r2 = std::max(r2, max_abs(Mat(fp * ij + ii.transpose() * fp)));
  }
  return {r1, r2};
}

double nlin_residual(const fields::TwoFormField& f, const fields::EndoField& i,
                     const fields::BivectorField& q, const std::vector<Vec>& pts) {
  double r = 0;
  for (const Vec& p : pts) {
    Mat fp = f(p), ip = i(p), qp = q(p);
    r = std::max(r, max_abs(Mat(fp * ip + ip.transpose() * fp + fp * qp * fp)));
  }
  return r;
}

GroupoidMorphism compose_morphisms(const GroupoidMorphism& fij, const GroupoidMorphism& fjk) {
  if (fij.target != fjk.source)
    throw std::invalid_argument("compose_morphisms: target of first must equal source of second (" +
                                fij.target + " vs " + fjk.source + ")");
  fields::TwoFormField a = fij.F, b = fjk.F;
  return {[a, b](const Vec& p) { return Mat(a(p) + b(p)); }, fij.source, fjk.target};
}

std::array<double, 3> automorphism_residual(const fields::Diffeo& phi,
                                            const fields::TwoFormField& b,
                                            const fields::EndoField& i,
                                            const fields::BivectorField& q,
                                            const std::vector<Vec>& pts) {
  fields::BivectorField q_phi = fields::pushforward_bivector(q, phi);
  fields::EndoField i_phi = fields::pushforward_endo(i, phi);
  std::array<double, 3> r{0, 0, 0};
  for (const Vec& p : pts) {
    Mat qp = q(p), bp = b(p), ipp = i_phi(p);
    r[0] = std::max(r[0], max_abs(Mat(q_phi(p) - qp)));
    r[1] = std::max(r[1], max_abs(Mat(ipp - i(p) - qp * bp)));
    r[2] = std::max(r[2], max_abs(Mat(bp * ipp + i(p).transpose() * bp)));
  }
  return r;
}

PoincareLelong poincare_lelong(const GCStructure& g, const fields::ScalarField& s_abs,
                               int order) {
  const Chart c = g.chart;
  fields::ScalarField logs = [s_abs](const Vec& p) {
    double s = s_abs(p);
    if (!(s > 0.0)) throw std::domain_error("poincare_lelong: |s| must be positive on the chart");
    return std::log(s);
  };
  fields::OneFormField dlogs = fields::ext_d(logs, c, order);
  const int n = c.dim;
  fields::GSectionField dlog_section{
      [n](const Vec&) { return Vec(Vec::Zero(n)); }, dlogs};
  fields::GSectionField a = fields::apply_gendo(g.J, dlog_section);
  return {a, a.v};
}

fields::OneFormField module_transport(const fields::OneFormField& a,
                                      const fields::VectorField& x,
                                      const fields::TwoFormField& f) {
  return [a, x, f](const Vec& p) { return Vec(a(p) + f(p) * x(p)); };
}

std::pair<double, double> poisson_module_residual(const HoloPoisson& hp,
                                                  const fields::VectorField& x,
                                                  const fields::TwoFormField* f0,
                                                  const std::vector<Vec>& pts, int order) {
  const Chart& c = hp.chart;
  fields::EndoField lxi = fields::lie_endo(x, hp.I, c, order);
  fields::BivectorField lxq = fields::lie_bivector(x, hp.q_block(), c, order);

  double r1 = 0, r2 = 0;
  for (const Vec& p : pts) {
    Mat i = hp.I(p);
    MatC p10 = complexify::holo_projector(i);
    MatC p01 = complexify::antiholo_projector(i);
    // dbar X^{1,0} as the mixed block -(i/2) P^{1,0} (L_X I) P^{0,1}.
    MatC dbar = -0.5 * kI * p10 * lxi(p).cast<std::complex<double>>() * p01;
    MatC rhs = MatC::Zero(c.dim, c.dim);
    if (f0) rhs = -hp.sigma.at(p) * (*f0)(p).cast<std::complex<double>>() * p01;
    r1 = std::max(r1, max_abs(MatC(dbar - rhs)));
    r2 = std::max(r2, max_abs(lxq(p)));
  }
  return {r1, r2};
}

}  // namespace gkflow::gcs
