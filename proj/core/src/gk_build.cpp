#include "gkflow/gk_build.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "gkflow/complexify.hpp"

namespace gkflow::gk {

namespace {

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

std::string point_str(const Vec& p) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p(i);
  os << ")";
  return os.str();
}

// Unshear-conjugated "middle" matrices of the pair; sign -1 gives the A
// structure (difference form), +1 the B structure (sum form).
Mat middle_matrix(const Mat& i, const Mat& j, const Mat& g, int sign) {
  const int n = i.rows();
  Mat ginv = g.inverse();
  // w_I^{-1} = (gI)^{-1} = -I g^{-1} since I^2 = -1.
  Mat wi_inv = -i * ginv, wj_inv = -j * ginv;
  Mat wi = g * i, wj = g * j;
  Mat m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = j + sign * i;
  m.topRightCorner(n, n) = -(wj_inv - sign * wi_inv);
  m.bottomLeftCorner(n, n) = wj - sign * wi;
  m.bottomRightCorner(n, n) = -(j.transpose() + sign * i.transpose());
  return 0.5 * m;
}

}  // namespace

GKPair gk_from_solution(const BraneSolution& s, const std::vector<Vec>& pts, double check_tol,
                        GKBuildReport* report) {
  if (pts.empty()) throw std::invalid_argument("gk_from_solution: no sample points");
  const int n = s.chart.dim;
  GKBuildReport rep;
  rep.min_eigenvalue = std::numeric_limits<double>::infinity();
  Mat id = Mat::Identity(n, n);
  for (const Vec& p : pts) {
    Mat i = s.I(p), j = s.J(p), q = s.Q(p), f = s.F(p);
    rep.groupoid_linear = std::max(rep.groupoid_linear, max_abs(j - i - q * f));
    rep.groupoid_postcd = std::max(rep.groupoid_postcd, max_abs(f * j + i.transpose() * f));
    rep.square_residual = std::max({rep.square_residual, max_abs(i * i + id), max_abs(j * j + id)});
    Mat graw = -0.5 * f * (i + j);
    Mat braw = -0.5 * f * (j - i);
    rep.g_asymmetry = std::max(rep.g_asymmetry, max_abs(graw - graw.transpose()));
    rep.b_symmetry = std::max(rep.b_symmetry, max_abs(braw + braw.transpose()));
    Mat gsym = 0.5 * (graw + graw.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(gsym);
    double lo = es.eigenvalues().minCoeff();
    if (lo < rep.min_eigenvalue) {
      rep.min_eigenvalue = lo;
      rep.worst_point = p;
    }
  }
  if (report) *report = rep;
  if (rep.square_residual > check_tol)
    throw std::invalid_argument("gk_from_solution: I or J fails to square to -1 (residual " +
                                std::to_string(rep.square_residual) + ")");
  if (rep.groupoid_linear > check_tol || rep.groupoid_postcd > check_tol)
    throw std::invalid_argument(
        "gk_from_solution: (I, J, Q, F) does not solve the coupled system (residuals " +
        std::to_string(rep.groupoid_linear) + ", " + std::to_string(rep.groupoid_postcd) + ")");
  if (!(rep.min_eigenvalue > 0.0))
    throw std::domain_error("gk_from_solution: F is not positive; g has eigenvalue " +
                            std::to_string(rep.min_eigenvalue) + " at " +
                            point_str(rep.worst_point));

  GKPair pair;
  pair.chart = s.chart;
  pair.I = s.I;
  pair.J = s.J;
  pair.F = s.F;
  auto sI = s.I, sJ = s.J, sF = s.F;
  pair.g = [sI, sJ, sF](const Vec& p) -> Mat {
    Mat graw = -0.5 * sF(p) * (sI(p) + sJ(p));
    return 0.5 * (graw + graw.transpose());
  };
  pair.b = [sI, sJ, sF](const Vec& p) -> Mat {
    Mat braw = -0.5 * sF(p) * (sJ(p) - sI(p));
    return 0.5 * (braw - braw.transpose());
  };
  auto gf = fields::memoize(pair.g);
  auto bf = fields::memoize(pair.b);
  pair.JA = [sI, sJ, gf, bf](const Vec& p) -> Mat {
    Mat b = bf(p);
    return linalg::shear(b) * middle_matrix(sI(p), sJ(p), gf(p), -1) * linalg::shear(-b);
  };
  pair.JB = [sI, sJ, gf, bf](const Vec& p) -> Mat {
    Mat b = bf(p);
    return linalg::shear(b) * middle_matrix(sI(p), sJ(p), gf(p), +1) * linalg::shear(-b);
  };
  return pair;
}

BraneSolution solution_from_gk(const fields::MatField& g, const fields::EndoField& i,
                               const fields::EndoField& j, const Chart& chart,
                               const std::vector<Vec>& pts, double cond_tol) {
  for (const Vec& p : pts) {
    Mat sum = i(p) + j(p);
    Eigen::FullPivLU<Mat> lu(sum);
    if (!lu.isInvertible() || 1.0 / lu.rcond() > cond_tol)
      throw std::domain_error("solution_from_gk: I + J is singular near " + point_str(p));
  }
  BraneSolution out;
  out.chart = chart;
  out.I = i;
  out.J = j;
  out.F = [g, i, j](const Vec& p) -> Mat {
    return -2.0 * g(p) * Mat((i(p) + j(p)).inverse());
  };
  out.Q = [g, i, j](const Vec& p) -> Mat {
    Mat ip = i(p), jp = j(p);
    return 0.5 * (ip * jp - jp * ip) * g(p).inverse();
  };
  return out;
}

double ja_symplectic_residual(const GKPair& p, const std::vector<Vec>& pts) {
  const int n = p.chart.dim;
  double worst = 0.0;
  for (const Vec& pt : pts) {
    Mat f = p.F(pt);
    Mat ja(2 * n, 2 * n);
    ja.setZero();
    ja.topRightCorner(n, n) = -f.inverse();
    ja.bottomLeftCorner(n, n) = f;
    worst = std::max(worst, max_abs(p.JA(pt) - ja));
  }
  return worst;
}

double eigenbundle_residual(const GKPair& p, const std::vector<Vec>& pts) {
  const int n = p.chart.dim;
  const std::complex<double> im(0.0, 1.0);
  double worst = 0.0;
  for (const Vec& pt : pts) {
    MatC ja = p.JA(pt).cast<std::complex<double>>();
    MatC jb = p.JB(pt).cast<std::complex<double>>();
    MatC f = p.F(pt).cast<std::complex<double>>();
    // L_+ from T^{1,0}_J with -iF, eigenvalue +i for both structures;
    // L_- from T^{1,0}_I with +iF, eigenvalue +i for B and -i for A.
    for (int side = 0; side < 2; ++side) {
      MatC frame = complexify::holo_frame(side == 0 ? p.J(pt) : p.I(pt));
      double fa = side == 0 ? -1.0 : 1.0;
      double ea = side == 0 ? 1.0 : -1.0;
      for (int c = 0; c < frame.cols(); ++c) {
        VecC x = frame.col(c);
        VecC v(2 * n);
        v.head(n) = x;
        v.tail(n) = fa * im * (f * x);
        double scale = v.norm();
        worst = std::max(worst, (jb * v - im * v).norm() / scale);
        worst = std::max(worst, (ja * v - ea * im * v).norm() / scale);
      }
    }
  }
  return worst;
}

CharacterizationInput characterization_input(const GKPair& p, int order) {
  auto gI = p.I, gJ = p.J, gg = fields::memoize(p.g);
  CharacterizationInput out;
  fields::ThreeFormField h = fields::ext_d_twoform(p.b, p.chart, order);
  out.ja.J = [gI, gJ, gg](const Vec& q) { return middle_matrix(gI(q), gJ(q), gg(q), -1); };
  out.jb.J = [gI, gJ, gg](const Vec& q) { return middle_matrix(gI(q), gJ(q), gg(q), +1); };
  out.ja.H = h;
  out.jb.H = h;
  out.ja.chart = p.chart;
  out.jb.chart = p.chart;
  out.metric.g = gg;
  out.metric.H = h;
  out.metric.chart = p.chart;
  return out;
}

// ---------------------------------------------------------------------------
// Flow construction.

std::pair<double, double> validate_flow_input(const FlowInput& in, const std::vector<Vec>& pts,
                                              int order) {
  fields::BivectorField lq = fields::lie_bivector(in.X, in.Q, in.chart, order);
  fields::EndoField li = fields::lie_endo(in.X, in.I0, in.chart, order);
  double r_q = 0.0, r_i = 0.0;
  for (const Vec& p : pts) {
    r_q = std::max(r_q, max_abs(lq(p)));
    r_i = std::max(r_i, max_abs(li(p) - in.Q(p) * in.F0(p)));
  }
  return {r_q, r_i};
}

struct TrajectoryEngine::Series {
  std::vector<State> states;
};

TrajectoryEngine::TrajectoryEngine(FlowInput in, double dt, int total_steps, int order)
    : in_(std::move(in)),
      dt_(dt),
      total_steps_(total_steps),
      order_(order),
      cache_(std::make_shared<fields::PointCache<std::shared_ptr<const Series>>>()) {
  if (dt_ <= 0.0 || total_steps_ < 0)
    throw std::invalid_argument("TrajectoryEngine: need dt > 0 and total_steps >= 0");
}

std::shared_ptr<const TrajectoryEngine::Series> TrajectoryEngine::series(const Vec& p) const {
  return cache_->get_or(p, [&]() -> std::shared_ptr<const Series> {
    const int n = in_.chart.dim;
    auto out = std::make_shared<Series>();
    out->states.reserve(total_steps_ + 1);
    Vec x = in_.chart.wrap(p);
    Mat jac = Mat::Identity(n, n);
    std::vector<Mat> integrand;
    integrand.reserve(total_steps_ + 1);
    Mat even_acc = Mat::Zero(n, n);  // Simpson total over the even prefix
    auto f_of = [&](const Vec& xx, const Mat& jj) -> Mat {
      return jj.transpose() * in_.F0(xx) * jj;
    };
    integrand.push_back(f_of(x, jac));
    out->states.push_back({x, jac, Mat::Zero(n, n)});
    for (int k = 1; k <= total_steps_; ++k) {
      // RK4 on the coupled system x' = X(x), J' = DX(x) J.
      auto rhs = [&](const Vec& xx, const Mat& jj, Vec& dx, Mat& dj) {
        dx = in_.X(xx);
        dj = fields::jacobian(in_.X, in_.chart, xx, order_) * jj;
      };
      Vec k1x, k2x, k3x, k4x;
      Mat k1j, k2j, k3j, k4j;
      rhs(x, jac, k1x, k1j);
      rhs(in_.chart.wrap(x + 0.5 * dt_ * k1x), jac + 0.5 * dt_ * k1j, k2x, k2j);
      rhs(in_.chart.wrap(x + 0.5 * dt_ * k2x), jac + 0.5 * dt_ * k2j, k3x, k3j);
      rhs(in_.chart.wrap(x + dt_ * k3x), jac + dt_ * k3j, k4x, k4j);
      x = in_.chart.wrap(x + (dt_ / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x));
      jac += (dt_ / 6.0) * (k1j + 2.0 * k2j + 2.0 * k3j + k4j);
      if (!in_.chart.contains(x, 0.0))
        throw ChartError("flow trajectory left the chart at t = " + std::to_string(k * dt_) +
                         ", point " + point_str(x));
      integrand.push_back(f_of(x, jac));
      Mat acc;
      if (k % 2 == 0) {
        even_acc += (dt_ / 3.0) * (integrand[k - 2] + 4.0 * integrand[k - 1] + integrand[k]);
        acc = even_acc;
      } else {
        acc = even_acc + 0.5 * dt_ * (integrand[k - 1] + integrand[k]);
      }
      out->states.push_back({x, jac, acc});
    }
    return out;
  });
}

TrajectoryEngine::State TrajectoryEngine::at(const Vec& p, int step) const {
  if (step < 0 || step > total_steps_)
    throw std::invalid_argument("TrajectoryEngine: step out of range");
  return series(p)->states[static_cast<size_t>(step)];
}

namespace {

FlowState make_state(const std::shared_ptr<TrajectoryEngine>& eng, int step) {
  const FlowInput& in = eng->input();
  const int n = in.chart.dim;
  double t = step * eng->dt();
  FlowState st;
  st.t = t;
  st.phi.value = [eng, step](const Vec& p) { return eng->at(p, step).x; };
  st.phi.jac = [eng, step](const Vec& p) { return eng->at(p, step).jac; };
  fields::EndoField i0 = in.I0;
  fields::TwoFormField f0 = in.F0;
  st.I_t = [eng, step, i0, n](const Vec& p) -> Mat {
    auto s = eng->at(p, step);
    Eigen::FullPivLU<Mat> lu(s.jac);
    if (!lu.isInvertible())
      throw std::domain_error("flow Jacobian became singular; cannot transport tensors");
    return lu.solve(i0(s.x)) * s.jac;  // J^{-1} I0(x) J
  };
  st.F_t = [eng, step, f0](const Vec& p) -> Mat {
    auto s = eng->at(p, step);
    return s.jac.transpose() * f0(s.x) * s.jac;
  };
  st.G_t = [eng, step](const Vec& p) -> Mat { return eng->at(p, step).acc; };
  if (step == 0) {
    st.Fbar_t = in.F0;
  } else {
    st.Fbar_t = [eng, step, t](const Vec& p) -> Mat { return eng->at(p, step).acc / t; };
  }
  return st;
}

void fill_residuals(FlowState& st, const FlowInput& in, const std::vector<Vec>& pts, int order) {
  st.positivity_margin = std::numeric_limits<double>::infinity();
  fields::ThreeFormField df = fields::ext_d_twoform(st.F_t, in.chart, order);
  for (const Vec& p : pts) {
    Mat i0 = in.I0(p), it = st.I_t(p), q = in.Q(p), g = st.G_t(p), f = st.F_t(p);
    Mat fbar = st.Fbar_t(p);
    st.r1 = std::max(st.r1, (it - i0 - q * g).cwiseAbs().maxCoeff());
    st.r2 = std::max(st.r2, (g * it + i0.transpose() * g).cwiseAbs().maxCoeff());
    st.type11 = std::max(st.type11, (f * it + it.transpose() * f).cwiseAbs().maxCoeff());
    fields::Alt3 dfp = df(p);
    double worst = 0.0;
    const int n = in.chart.dim;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c) worst = std::max(worst, std::abs(dfp(a, b, c)));
    st.dF_residual = std::max(st.dF_residual, worst);
    Mat gt = -0.5 * fbar * (i0 + it);
    Eigen::SelfAdjointEigenSolver<Mat> es(Mat(0.5 * (gt + gt.transpose())));
    st.positivity_margin = std::min(st.positivity_margin, es.eigenvalues().minCoeff());
  }
}

}  // namespace

std::vector<FlowState> run_flow(const FlowInput& in, const FlowConfig& cfg) {
  if (cfg.sample_pts.empty())
    throw std::invalid_argument("run_flow: FlowConfig.sample_pts must be non-empty");
  auto [rq, ri] = validate_flow_input(in, cfg.sample_pts, cfg.order);
  if (rq > cfg.validate_tol || ri > cfg.validate_tol)
    throw std::invalid_argument("run_flow: input fails the module equations (||L_X Q|| = " +
                                std::to_string(rq) + ", ||L_X I0 - QF0|| = " + std::to_string(ri) +
                                ")");
  int total = static_cast<int>(std::lround(cfg.t_max / cfg.dt));
  if (total < 1 || std::abs(total * cfg.dt - cfg.t_max) > 1e-9 * std::max(1.0, cfg.t_max))
    throw std::invalid_argument("run_flow: t_max must be a positive multiple of dt");
  auto eng = std::make_shared<TrajectoryEngine>(in, cfg.dt, total, cfg.order);
  int outputs = std::max(1, cfg.outputs);
  std::vector<FlowState> out;
  int prev = 0;
  for (int i = 1; i <= outputs; ++i) {
    int step = static_cast<int>(std::lround(static_cast<double>(i) * total / outputs));
    if (step <= prev) continue;
    prev = step;
    FlowState st = make_state(eng, step);
    fill_residuals(st, in, cfg.sample_pts, cfg.order);
    out.push_back(std::move(st));
  }
  return out;
}

BraneSolution family_solution(const FlowInput& in, const FlowConfig& cfg, double t) {
  int step = static_cast<int>(std::lround(t / cfg.dt));
  if (step < 1 || std::abs(step * cfg.dt - t) > 1e-9 * std::max(1.0, t))
    throw std::invalid_argument("family_solution: t must be a positive multiple of dt");
  auto eng = std::make_shared<TrajectoryEngine>(in, cfg.dt, step, cfg.order);
  FlowState st = make_state(eng, step);
  BraneSolution s;
  s.chart = in.chart;
  s.I = in.I0;
  s.J = st.I_t;
  fields::BivectorField q0 = in.Q;
  s.Q = [q0, t](const Vec& p) -> Mat { return t * q0(p); };
  s.F = st.Fbar_t;
  return s;
}

GKPair gk_family(const FlowInput& in, const FlowConfig& cfg, double t, double check_tol,
                 GKBuildReport* report) {
  return gk_from_solution(family_solution(in, cfg, t), cfg.sample_pts, check_tol, report);
}

}  // namespace gkflow::gk
