#pragma once

// Assembly of generalized Kahler pairs from brane solutions (I, J, Q, F),
// the converse extraction from bi-Hermitian data, and the flow construction
// producing one-parameter families of such solutions from a holomorphic
// Poisson module datum (I_0, Q, F_0, X).

#include <memory>
#include <utility>
#include <vector>

#include "gkflow/fields.hpp"
#include "gkflow/gcs.hpp"
#include "gkflow/metric_bismut.hpp"

namespace gkflow::gk {

// A solution of the coupled system  J - I = QF,  FJ + I^T F = 0  with F
// closed and Q holomorphic Poisson for both complex structures.
struct BraneSolution {
  fields::EndoField I;
  fields::EndoField J;
  fields::BivectorField Q;
  fields::TwoFormField F;
  Chart chart;
};

// A generalized Kahler pair together with its bi-Hermitian presentation.
struct GKPair {
  fields::GEndoField JA;
  fields::GEndoField JB;
  fields::MatField g;   // symmetric metric
  fields::MatField b;   // 2-form separating the two trivializations
  fields::EndoField I;
  fields::EndoField J;
  fields::TwoFormField F;
  Chart chart;
};

// Residual checks bundled by the constructors: each is a max over sample
// points; see gk_from_solution.
struct GKBuildReport {
  double groupoid_linear = 0.0;   // ||J - I - QF||
  double groupoid_postcd = 0.0;   // ||FJ + I^T F||
  double square_residual = 0.0;   // ||I^2 + 1||, ||J^2 + 1||
  double g_asymmetry = 0.0;       // symmetric part enforced, residual kept
  double b_symmetry = 0.0;        // skew part enforced, residual kept
  double min_eigenvalue = 0.0;    // of g over the sample points
  Vec worst_point;                // where min_eigenvalue is attained
};

// Builds the pair per
//   J_B = (1/2) e^{b} [[J + I, -(w_J^{-1} - w_I^{-1})], [w_J - w_I, -(J^T + I^T)]] e^{-b}
//   J_A = (1/2) e^{b} [[J - I, -(w_J^{-1} + w_I^{-1})], [w_J + w_I, -(J^T - I^T)]] e^{-b}
// with g = -(1/2) F (I + J), b = -(1/2) F (J - I), w_I = gI, w_J = gJ.
// Throws std::domain_error when g fails to be positive at a sample point
// (reporting the worst point and eigenvalue) and std::invalid_argument when
// the solution residuals exceed check_tol.
GKPair gk_from_solution(const BraneSolution& s, const std::vector<Vec>& pts,
                        double check_tol = 1e-8, GKBuildReport* report = nullptr);

// Converse: F = -2g(I + J)^{-1}, Q = (1/2)[I, J] g^{-1}.  Throws
// std::domain_error when I + J is singular at a sample point.
BraneSolution solution_from_gk(const fields::MatField& g, const fields::EndoField& i,
                               const fields::EndoField& j, const Chart& chart,
                               const std::vector<Vec>& pts, double cond_tol = 1e8);

// max ||J_A - [[0, -F^{-1}], [F, 0]]|| over the points (the pure-symplectic
// block identity).
double ja_symplectic_residual(const GKPair& p, const std::vector<Vec>& pts);

// max over points and holomorphic frame vectors of the eigen-equation
// residuals for L_+ = {X - iFX : X in T^{1,0}_J} under both (J_B - i) and
// (J_A - i), and L_- = {X + iFX : X in T^{1,0}_I} under (J_B - i), (J_A + i).
double eigenbundle_residual(const GKPair& p, const std::vector<Vec>& pts);

// Conversion to the metric splitting for the D J = 0 characterization: the
// shear by -b maps both structures to their middle matrices and shifts the
// (zero) twist of the standard bracket to H = db.
struct CharacterizationInput {
  gcs::GCStructure ja;
  gcs::GCStructure jb;
  bismut::GMetricField metric;
};
CharacterizationInput characterization_input(const GKPair& p, int order = 2);

// ---------------------------------------------------------------------------
// Flow construction.

// Input datum: complex structure I_0, real Poisson bivector Q of type (2,0),
// closed (1,1)-form F_0, and a vector field X solving the module equation
// L_X I_0 = Q F_0 with L_X Q = 0.
struct FlowInput {
  fields::EndoField I0;
  fields::BivectorField Q;
  fields::TwoFormField F0;
  fields::VectorField X;
  Chart chart;
};

struct FlowConfig {
  double dt = 1e-2;
  double t_max = 1.0;
  int outputs = 10;          // number of reported states after t = 0
  int order = 2;             // finite-difference order
  double validate_tol = 1e-4;
  std::vector<Vec> sample_pts;  // where residuals are evaluated
};

// (max ||L_X Q||, max ||L_X I0 - Q F0||) over the points.
std::pair<double, double> validate_flow_input(const FlowInput& in, const std::vector<Vec>& pts,
                                              int order = 2);

// Integrates trajectories of X together with the variational equation
// J' = DX(x) J (classical RK4) and accumulates G = Int_0^t J_s^T F0(x_s) J_s ds
// by composite Simpson on the step grid (trapezoid on an odd final interval).
// One forward trajectory per base point, cached; all transported tensors at a
// point share it.
class TrajectoryEngine {
 public:
  TrajectoryEngine(FlowInput in, double dt, int total_steps, int order);

  struct State {
    Vec x;
    Mat jac;
    Mat acc;  // accumulated integral of the pulled-back 2-form
  };

  // State of the trajectory from p after `step` steps (throws ChartError if
  // the trajectory leaves the chart).
  State at(const Vec& p, int step) const;
  double dt() const { return dt_; }
  int total_steps() const { return total_steps_; }
  const FlowInput& input() const { return in_; }

 private:
  FlowInput in_;
  double dt_;
  int total_steps_;
  int order_;
  struct Series;
  std::shared_ptr<fields::PointCache<std::shared_ptr<const Series>>> cache_;
  std::shared_ptr<const Series> series(const Vec& p) const;
};

// Transported tensors at output time index `step` (fields in the base point).
struct FlowState {
  double t = 0.0;
  fields::SmoothMap phi;        // p -> trajectory point and Jacobian at time t
  fields::EndoField I_t;        // pullback of I0 along phi_t
  fields::TwoFormField F_t;     // pullback of F0
  fields::TwoFormField G_t;     // accumulated integral of F_s
  fields::TwoFormField Fbar_t;  // G_t / t (F_0 at t = 0)
  double r1 = 0.0;              // ||I_t - I_0 - Q G_t||
  double r2 = 0.0;              // ||G_t I_t + I_0^T G_t||
  double type11 = 0.0;          // ||F_t I_t + I_t^T F_t||
  double dF_residual = 0.0;     // closedness of F_t
  double positivity_margin = 0.0;  // min eig of -(1/2) Fbar_t (I_0 + I_t)
};

// Runs the flow and reports states at cfg.outputs evenly spaced times in
// (0, t_max].  Re-checks validate_flow_input against cfg.validate_tol.
std::vector<FlowState> run_flow(const FlowInput& in, const FlowConfig& cfg);

// Brane solution of the family at time t = step * dt:
// (I, J, Q, F) = (I_0, I_t, tQ, Fbar_t).
BraneSolution family_solution(const FlowInput& in, const FlowConfig& cfg, double t);

// gk_from_solution of the family member at time t; positivity failures
// surface as std::domain_error from the constructor.
GKPair gk_family(const FlowInput& in, const FlowConfig& cfg, double t,
                 double check_tol = 1e-5, GKBuildReport* report = nullptr);

}  // namespace gkflow::gk
