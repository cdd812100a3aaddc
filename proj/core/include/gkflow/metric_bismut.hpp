#pragma once

// Generalized metrics (g, closed twist H, in the metric splitting b = 0),
// the generalized Bismut connection built two independent ways (Courant
// brackets + projections vs the explicit block matrix over Levi-Civita),
// its torsion, and the D J = 0 generalized Kahler characterization.

#include <utility>
#include <vector>

#include "gkflow/fields.hpp"
#include "gkflow/gcs.hpp"

namespace gkflow::bismut {

// The torsion formula pairs connection derivatives against sections three
// times; with the pairing normalized as <X+xi, Y+eta> = eta(X) + xi(Y)
// (no 1/2), the raw formula returns exactly twice the 3-form it should.
// This global scale restores T_D = pi_+^* H + pi_-^* H on the nose.  It is
// deliberately a build-time constant: flipping the pairing convention to the
// 1/2 one would flip this to 1.0.
inline constexpr double kTorsionPairingScale = 0.5;

// Generalized metric data in the metric splitting: positive g, closed H.
// General (g, b) inputs must be converted by the caller with a b-field shear
// (only closed b is admissible; the twist is then unchanged).
struct GMetricField {
  fields::MatField g;
  fields::ThreeFormField H;  // empty = untwisted
  Chart chart;

  bool twisted() const { return static_cast<bool>(H); }
  linalg::GMetricFiber fiber(const Vec& p) const { return linalg::GMetricFiber(g(p)); }
  // max ||dH|| over the points (0 when untwisted or dim < 4).
  double closedness_residual(const std::vector<Vec>& pts, int order = 2) const;
};

// Christoffel symbols of g at a point: gamma[k](i, j) multiplies X^i Y^j.
std::vector<Mat> christoffels(const fields::MatField& g, const Chart& c, const Vec& p,
                              int order = 2);

// Covariant derivative of a vector field along the value X at p.
// sign = 0 gives Levi-Civita; +1/-1 the Bismut connections nabla +- (1/2)g^{-1}H.
Vec nabla_vec(const GMetricField& m, const fields::VectorField& y, const Vec& x, const Vec& p,
              int sign = 0, int order = 2);
// The dual connection on 1-forms along X at p.
Vec nabla_oneform(const GMetricField& m, const fields::OneFormField& eta, const Vec& x,
                  const Vec& p, int sign = 0, int order = 2);

// Residual of metric compatibility nabla g = 0 at the points (both for
// Levi-Civita and the Bismut pair, which share it).
double metricity_residual(const GMetricField& m, const std::vector<Vec>& pts, int sign = 0,
                          int order = 2);
// Residual of g(T^{sign}(X,Y), Z) = sign * H(X,Y,Z) for the Bismut torsions,
// measured on coordinate fields.
double bismut_torsion_residual(const GMetricField& m, const std::vector<Vec>& pts, int sign = +1,
                               int order = 2);

// A generalized connection as an evaluator D_Z W at a point, with a label
// recording which construction produced it.
struct GenConnection {
  std::function<linalg::GVector(const fields::GSectionField& z, const fields::GSectionField& w,
                                const Vec& p)>
      eval;
  const char* method = "";
};

// Explicit block form: D_X = [[nabla_X, (1/2) g^{-1} (i_X H) g^{-1}],
//                             [(1/2) i_X H, nabla*_X]],  D_xi = 0.
GenConnection gen_bismut_matrix(const GMetricField& m, int order = 2);

// Bracket form: D_Z W = [Z_-, W_+]_+ + [Z_+, W_-]_- + [C Z_-, W_-]_- + [C Z_+, W_+]_+,
// with the H-twisted Dorfman bracket and the metric projections.
GenConnection gen_bismut_bracket(const GMetricField& m, int order = 2);

// Max pointwise discrepancy of the two constructions over the 2n-frame pairs.
double two_path_discrepancy(const GMetricField& m, const std::vector<Vec>& pts, int order = 2);

// Torsion component T(a, b, c) at p on constant sections (T is tensorial).
double torsion_component(const GenConnection& d, const GMetricField& m, const linalg::GVector& a,
                         const linalg::GVector& b, const linalg::GVector& c, const Vec& p,
                         int order = 2);

// Full torsion tensor at p in the coordinate frame of T + T* (rank 2n),
// assembled from components on ascending frame triples.
fields::Alt3 torsion_tensor(const GenConnection& d, const GMetricField& m, const Vec& p,
                            int order = 2);

// The predicted torsion pi_+^* H + pi_-^* H in the same frame.
fields::Alt3 torsion_expected(const GMetricField& m, const Vec& p);

// Max |T(a,b,c) + T(b,a,c)| over random frame triples (total skewness).
double torsion_skewness_residual(const GenConnection& d, const GMetricField& m,
                                 const std::vector<Vec>& pts, int order = 2);
// Max |T(a,b,c)| over mixed (C+, C-, anything) triples.
double torsion_mixed_residual(const GenConnection& d, const GMetricField& m,
                              const std::vector<Vec>& pts, int order = 2);

// (max ||(D_Z J) W|| over frame pairs and points,
//  max |(3,0)+(0,3) components of T_D in a J-eigenframe|).
// Pre: J commutes with the G-reflection at the points (throws otherwise).
std::pair<double, double> gk_characterization(const gcs::GCStructure& j, const GMetricField& m,
                                              const std::vector<Vec>& pts, int order = 2,
                                              double ortho_tol = 1e-4);

}  // namespace gkflow::bismut
