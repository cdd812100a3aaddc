#pragma once

// Generalized complex structures on charts: construction from holomorphic
// Poisson data or a symplectic form, integrability via the generalized
// Nijenhuis tensor, the groupoid equations linking two complex structures
// through a closed 2-form, transport of module connections, and the
// Poincare-Lelong section.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "gkflow/complexify.hpp"
#include "gkflow/fields.hpp"

namespace gkflow::gcs {

// sigma = re + i*im as map-matrix fields (first-slot contraction).
struct ComplexBivector {
  fields::BivectorField re;
  fields::BivectorField im;

  MatC at(const Vec& p) const {
    return re(p).cast<std::complex<double>>() + std::complex<double>(0, 1) * im(p);
  }
};

// A complex structure together with a holomorphic Poisson bivector.
struct HoloPoisson {
  fields::EndoField I;
  ComplexBivector sigma;
  Chart chart;

  // The bivector block entering the generalized structure: 4*Im(sigma).
  fields::BivectorField q_block() const;
};

struct GCStructure {
  fields::GEndoField J;       // 2n x 2n block endomorphism field
  fields::ThreeFormField H;   // empty function = untwisted
  Chart chart;

  bool twisted() const { return static_cast<bool>(H); }
};

// Residuals of the HoloPoisson invariants, max over the points.
struct HoloPoissonReport {
  double i_square = 0;     // ||I^2 + 1||
  double nijenhuis_i = 0;  // classical Nijenhuis tensor of I
  double type20 = 0;       // sigma is (2,0) w.r.t. I
  double schouten = 0;     // [sigma, sigma] componentwise
};
HoloPoissonReport validate_holo_poisson(const HoloPoisson& hp, const std::vector<Vec>& pts,
                                        int order = 2);

// [[I, Q], [0, -I^T]] with Q = 4*Im(sigma); untwisted.  When validate_pts is
// supplied the HoloPoisson invariants are enforced first (throws with the
// offending residual).
GCStructure from_holo_poisson(const HoloPoisson& hp, const std::vector<Vec>* validate_pts = nullptr,
                              double tol = 1e-4, int order = 2);

// [[0, -omega^{-1}], [omega, 0]]; throws std::domain_error on a degenerate fiber.
GCStructure from_symplectic(const fields::TwoFormField& omega, const Chart& chart);

// Upper-right block of J; the anchor image of J restricted to T*.
fields::BivectorField poisson_from_gcs(const GCStructure& g);

// Max norm of N(x,y) = [Jx,Jy] - J[Jx,y] - J[x,Jy] - [x,y] (skew H-twisted
// bracket) over the 2n constant frame sections and the given points.
double gen_nijenhuis(const GCStructure& g, const std::vector<Vec>& pts, int order = 2);

// (max ||Ij - Ii - QF||, max ||F Ij + Ii^T F||) over the points.
std::pair<double, double> groupoid_residual(const fields::EndoField& Ii,
                                            const fields::EndoField& Ij,
                                            const fields::BivectorField& q,
                                            const fields::TwoFormField& f,
                                            const std::vector<Vec>& pts);

// max ||F I + I^T F + F Q F|| over the points (single-equation form of the
// groupoid system).
double nlin_residual(const fields::TwoFormField& f, const fields::EndoField& i,
                     const fields::BivectorField& q, const std::vector<Vec>& pts);

// Morphisms of the trivialization groupoid: closed 2-forms between labelled
// holomorphic Poisson structures; composition is addition.
struct GroupoidMorphism {
  fields::TwoFormField F;
  std::string source;
  std::string target;
};
GroupoidMorphism compose_morphisms(const GroupoidMorphism& fij, const GroupoidMorphism& fjk);

// Residuals of the automorphism conditions for (phi, B):
//   (||Q^phi - Q||, ||I^phi - I - QB||, ||B I^phi + I^T B||).
std::array<double, 3> automorphism_residual(const fields::Diffeo& phi,
                                            const fields::TwoFormField& b,
                                            const fields::EndoField& i,
                                            const fields::BivectorField& q,
                                            const std::vector<Vec>& pts);

// A = J (0, d log s); X is its vector part (the induced Poisson vector field).
struct PoincareLelong {
  fields::GSectionField A;
  fields::VectorField X;
};
PoincareLelong poincare_lelong(const GCStructure& g, const fields::ScalarField& s_abs,
                               int order = 2);

// Line-bundle connection transport along the groupoid morphism F: A -> A + i_X F.
fields::OneFormField module_transport(const fields::OneFormField& a,
                                      const fields::VectorField& x,
                                      const fields::TwoFormField& f);

// Residuals that a real vector field X carries the trivial line bundle as a
// Poisson module over (I, sigma):
//   first:  || dbar X^{1,0} - sigma(F0) ||   (|| dbar X^{1,0} || if F0 absent)
//   second: || L_X Q ||  for the bivector block Q = 4 Im(sigma).
std::pair<double, double> poisson_module_residual(const HoloPoisson& hp,
                                                  const fields::VectorField& x,
                                                  const fields::TwoFormField* f0,
                                                  const std::vector<Vec>& pts, int order = 2);

}  // namespace gkflow::gcs
