#pragma once

// Registry of the concrete geometries used by the tests, the acceptance
// gate, and the command-line tool.  Every geometry is re-validated against
// its own tolerance table at lookup time, so a drifting example fails loudly.

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "gkflow/gcs.hpp"
#include "gkflow/gk_build.hpp"

namespace gkflow::examples {

struct ExampleGeometry {
  std::string name;
  std::string description;
  Chart chart;
  Chart sample_region;  // sub-box where sample points are drawn
  // Tensors; an empty std::function means "not applicable".
  fields::EndoField I;
  gcs::ComplexBivector sigma;
  fields::BivectorField Q;
  fields::TwoFormField F;
  fields::ThreeFormField H;
  fields::MatField g;
  fields::VectorField X;
  std::map<std::string, double> tolerances;

  std::vector<Vec> samples(int count, unsigned seed) const {
    return sample_region.sample_points(count, seed);
  }
  double tol(const std::string& key, double fallback) const {
    auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
  }
};

// Registered names: kahler_torus_T4, torus_T3_H, elliptic_Ec,
// synthetic_flow_R4, cp2_chart.
std::vector<std::string> example_names();

// Throws std::invalid_argument for unknown names; validates the geometry
// against its tolerance table before returning.
ExampleGeometry get(const std::string& name);

// The elliptic family at parameter c (get("elliptic_Ec") is c = 1).
ExampleGeometry elliptic(double c);

// Affine-chart cubic Poisson structure on the projective plane: sigma =
// cubic(z1, z2) dz1 ^ dz2 with the ten coefficients in the monomial order
// 1, z1, z2, z1^2, z1 z2, z2^2, z1^3, z1^2 z2, z1 z2^2, z2^3.  X is the
// induced log-divisor field when the cubic is nonvanishing on the chart
// (std::domain_error otherwise).
ExampleGeometry cp2(const std::vector<std::complex<double>>& cubic_coeffs);

// Flow input of an example carrying (I, Q, F, X); throws when incomplete.
gk::FlowInput flow_input(const ExampleGeometry& e);

}  // namespace gkflow::examples
