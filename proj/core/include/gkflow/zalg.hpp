#pragma once

// Dimension bookkeeping for the twisted homogeneous coordinate ring of a
// degree-d line bundle on a genus-1 curve, and the growth comparison against
// the projective-plane polynomial ring.  Line bundles are tracked by degree
// only; the translation twist acts trivially on degree.

#include <vector>

namespace gkflow::zalg {

struct GradedDims {
  int degree = 0;               // d of the underlying bundle
  std::vector<long> dims;      // dim A^0 .. dim A^{k_max}
};

// h^0 of a degree-`degree` line bundle on a genus-1 curve: degree for
// positive degree, 0 for negative, and at degree 0 either 1 (trivial bundle)
// or 0 (generic flat bundle) per the flag.
long h0_genus1(long degree, bool trivial_if_degree_zero);

// dim Hom(i, j) for the twist-d chain: 1 when i = j (empty tensor product),
// otherwise h^0 of the degree d*(j-i) product bundle with the generic
// degree-0 convention.  Throws std::invalid_argument when j < i.
long hom_dim(int i, int j, int d);

// [dim A^0, ..., dim A^{k_max}] with A^k = Hom(0, k); checks the translation
// invariance hom_dim(p, p+q) = hom_dim(0, q) used by the product grading.
GradedDims ring_dims(int k_max, int d);

struct GrowthRow {
  int k = 0;
  long ring = 0;     // dim A^k at d = 3
  long poly = 0;     // dim of degree-k plane polynomials, (k+1)(k+2)/2
  long deficit = 0;  // poly - ring
};

// Comparison table for d = 3; verifies the deficit vanishes through k = 2,
// equals 1 at k = 3, and stays positive beyond.
std::vector<GrowthRow> growth_compare(int k_max);

}  // namespace gkflow::zalg
