#include "gkflow/zalg.hpp"

#include <stdexcept>

namespace gkflow::zalg {

long h0_genus1(long degree, bool trivial_if_degree_zero) {
  if (degree > 0) return degree;
  if (degree < 0) return 0;
  return trivial_if_degree_zero ? 1 : 0;
}

long hom_dim(int i, int j, int d) {
  if (j < i) throw std::invalid_argument("hom_dim: need j >= i");
  if (i == j) return 1;
  return h0_genus1(static_cast<long>(d) * (j - i), false);
}

GradedDims ring_dims(int k_max, int d) {
  if (k_max < 0) throw std::invalid_argument("ring_dims: need k_max >= 0");
  GradedDims out;
  out.degree = d;
  out.dims.reserve(static_cast<size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) out.dims.push_back(hom_dim(0, k, d));
  // Degree bookkeeping of the product A^p x A^q -> A^{p+q}: the second factor
  // is a translate, which must not change dimensions.
  for (int p = 0; p <= k_max; ++p)
    for (int q = 0; p + q <= k_max; ++q)
      if (hom_dim(p, p + q, d) != hom_dim(0, q, d))
        throw std::logic_error("ring_dims: translation invariance violated");
  return out;
}

std::vector<GrowthRow> growth_compare(int k_max) {
  GradedDims ring = ring_dims(k_max, 3);
  std::vector<GrowthRow> out;
  for (int k = 0; k <= k_max; ++k) {
    GrowthRow row;
    row.k = k;
    row.ring = ring.dims[static_cast<size_t>(k)];
    row.poly = static_cast<long>(k + 1) * (k + 2) / 2;
    row.deficit = row.poly - row.ring;
    bool ok = (k <= 2) ? row.deficit == 0 : (k == 3 ? row.deficit == 1 : row.deficit > 1);
    if (!ok) throw std::logic_error("growth_compare: deficit pattern violated");
    out.push_back(row);
  }
  return out;
}

}  // namespace gkflow::zalg
