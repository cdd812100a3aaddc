#include "gkflow/chart.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace gkflow {

Chart::Chart(int dim_, std::vector<std::array<double, 2>> box_,
             std::vector<bool> periodic_, double h_)
    : dim(dim_), box(std::move(box_)), periodic(std::move(periodic_)), h(h_) {
  if (dim <= 0) throw std::invalid_argument("Chart: dim must be positive");
  if (static_cast<int>(box.size()) != dim || static_cast<int>(periodic.size()) != dim)
    throw std::invalid_argument("Chart: box/periodic size must match dim");
  double min_len = std::numeric_limits<double>::infinity();
  for (int i = 0; i < dim; ++i) {
    if (!(box[i][0] < box[i][1]))
      throw std::invalid_argument("Chart: box bounds must satisfy lo < hi");
    min_len = std::min(min_len, box[i][1] - box[i][0]);
  }
  if (!(h > 0.0) || h >= 0.1 * min_len)
    throw std::invalid_argument("Chart: h must satisfy 0 < h < 0.1 * min box length");
}

Chart Chart::cube(int dim, double lo, double hi, bool periodic, double h) {
  std::vector<std::array<double, 2>> b(dim, {lo, hi});
  std::vector<bool> per(dim, periodic);
  return Chart(dim, std::move(b), std::move(per), h);
}

Vec Chart::wrap(const Vec& p) const {
  Vec q = p;
  for (int i = 0; i < dim; ++i) {
    if (!periodic[i]) continue;
    const double len = length(i);
    double t = std::fmod(q[i] - box[i][0], len);
    if (t < 0) t += len;
    q[i] = box[i][0] + t;
  }
  return q;
}

bool Chart::contains(const Vec& p, double margin) const {
  if (p.size() != dim) return false;
  for (int i = 0; i < dim; ++i) {
    if (periodic[i]) continue;
    if (p[i] < box[i][0] + margin || p[i] > box[i][1] - margin) return false;
  }
  return true;
}

void Chart::require_inside(const Vec& p, double margin) const {
  if (!contains(p, margin)) {
    std::string msg = "evaluation outside chart at (";
    for (int i = 0; i < p.size(); ++i)
      msg += (i ? ", " : "") + std::to_string(p[i]);
    throw ChartError(msg + ")");
  }
}

namespace {
double halton(std::uint64_t index, unsigned base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}
}  // namespace

std::vector<Vec> Chart::sample_points(int count, std::uint64_t seed) const {
  static const unsigned primes[] = {2, 3, 5, 7, 11, 13};
  if (dim > 6) throw std::invalid_argument("Chart::sample_points: dim > 6 unsupported");
  std::vector<Vec> pts;
  pts.reserve(count);
  const double margin = 4.0 * h;
  for (int i = 0; i < dim; ++i)
    if (!periodic[i] && box[i][0] + margin >= box[i][1] - margin)
      throw ChartError("difference margin 4h = " + std::to_string(margin) +
                       " leaves no interior on axis " + std::to_string(i));
  for (int k = 0; k < count; ++k) {
    Vec p(dim);
    for (int i = 0; i < dim; ++i) {
      double lo = box[i][0], hi = box[i][1];
      if (!periodic[i]) {
        lo += margin;
        hi -= margin;
      }
      const double u = halton(seed + 17 + static_cast<std::uint64_t>(k), primes[i]);
      p[i] = lo + u * (hi - lo);
    }
    pts.push_back(p);
  }
  return pts;
}

}  // namespace gkflow
