#pragma once

// Shared helpers for the unit suites: deterministic random tensors, constant
// fields, and the unit-wedge map-matrices used as hand oracles.

#include <random>
#include <vector>

#include "gkflow/chart.hpp"
#include "gkflow/complexify.hpp"
#include "gkflow/fields.hpp"
#include "gkflow/linalg.hpp"

namespace testutil {

using gkflow::Chart;
using gkflow::Mat;
using gkflow::Vec;

inline std::vector<Vec> points(const Chart& c, int count = 12, unsigned seed = 1) {
  return c.sample_points(count, seed);
}

inline gkflow::fields::MatField constant(const Mat& m) {
  return [m](const Vec&) { return m; };
}

inline gkflow::fields::VecField constant_vec(const Vec& v) {
  return [v](const Vec&) { return v; };
}

inline Vec unit(int dim, int i) {
  Vec e = Vec::Zero(dim);
  e(i) = 1.0;
  return e;
}

// mat(dx_i ^ dx_j) (equally mat(d_i ^ d_j) for bivectors) in the determinant
// convention: the map X -> i_X(dx_i ^ dx_j).
inline Mat wedge_unit(int dim, int i, int j) {
  return gkflow::fields::wedge11(unit(dim, i), unit(dim, j));
}

inline Vec rand_vec(int n, std::mt19937_64& rng, double amp = 1.0) {
  std::uniform_real_distribution<double> u(-amp, amp);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

inline Mat rand_mat(int n, std::mt19937_64& rng, double amp = 1.0) {
  std::uniform_real_distribution<double> u(-amp, amp);
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = u(rng);
  return m;
}

inline Mat rand_spd(int n, std::mt19937_64& rng, double amp = 0.3) {
  Mat a = rand_mat(n, rng, amp);
  return Mat(Mat::Identity(n, n) + a * a.transpose());
}

inline Mat rand_skew(int n, std::mt19937_64& rng, double amp = 0.3) {
  Mat a = rand_mat(n, rng, amp);
  return Mat(a - a.transpose());
}

}  // namespace testutil
