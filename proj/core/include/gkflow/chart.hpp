#pragma once

// Coordinate boxes with per-axis periodicity.  A chart carries the finite
// difference step h used by every derivative taken on fields over it, and
// produces the deterministic low-discrepancy sample sets all residual
// estimators share.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gkflow/linalg.hpp"

namespace gkflow {

struct ChartError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Chart {
  int dim = 0;
  std::vector<std::array<double, 2>> box;
  std::vector<bool> periodic;
  double h = 1e-3;

  Chart() = default;
  Chart(int dim_, std::vector<std::array<double, 2>> box_,
        std::vector<bool> periodic_, double h_);

  static Chart cube(int dim, double lo, double hi, bool periodic, double h = 1e-3);

  double length(int axis) const { return box[axis][1] - box[axis][0]; }

  // Wrap periodic axes into the box; non-periodic axes are untouched.
  Vec wrap(const Vec& p) const;

  bool contains(const Vec& p, double margin = 0.0) const;
  void require_inside(const Vec& p, double margin = 0.0) const;

  // Halton points in the box, with non-periodic axes shrunk inward by a
  // 4h margin so nested difference stencils stay inside.  Deterministic
  // for a fixed (count, seed).
  std::vector<Vec> sample_points(int count, std::uint64_t seed = 0) const;
};

}  // namespace gkflow
