#pragma once

// Complex-linear algebra on top of real charts: the standard complex
// structure for the identification (x1, y1, x2, y2, ...) ~ (z1, z2, ...),
// holomorphic projectors and frames, conversion of complex (2,0) bivectors
// to their real matrix data, and complex structures built from coframes.
//
// Normalization fixed here once: a holomorphic Poisson bivector sigma with
// complex map-matrix S (first-slot contraction, mat(sigma)·xi = i_xi sigma)
// contributes the real bivector block Qhat = 4·Im(S) to the upper-triangular
// generalized structure [[I, Qhat], [0, -I^T]].  With that factor the pure
// spinor of (I, sigma) is exactly e^sigma Omega; it is verified end to end
// by the elliptic-family tests.

#include <complex>

#include "gkflow/linalg.hpp"

namespace gkflow::complexify {

inline constexpr double kBivectorBlockScale = 4.0;

// Block-diagonal [[0,-1],[1,0]] pairs: I d/dx_k = d/dy_k for z_k = x_k + i y_k
// in the interleaved ordering (x1, y1, x2, y2, ...).
Mat standard_complex_structure(int n);

// P^{1,0} = (1 - iI)/2 and P^{0,1} = (1 + iI)/2.
MatC holo_projector(const Mat& I);
MatC antiholo_projector(const Mat& I);

// Deterministic basis of T^{1,0} (n/2 complex columns) from the projector,
// via column-pivoted QR so degenerate inputs always break ties the same way.
MatC holo_frame(const Mat& I);

// I from a complex coframe whose rows are the (1,0)-forms theta^1..theta^{n/2}
// (the conjugate rows are appended internally):  M I = diag(i,..,-i,..) M.
// Throws if the resulting I fails to be real or I^2 = -1 within tol.
Mat complex_structure_from_coframe(const MatC& theta_rows, double tol = 1e-9);

// Real and imaginary matrix parts of a complex bivector map-matrix.
struct RealPair {
  Mat re;
  Mat im;
};
RealPair split(const MatC& s);

// The generalized-structure bivector block of sigma: 4·Im(mat(sigma)).
Mat bivector_block(const MatC& sigma_mat);

// Residual of the type-(2,0) condition I·S = i·S (values in T^{1,0}) plus
// S·I^T = i·S (both slots holomorphic).
double type20_residual(const Mat& I, const MatC& sigma_mat);

}  // namespace gkflow::complexify
