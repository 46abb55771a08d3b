#pragma once

#include <optional>

#include "besovlab/dyadic.hpp"
#include "besovlab/sequence.hpp"

namespace besovlab {

/// Besov indices: main q (the L_q norm inside blocks), second r (the
/// aggregation over scales), smoothness s.
struct BesovParams {
  double q;
  double r;
  double s;

  BesovParams(double q_, double r_, double s_);
};

/// Anisotropic norm B^{l,s}_{q,r}(E(A), E): graph-norm base term plus the
/// sum over axes of B^s norms of l-th derivatives.
struct AnisoParams {
  int order;  // l >= 1
  BesovParams besov;
  DiagOperator op;       // A of the E(A) graph norm
  double graph_p = 2.0;  // exponent inside the graph norm

  AnisoParams(int l, BesovParams b, DiagOperator A);
};

/// m-th finite difference along axis i with step y; off-grid shifts use
/// spectral interpolation and points whose difference stencil leaves the box
/// are zeroed (the Delta_i(Omega, y) cutoff).
Field finite_difference(const Field& f, int axis, double y, int m);

/// Difference-based Besov norm: L_q term plus per-axis
/// (int_0^{y0} y^{-(s r + 1)} ||Delta_i^m(y) f||_{L_q}^r dy)^{1/r},
/// log-spaced quadrature; r = inf uses the sup form.
double besov_norm_difference(const Field& f, const BesovParams& params, int m,
                             double y0, const VectorNorm& enorm = {},
                             int quad_nodes = 64);

/// Fourier-analytic Besov norm: l_r over k of 2^{ks} L_q block norms.
/// Emits a truncation warning through `remainder_ratio` when given.
double besov_norm_fourier(const Field& f, const BesovParams& params,
                          const DyadicSystem& sys, const VectorNorm& enorm = {},
                          double* remainder_ratio = nullptr);

/// Anisotropic norm per AnisoParams.
double aniso_norm(const Field& u, const AnisoParams& params,
                  const DyadicSystem& sys);

}  // namespace besovlab
