#pragma once

// Serial reference implementations of the parallel kernels.  Kept for
// testing (bit-level oracles for the OpenMP paths) and for the benchmark
// target; deliberately naive and single-threaded.

#include <cmath>

#include "besovlab/symbols.hpp"

namespace besovlab::reference {

/// Naive O(n^2)-per-axis forward transform matching forward_ft exactly in
/// exact arithmetic: u_hat(xi_j) = h^N sum_m f(x_m) exp(-i xi_j . x_m).
inline Field naive_forward_ft(const Field& f) {
  if (f.domain != Domain::physical)
    throw usage_error("naive_forward_ft: physical input required");
  const Grid& g = f.grid;
  Field out(g, f.components, Domain::frequency);
  double hN = std::pow(g.spacing(), g.dim());
  for (std::int64_t j = 0; j < g.points(); ++j) {
    double xi[3];
    g.freq_at(j, xi);
    for (std::int64_t p = 0; p < g.points(); ++p) {
      int idx[3];
      g.unravel(p, idx);
      double phase = 0;
      for (int a = 0; a < g.dim(); ++a) phase += xi[a] * g.coord(idx[a]);
      cd w = std::exp(cd(0.0, -phase));
      for (int c = 0; c < f.components; ++c)
        out.at(j, c) += w * f.at(p, c);
    }
    for (int c = 0; c < f.components; ++c) out.at(j, c) *= hN;
  }
  return out;
}

/// Serial twin of apply_multiplier (no OpenMP in the symbol loop).
inline Field serial_apply_multiplier(const Symbol& m, const Field& f) {
  if (f.domain != Domain::physical)
    throw usage_error("serial_apply_multiplier: physical input required");
  if (m.components != 1 && m.components != f.components)
    throw usage_error("serial_apply_multiplier: component mismatch");
  Field fhat = forward_ft(f);
  const Grid& g = f.grid;
  std::vector<cd> v(m.components);
  for (std::int64_t p = 0; p < g.points(); ++p) {
    double xi[3];
    g.freq_at(p, xi);
    m.eval(std::span<const double>(xi, g.dim()), v);
    for (int c = 0; c < fhat.components; ++c)
      fhat.at(p, c) *= v[m.components == 1 ? 0 : c];
  }
  return inverse_ft(fhat);
}

/// Serial twin of the L_q grid norm.
inline double serial_lq_grid_norm(const Field& f, double q,
                                  const VectorNorm& enorm = {}) {
  const Grid& g = f.grid;
  double cell = std::pow(g.spacing(), g.dim());
  double acc = 0, mx = 0;
  for (std::int64_t p = 0; p < g.points(); ++p) {
    double e;
    if (enorm) {
      e = enorm(f.point(p));
    } else {
      double s = 0;
      for (int c = 0; c < f.components; ++c) s += std::norm(f.at(p, c));
      e = std::sqrt(s);
    }
    if (std::isinf(q))
      mx = std::max(mx, e);
    else
      acc += std::pow(e, q) * cell;
  }
  return std::isinf(q) ? mx : std::pow(acc, 1.0 / q);
}

/// Serial sup scan of a symbol's operator norm over the frequency nodes.
inline double serial_symbol_sup(const Symbol& m, const Grid& g) {
  double sup = 0;
  for (std::int64_t p = 0; p < g.points(); ++p) {
    double xi[3];
    g.freq_at(p, xi);
    sup = std::max(sup, m.op_norm(std::span<const double>(xi, g.dim())));
  }
  return sup;
}

/// Parallel twin of serial_symbol_sup (the benchmark counterpart).
inline double parallel_symbol_sup(const Symbol& m, const Grid& g) {
  double sup = 0;
#pragma omp parallel reduction(max : sup)
  {
    std::vector<cd> v(m.components);
#pragma omp for schedule(static)
    for (std::int64_t p = 0; p < g.points(); ++p) {
      double xi[3];
      g.freq_at(p, xi);
      m.eval(std::span<const double>(xi, g.dim()), v);
      for (const cd& e : v) sup = std::max(sup, std::abs(e));
    }
  }
  return sup;
}

}  // namespace besovlab::reference
