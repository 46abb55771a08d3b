#pragma once

#include "besovlab/fourier.hpp"

namespace besovlab {

/// Smooth dyadic bump psi supported in [1/2, 2] with
/// sum_k psi(2^{-k} s) = 1 for s > 0, and the induced partition of unity
/// phi_k on R^N:  phi_k(t) = psi(2^{-k}|t|) for k >= 1,
/// phi_0 = 1 - sum_{k>=1} phi_k.
class DyadicSystem {
 public:
  explicit DyadicSystem(const Grid& grid);

  const Grid& grid() const { return grid_; }
  /// Highest annulus fully resolved by the grid.
  int k_max() const { return k_max_; }

  /// The normalized bump; zero outside (1/2, 2).
  static double psi(double s);

  /// phi_k at a point of R^N (|t| Euclidean); k < 0 gives 0.
  double phi(std::span<const double> t, int k) const;
  double phi_radial(double r, int k) const;

  /// F^{-1}[phi_k . F f].  k > k_max is allowed but flagged truncated.
  Field block(const Field& f, int k) const;
  /// Same but starting from the spectrum (avoids repeated forward FFTs).
  Field block_from_spectrum(const Field& fhat, int k) const;

  /// f minus the sum of blocks 0..k_max (aliased high-frequency remainder).
  Field remainder(const Field& f) const;

 private:
  Grid grid_;
  int k_max_;
};

}  // namespace besovlab
