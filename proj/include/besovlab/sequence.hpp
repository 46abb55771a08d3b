#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "besovlab/fourier.hpp"

namespace besovlab {

/// Truncated weighted sequence space l_q(D), D = diag(d_m), all d_m > 0.
struct SequenceSpace {
  double q;
  std::vector<double> weights;  // d_1..d_M

  SequenceSpace(double q_, std::vector<double> w);
  int truncation() const { return static_cast<int>(weights.size()); }
};

/// The sector S_phi = {lambda : |arg lambda| <= phi} plus the origin.
struct Sector {
  double angle;  // phi in [0, pi)

  explicit Sector(double phi);
  bool contains(cd lambda) const;
};

/// Diagonal positive operator A = diag(d_m) on the truncated space.
struct DiagOperator {
  SequenceSpace space;
  std::vector<double> entries;  // defaults to the space weights

  explicit DiagOperator(SequenceSpace s);
  DiagOperator(SequenceSpace s, std::vector<double> e);
  int size() const { return static_cast<int>(entries.size()); }

  /// A^theta = diag(d_m^theta).
  DiagOperator frac_power(double theta) const;

  /// Entrywise resolvent values 1/(d_m + lambda); throws on a singular entry.
  std::vector<cd> resolvent_entries(cd lambda) const;

  /// ||(A+lambda)^{-1}||_{B(l_q(D))} = max_m 1/|d_m + lambda|.
  double resolvent_norm(cd lambda) const;
};

/// Weighted (or plain) l_q norm of a coefficient vector.
double lq_norm(std::span<const cd> u, const SequenceSpace& space,
               bool weighted);
double lq_norm(std::span<const cd> u, double q);

/// Graph norm (||u||^p + ||A^theta u||^p)^{1/p} in l_q(D) of the space.
double graph_norm(std::span<const cd> u, const DiagOperator& A, double theta,
                  double p);

/// Log-spaced magnitudes on rays {-phi, 0, +phi} (plus optional extra rays).
struct SectorSamples {
  std::vector<cd> lambdas;

  static SectorSamples make(const Sector& s, double mag_min, double mag_max,
                            int per_decade, int extra_rays = 0,
                            bool include_zero = false);
};

/// Smallest M with ||(A+lambda)^{-1}|| <= M(1+|lambda|)^{-1} over the samples.
double positivity_constant(const DiagOperator& A, const Sector& sector,
                           const SectorSamples& samples);

/// inf over sampled (lambda, mu) ray pairs of |lambda+mu|/(|lambda|+|mu|).
double sector_sum_bound(const Sector& phi, const Sector& psi, int ray_samples);

/// sup over probes of ||A^{1-x}u|| / (||Au||^{1-x} ||u||^x); <= 1 for
/// diagonal A in l_q(D).  Zero probes are skipped.
double moment_inequality_check(const DiagOperator& A, double x,
                               std::span<const std::vector<cd>> probes);

/// Pointwise-norm factories for Besov machinery over E = l_q(D).
VectorNorm weighted_lq_enorm(SequenceSpace space);
VectorNorm unweighted_lq_enorm(double q);
VectorNorm graph_enorm(DiagOperator A, double theta, double p);

}  // namespace besovlab
