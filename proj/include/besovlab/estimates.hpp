#pragma once

#include "besovlab/solvers.hpp"

namespace besovlab {

/// Lambda sweep plan: log-spaced magnitudes on rays inside the sector,
/// probe corpus, and the Besov index pair (q1 -> q2 on the exponent line
/// 1/q2 = 1/q1 - 1/eta').
struct SweepPlan {
  Sector sector;
  int extra_rays = 0;        // rays beyond {0, +-phi}
  double mag_min = 1.0;
  double mag_max = 1e4;
  int per_decade = 6;
  std::uint64_t seed = 1;
  int probes_per_family = 6;
  BesovParams from;  // (q1, r, s)
  BesovParams to;    // (q2, r, s)
  double eta_prime = std::numeric_limits<double>::infinity();

  SweepPlan(Sector sec, BesovParams q1_params, BesovParams q2_params);
  std::vector<cd> lambdas() const;
};

struct SweepCell {
  cd lambda;
  int probe;
  double ratio;
};

struct SweepReport {
  std::vector<SweepCell> table;
  double sup = 0;
  std::map<int, double> per_decade_sup;  // keyed by floor(log10 |lambda|)
  std::map<std::string, double> metadata_numbers;
  std::uint64_t seed = 0;
  std::vector<std::string> failures;  // per-cell solver failures, non-fatal

  void record(cd lambda, int probe, double ratio);
  /// max / min of the nonzero per-decade sups.
  double per_decade_spread() const;
  std::string to_json() const;
  std::string to_csv() const;
};

/// Coercive ratio sweep for the differential family:
/// [sum_{|alpha|<=2l} |lambda|^{1-|alpha|/2l} ||D^alpha u||_{B(q2)}
///  + ||Au||_{B(q2)}] / ||f||_{B(q1)} per (lambda, probe).
/// include_lambda_weights = false drops the |lambda| powers (the plain
/// resolvent-sum form used by the infinite-system sweep).
SweepReport coercive_sweep_elliptic(const PolySymbolSpec& spec,
                                    const DiagOperator& A, const Grid& grid,
                                    double phi1, const SweepPlan& plan,
                                    bool include_lambda_weights = true);

/// Coercive ratio sweep for the convolution family (N = 1):
/// [||lambda u||_B + sum_k |lambda|^{1-k/l} ||a_k * u^{(k)}||_B
///  + ||A * u||_B] / ||f||_B.
SweepReport coercive_sweep_convolution(const ConvKernelSpec& spec,
                                       const DiagOperator& A,
                                       const Grid& grid, double lambda0,
                                       const SweepPlan& plan);

/// Probe estimates of the weighted resolvent terms
/// sum |lambda|^{1-|alpha|/2l} ||D^alpha (Q+lambda)^{-1} f|| + ||A(...)f||
/// against ||f||, measured in the plan's Besov pair.
SweepReport resolvent_sweep(const PolySymbolSpec& spec, const DiagOperator& A,
                            const Grid& grid, double phi1,
                            const SweepPlan& plan,
                            bool include_lambda_weights = true);

/// Embedding ratio sweep: ||D^alpha u||_{B(q2; E(A^{1-x}))} over the
/// anisotropic norm of u, x = (|alpha| + sigma)/l <= 1.  When a_alpha is
/// given, the numerator uses a_alpha * D^alpha u (the convolution variant).
SweepReport embedding_sweep(const std::vector<int>& alpha, int l,
                            const DiagOperator& A, const Grid& grid,
                            const SweepPlan& plan, int sigma = 0,
                            const Field* a_alpha = nullptr);

/// sup over |arg lambda| <= phi (phi in (pi/2, pi)) of probe-estimated
/// ||lambda (Q + a + lambda)^{-1}||_{L_2}; finiteness is the sectoriality
/// certificate.
SweepReport semigroup_ray_check(const PolySymbolSpec& spec,
                                const DiagOperator& A, const Grid& grid,
                                double shift, double phi,
                                const SweepPlan& plan);

/// sigma = ceil(N (1 + 1/q2 - 1/q1)) + 1, the embedding weight order tied to
/// the exponent line; asserts consistency with eta' when finite.
int embedding_sigma(int N, double q1, double q2);

}  // namespace besovlab
