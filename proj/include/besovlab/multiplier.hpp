#pragma once

#include "besovlab/symbols.hpp"

namespace besovlab {

/// Deterministic probe corpus: four families (localized Gaussians, dyadic
/// band-limited bumps, random trigonometric polynomials, component mixing),
/// all decaying below 1e-14 at the box boundary or exactly periodic.
struct ProbeEnsemble {
  std::uint64_t seed = 0;
  std::vector<Field> probes;

  static ProbeEnsemble make(const Grid& grid, int components,
                            std::uint64_t seed, int per_family = 6);
};

using OperatorClosure = std::function<Field(const Field&)>;

/// T_m f = F^{-1}[m(xi) f_hat(xi)], the symbol acting on the E-components at
/// each frequency node.  Scalar symbols (components == 1) broadcast.
Field apply_multiplier(const Symbol& m, const Field& f);
OperatorClosure multiplier_closure(const Symbol& m);

/// (Kf)(t) = int k(t-s) f(s) ds over the periodic box, via the discrete
/// convolution theorem.  Scalar kernels broadcast; otherwise entrywise.
Field young_convolution(const Field& kernel, const Field& f);

/// sup over probes of ||Tf||_{L_q2} / ||f||_{L_q1}; a lower bound on the
/// operator norm.  Zero probes skipped.
double estimate_Lq_norm(const OperatorClosure& T, double q1, double q2,
                        const ProbeEnsemble& probes,
                        const VectorNorm& enorm = {});

/// sup over probes of ||Tf||_{B^{s}_{q2,r}} / ||f||_{B^{s}_{q1,r}}.
double estimate_besov_norm(const OperatorClosure& T, const BesovParams& from,
                           const BesovParams& to, const ProbeEnsemble& probes,
                           const DyadicSystem& sys,
                           const VectorNorm& enorm = {});

/// Hausdorff-Young constant estimate: sup ||Ff||_{L_{p'}} / ||f||_{L_p}
/// with the spectral norm taken over the frequency nodes.
double fourier_type_constant(double p, const ProbeEnsemble& probes);

/// ||k||_{L_eta(grid;E)} by grid quadrature (max over components).
double kernel_Leta_norm(const Field& kernel, double eta);

}  // namespace besovlab
