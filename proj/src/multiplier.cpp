#include "besovlab/multiplier.hpp"

#include <cmath>
#include <random>

#include "besovlab/dyadic.hpp"

namespace besovlab {

namespace {

std::vector<cd> random_unit_components(std::mt19937_64& rng, int M) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cd> v(M);
  double nrm = 0;
  for (cd& e : v) {
    e = cd(gauss(rng), gauss(rng));
    nrm += std::norm(e);
  }
  nrm = std::sqrt(nrm);
  for (cd& e : v) e /= nrm;
  return v;
}

Field gaussian_probe(const Grid& g, int M, std::mt19937_64& rng) {
  double L = g.half_width();
  std::uniform_real_distribution<double> wdist(L / 32.0, 3.0 * L / 40.0);
  std::uniform_real_distribution<double> cdist(-L / 8.0, L / 8.0);
  double w = wdist(rng);
  double c[3];
  for (int a = 0; a < g.dim(); ++a) c[a] = cdist(rng);
  std::vector<cd> comp = random_unit_components(rng, M);

  Field f(g, M, Domain::physical);
  for (std::int64_t p = 0; p < g.points(); ++p) {
    int idx[3];
    g.unravel(p, idx);
    double e = 0;
    for (int a = 0; a < g.dim(); ++a) {
      double d = g.coord(idx[a]) - c[a];
      e += d * d;
    }
    double env = std::exp(-e / (2.0 * w * w));
    for (int ci = 0; ci < M; ++ci) f.at(p, ci) = env * comp[ci];
  }
  return f;
}

Field band_probe(const Grid& g, int M, std::mt19937_64& rng,
                 const DyadicSystem& sys) {
  std::uniform_int_distribution<int> kdist(1, std::max(1, sys.k_max() - 1));
  std::uniform_real_distribution<double> sdist(-g.half_width() / 8.0,
                                               g.half_width() / 8.0);
  int k = kdist(rng);
  double shift[3];
  for (int a = 0; a < g.dim(); ++a) shift[a] = sdist(rng);
  std::vector<cd> comp = random_unit_components(rng, M);

  Field fhat(g, M, Domain::frequency);
  for (std::int64_t p = 0; p < g.points(); ++p) {
    double xi[3];
    g.freq_at(p, xi);
    double bump = sys.phi(std::span<const double>(xi, g.dim()), k);
    double phase = 0;
    for (int a = 0; a < g.dim(); ++a) phase += xi[a] * shift[a];
    cd v = bump * std::exp(cd(0.0, phase));
    for (int ci = 0; ci < M; ++ci) fhat.at(p, ci) = v * comp[ci];
  }
  return inverse_ft(fhat);
}

Field trig_probe(const Grid& g, int M, std::mt19937_64& rng) {
  int band = std::max(1, g.samples() / 8);
  std::uniform_int_distribution<int> jdist(-band, band);
  std::normal_distribution<double> gauss(0.0, 1.0);
  int modes = 3 + static_cast<int>(rng() % 3);
  Field f(g, M, Domain::physical);
  for (int mode = 0; mode < modes; ++mode) {
    double kappa[3];
    for (int a = 0; a < g.dim(); ++a)
      kappa[a] = kPi * jdist(rng) / g.half_width();
    cd amp(gauss(rng), gauss(rng));
    std::vector<cd> comp = random_unit_components(rng, M);
    for (std::int64_t p = 0; p < g.points(); ++p) {
      int idx[3];
      g.unravel(p, idx);
      double phase = 0;
      for (int a = 0; a < g.dim(); ++a) phase += kappa[a] * g.coord(idx[a]);
      cd v = amp * std::exp(cd(0.0, phase));
      for (int ci = 0; ci < M; ++ci) f.at(p, ci) += v * comp[ci];
    }
  }
  return f;
}

Field mixing_probe(const Grid& g, int M, std::mt19937_64& rng) {
  double L = g.half_width();
  std::uniform_real_distribution<double> wdist(L / 32.0, 3.0 * L / 40.0);
  std::uniform_real_distribution<double> cdist(-L / 8.0, L / 8.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Field f(g, M, Domain::physical);
  // Each component gets its own envelope: probes that genuinely mix E.
  for (int ci = 0; ci < M; ++ci) {
    double w = wdist(rng);
    double c[3];
    for (int a = 0; a < g.dim(); ++a) c[a] = cdist(rng);
    cd amp(gauss(rng), gauss(rng));
    for (std::int64_t p = 0; p < g.points(); ++p) {
      int idx[3];
      g.unravel(p, idx);
      double e = 0;
      for (int a = 0; a < g.dim(); ++a) {
        double d = g.coord(idx[a]) - c[a];
        e += d * d;
      }
      f.at(p, ci) = amp * std::exp(-e / (2.0 * w * w));
    }
  }
  return f;
}

}  // namespace

ProbeEnsemble ProbeEnsemble::make(const Grid& grid, int components,
                                  std::uint64_t seed, int per_family) {
  if (per_family < 1)
    throw usage_error("ProbeEnsemble: per_family must be >= 1");
  ProbeEnsemble out;
  out.seed = seed;
  std::mt19937_64 rng(seed);
  DyadicSystem sys(grid);
  for (int i = 0; i < per_family; ++i)
    out.probes.push_back(gaussian_probe(grid, components, rng));
  for (int i = 0; i < per_family; ++i)
    out.probes.push_back(band_probe(grid, components, rng, sys));
  for (int i = 0; i < per_family; ++i)
    out.probes.push_back(trig_probe(grid, components, rng));
  for (int i = 0; i < per_family; ++i)
    out.probes.push_back(mixing_probe(grid, components, rng));
  return out;
}

Field apply_multiplier(const Symbol& m, const Field& f) {
  if (f.domain != Domain::physical)
    throw usage_error("apply_multiplier: physical-domain input required");
  if (m.components != 1 && m.components != f.components)
    throw usage_error("apply_multiplier: component mismatch");
  Field fhat = forward_ft(f);
  const Grid& g = f.grid;
  bool failed = false;
  std::string diag;
#pragma omp parallel
  {
    std::vector<cd> v(m.components);
#pragma omp for schedule(static)
    for (std::int64_t p = 0; p < g.points(); ++p) {
      if (failed) continue;
      double xi[3];
      g.freq_at(p, xi);
      try {
        m.eval(std::span<const double>(xi, g.dim()), v);
      } catch (const std::exception& e) {
#pragma omp critical
        {
          failed = true;
          diag = std::string(e.what()) + " at xi[0]=" + std::to_string(xi[0]);
        }
        continue;
      }
      for (int c = 0; c < fhat.components; ++c)
        fhat.at(p, c) *= v[m.components == 1 ? 0 : c];
    }
  }
  if (failed) throw numeric_error("apply_multiplier: " + diag);
  return inverse_ft(fhat);
}

OperatorClosure multiplier_closure(const Symbol& m) {
  return [m](const Field& f) { return apply_multiplier(m, f); };
}

Field young_convolution(const Field& kernel, const Field& f) {
  if (kernel.grid.dim() != f.grid.dim() ||
      kernel.grid.samples() != f.grid.samples() ||
      kernel.grid.half_width() != f.grid.half_width())
    throw usage_error("young_convolution: grid mismatch");
  if (kernel.components != 1 && kernel.components != f.components)
    throw usage_error("young_convolution: component mismatch");
  Field khat = kernel.domain == Domain::frequency ? kernel
                                                  : forward_ft(kernel);
  Field fhat = forward_ft(f);
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < f.grid.points(); ++p)
    for (int c = 0; c < fhat.components; ++c)
      fhat.at(p, c) *= khat.at(p, kernel.components == 1 ? 0 : c);
  return inverse_ft(fhat);
}

double estimate_Lq_norm(const OperatorClosure& T, double q1, double q2,
                        const ProbeEnsemble& probes, const VectorNorm& enorm) {
  double sup = 0;
  for (const Field& f : probes.probes) {
    double denom = lq_grid_norm(f, q1, enorm);
    if (denom == 0) continue;
    sup = std::max(sup, lq_grid_norm(T(f), q2, enorm) / denom);
  }
  return sup;
}

double estimate_besov_norm(const OperatorClosure& T, const BesovParams& from,
                           const BesovParams& to, const ProbeEnsemble& probes,
                           const DyadicSystem& sys, const VectorNorm& enorm) {
  double sup = 0;
  for (const Field& f : probes.probes) {
    double denom = besov_norm_fourier(f, from, sys, enorm);
    if (denom == 0) continue;
    sup = std::max(sup, besov_norm_fourier(T(f), to, sys, enorm) / denom);
  }
  return sup;
}

double fourier_type_constant(double p, const ProbeEnsemble& probes) {
  if (p < 1.0 || p > 2.0)
    throw config_error("fourier_type_constant: p must be in [1, 2]");
  double pprime =
      p == 1.0 ? std::numeric_limits<double>::infinity() : p / (p - 1.0);
  double sup = 0;
  for (const Field& f : probes.probes) {
    double denom = lq_grid_norm(f, p);
    if (denom == 0) continue;
    Field fhat = forward_ft(f);
    const Grid& g = f.grid;
    double cell = std::pow(kPi / g.half_width(), g.dim());
    double acc = 0, mx = 0;
    for (std::int64_t pt = 0; pt < g.points(); ++pt) {
      double e = 0;
      for (int c = 0; c < fhat.components; ++c)
        e += std::norm(fhat.at(pt, c));
      e = std::sqrt(e);
      if (std::isinf(pprime))
        mx = std::max(mx, e);
      else
        acc += std::pow(e, pprime) * cell;
    }
    double num = std::isinf(pprime) ? mx : std::pow(acc, 1.0 / pprime);
    sup = std::max(sup, num / denom);
  }
  return sup;
}

double kernel_Leta_norm(const Field& kernel, double eta) {
  Field k = kernel.domain == Domain::frequency ? inverse_ft(kernel) : kernel;
  double worst = 0;
  for (int c = 0; c < k.components; ++c) {
    double acc = 0, mx = 0;
    double cell = std::pow(k.grid.spacing(), k.grid.dim());
    for (std::int64_t p = 0; p < k.grid.points(); ++p) {
      double a = std::abs(k.at(p, c));
      if (std::isinf(eta))
        mx = std::max(mx, a);
      else
        acc += std::pow(a, eta) * cell;
    }
    worst = std::max(worst, std::isinf(eta) ? mx : std::pow(acc, 1.0 / eta));
  }
  return worst;
}

}  // namespace besovlab
