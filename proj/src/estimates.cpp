#include "besovlab/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace besovlab {

namespace {

std::vector<std::vector<int>> multi_indices(int dim, int order) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(dim, 0);
  std::function<void(int, int)> rec = [&](int axis, int left) {
    if (axis == dim) {
      out.push_back(cur);
      return;
    }
    for (int j = 0; j <= left; ++j) {
      cur[axis] = j;
      rec(axis + 1, left - j);
    }
    cur[axis] = 0;
  };
  rec(0, order);
  return out;
}

int total(const std::vector<int>& a) {
  int s = 0;
  for (int x : a) s += x;
  return s;
}

Field apply_diag(const Field& f, const std::vector<double>& d) {
  Field g = f;
  for (std::int64_t p = 0; p < g.grid.points(); ++p)
    for (int c = 0; c < g.components; ++c) g.at(p, c) *= d[c];
  return g;
}

}  // namespace

SweepPlan::SweepPlan(Sector sec, BesovParams q1_params, BesovParams q2_params)
    : sector(sec), from(q1_params), to(q2_params) {
  if (from.r != to.r || from.s != to.s)
    throw config_error("SweepPlan: the index pair must share r and s");
}

std::vector<cd> SweepPlan::lambdas() const {
  return SectorSamples::make(sector, mag_min, mag_max, per_decade, extra_rays)
      .lambdas;
}

void SweepReport::record(cd lambda, int probe, double ratio) {
  table.push_back({lambda, probe, ratio});
  sup = std::max(sup, ratio);
  double a = std::abs(lambda);
  if (a > 0) {
    int decade = static_cast<int>(std::floor(std::log10(a) + 1e-12));
    auto [it, inserted] = per_decade_sup.emplace(decade, ratio);
    if (!inserted) it->second = std::max(it->second, ratio);
  }
}

double SweepReport::per_decade_spread() const {
  double lo = std::numeric_limits<double>::infinity(), hi = 0;
  for (const auto& [d, v] : per_decade_sup) {
    if (v <= 0) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!std::isfinite(lo) || lo == 0) return 1.0;
  return hi / lo;
}

std::string SweepReport::to_json() const {
  nlohmann::json j;
  j["schema"] = 1;
  j["seed"] = seed;
  j["sup"] = sup;
  j["per_decade_spread"] = per_decade_spread();
  for (const auto& [d, v] : per_decade_sup)
    j["per_decade_sup"][std::to_string(d)] = v;
  for (const auto& [k, v] : metadata_numbers) j["metadata"][k] = v;
  j["failures"] = failures;
  auto& tbl = j["table"] = nlohmann::json::array();
  for (const SweepCell& c : table)
    tbl.push_back({{"lambda_re", c.lambda.real()},
                   {"lambda_im", c.lambda.imag()},
                   {"probe", c.probe},
                   {"ratio", c.ratio}});
  return j.dump(2);
}

std::string SweepReport::to_csv() const {
  std::ostringstream os;
  os << "lambda_re,lambda_im,lambda_abs,probe,ratio\n";
  os.precision(17);
  for (const SweepCell& c : table)
    os << c.lambda.real() << ',' << c.lambda.imag() << ','
       << std::abs(c.lambda) << ',' << c.probe << ',' << c.ratio << '\n';
  return os.str();
}

SweepReport coercive_sweep_elliptic(const PolySymbolSpec& spec,
                                    const DiagOperator& A, const Grid& grid,
                                    double phi1, const SweepPlan& plan,
                                    bool include_lambda_weights) {
  SymbolScan scan(grid);
  EllipticityReport er = ellipticity_check(spec, phi1, scan);
  if (!(er.K_hat > 0) || !er.sector_ok)
    throw config_error("coercive_sweep_elliptic: ellipticity check failed");
  if (plan.sector.angle + phi1 >= kPi)
    throw config_error("coercive_sweep_elliptic: requires phi + phi1 < pi");

  DyadicSystem sys(grid);
  ProbeEnsemble probes = ProbeEnsemble::make(grid, A.size(), plan.seed,
                                             plan.probes_per_family);
  VectorNorm enorm = weighted_lq_enorm(A.space);
  auto alphas = multi_indices(grid.dim(), spec.order);

  SweepReport rep;
  rep.seed = plan.seed;
  rep.metadata_numbers["ellipticity_K"] = er.K_hat;
  for (cd lambda : plan.lambdas()) {
    Symbol resolvent = build_resolvent_symbol(spec, A, lambda);
    for (std::size_t pi = 0; pi < probes.probes.size(); ++pi) {
      const Field& f = probes.probes[pi];
      try {
        double denom = besov_norm_fourier(f, plan.from, sys, enorm);
        if (denom == 0) continue;
        Field u = apply_multiplier(resolvent, f);
        double lhs = 0;
        for (const auto& alpha : alphas) {
          double w = include_lambda_weights
                         ? std::pow(std::abs(lambda),
                                    1.0 - static_cast<double>(total(alpha)) /
                                              spec.order)
                         : 1.0;
          lhs += w * besov_norm_fourier(spectral_derivative(u, alpha),
                                        plan.to, sys, enorm);
        }
        lhs += besov_norm_fourier(apply_diag(u, A.entries), plan.to, sys,
                                  enorm);
        rep.record(lambda, static_cast<int>(pi), lhs / denom);
      } catch (const std::exception& e) {
        rep.failures.push_back(e.what());
      }
    }
  }
  return rep;
}

SweepReport coercive_sweep_convolution(const ConvKernelSpec& spec,
                                       const DiagOperator& A,
                                       const Grid& grid, double lambda0,
                                       const SweepPlan& plan) {
  if (grid.dim() != 1)
    throw config_error("coercive_sweep_convolution: one-dimensional only");
  if (!(lambda0 > 0) || plan.mag_min < lambda0)
    throw config_error(
        "coercive_sweep_convolution: requires lambda0 > 0 and "
        "magnitudes >= lambda0");
  SymbolScan scan(grid);
  Condition51Report cr = condition51_check(spec, scan);
  if (!(cr.C_hat > 0))
    throw config_error(
        "coercive_sweep_convolution: kernel smallness condition failed");

  DyadicSystem sys(grid);
  ProbeEnsemble probes = ProbeEnsemble::make(grid, A.size(), plan.seed,
                                             plan.probes_per_family);
  VectorNorm enorm = weighted_lq_enorm(A.space);

  SweepReport rep;
  rep.seed = plan.seed;
  rep.metadata_numbers["condition_C"] = cr.C_hat;
  for (cd lambda : plan.lambdas()) {
    for (std::size_t pi = 0; pi < probes.probes.size(); ++pi) {
      const Field& f = probes.probes[pi];
      try {
        double denom = besov_norm_fourier(f, plan.from, sys, enorm);
        if (denom == 0) continue;
        ConvolutionProblem prob(spec, A, lambda, lambda0, f);
        Field u = solve_convolution(prob);
        Field uhat = forward_ft(u);
        double lhs = std::abs(lambda) *
                     besov_norm_fourier(u, plan.to, sys, enorm);
        for (int k = 0; k <= spec.order; ++k) {
          Field term = uhat;
          for (std::int64_t pt = 0; pt < grid.points(); ++pt) {
            double xi = grid.freq(static_cast<int>(pt));
            cd fac = spec.ahat[k](xi) * std::pow(cd(0.0, xi), k);
            for (int c = 0; c < term.components; ++c) term.at(pt, c) *= fac;
          }
          lhs += std::pow(std::abs(lambda),
                          1.0 - static_cast<double>(k) / spec.order) *
                 besov_norm_fourier(inverse_ft(term), plan.to, sys, enorm);
        }
        Field aterm = uhat;
        for (std::int64_t pt = 0; pt < grid.points(); ++pt) {
          double env = spec.aenv(grid.freq(static_cast<int>(pt)));
          for (int c = 0; c < aterm.components; ++c)
            aterm.at(pt, c) *= env * A.entries[c];
        }
        lhs += besov_norm_fourier(inverse_ft(aterm), plan.to, sys, enorm);
        rep.record(lambda, static_cast<int>(pi), lhs / denom);
      } catch (const std::exception& e) {
        rep.failures.push_back(e.what());
      }
    }
  }
  return rep;
}

SweepReport resolvent_sweep(const PolySymbolSpec& spec, const DiagOperator& A,
                            const Grid& grid, double phi1,
                            const SweepPlan& plan,
                            bool include_lambda_weights) {
  return coercive_sweep_elliptic(spec, A, grid, phi1, plan,
                                 include_lambda_weights);
}

int embedding_sigma(int N, double q1, double q2) {
  double inv_q1 = std::isinf(q1) ? 0.0 : 1.0 / q1;
  double inv_q2 = std::isinf(q2) ? 0.0 : 1.0 / q2;
  return static_cast<int>(std::ceil(N * (1.0 + inv_q2 - inv_q1))) + 1;
}

SweepReport embedding_sweep(const std::vector<int>& alpha, int l,
                            const DiagOperator& A, const Grid& grid,
                            const SweepPlan& plan, int sigma,
                            const Field* a_alpha) {
  if (static_cast<int>(alpha.size()) != grid.dim())
    throw config_error("embedding_sweep: alpha dimension mismatch");
  double x = static_cast<double>(total(alpha) + sigma) / l;
  if (x > 1.0 + 1e-12)
    throw config_error("embedding_sweep: (|alpha|+sigma)/l must be <= 1");

  DyadicSystem sys(grid);
  ProbeEnsemble probes = ProbeEnsemble::make(grid, A.size(), plan.seed,
                                             plan.probes_per_family);
  VectorNorm num_enorm = graph_enorm(A, 1.0 - x, 2.0);
  AnisoParams aniso(l, plan.from, A);

  SweepReport rep;
  rep.seed = plan.seed;
  rep.metadata_numbers["x"] = x;
  rep.metadata_numbers["sigma"] = sigma;
  if (a_alpha)
    rep.metadata_numbers["kernel_L1"] = kernel_Leta_norm(*a_alpha, 1.0);
  for (std::size_t pi = 0; pi < probes.probes.size(); ++pi) {
    const Field& u = probes.probes[pi];
    try {
      double denom = aniso_norm(u, aniso, sys);
      if (denom == 0) continue;
      Field du = spectral_derivative(u, alpha);
      if (a_alpha) du = young_convolution(*a_alpha, du);
      double num = besov_norm_fourier(du, plan.to, sys, num_enorm);
      rep.record(0.0, static_cast<int>(pi), num / denom);
    } catch (const std::exception& e) {
      rep.failures.push_back(e.what());
    }
  }
  return rep;
}

SweepReport semigroup_ray_check(const PolySymbolSpec& spec,
                                const DiagOperator& A, const Grid& grid,
                                double shift, double phi,
                                const SweepPlan& plan) {
  if (!(phi > kPi / 2.0) || !(phi < kPi))
    throw config_error("semigroup_ray_check: phi must be in (pi/2, pi)");
  double dmin = *std::min_element(A.entries.begin(), A.entries.end());
  if (!(dmin + shift > 0))
    throw config_error("semigroup_ray_check: pencil not strictly positive");

  ProbeEnsemble probes = ProbeEnsemble::make(grid, A.size(), plan.seed,
                                             plan.probes_per_family);
  SectorSamples samples = SectorSamples::make(
      Sector(phi), plan.mag_min, plan.mag_max, plan.per_decade,
      plan.extra_rays);

  SweepReport rep;
  rep.seed = plan.seed;
  for (cd lambda : samples.lambdas) {
    // (Q + a + lambda)^{-1} via the shifted pencil.
    DiagOperator shifted(A.space, A.entries);
    for (double& d : shifted.entries) d += shift;
    Symbol resolvent = build_resolvent_symbol(spec, shifted, lambda);
    for (std::size_t pi = 0; pi < probes.probes.size(); ++pi) {
      const Field& f = probes.probes[pi];
      try {
        double denom = lq_grid_norm(f, 2.0);
        if (denom == 0) continue;
        Field v = apply_multiplier(resolvent, f);
        rep.record(lambda, static_cast<int>(pi),
                   std::abs(lambda) * lq_grid_norm(v, 2.0) / denom);
      } catch (const std::exception& e) {
        rep.failures.push_back(e.what());
      }
    }
  }
  return rep;
}

}  // namespace besovlab
