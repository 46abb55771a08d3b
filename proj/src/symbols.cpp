#include "besovlab/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace besovlab {

namespace {

cd ixi_pow(std::span<const double> xi, std::span<const int> alpha) {
  cd v = 1.0;
  for (std::size_t a = 0; a < alpha.size(); ++a)
    for (int j = 0; j < alpha[a]; ++j) v *= cd(0.0, xi[a]);
  return v;
}

double abs_xi(std::span<const double> xi) {
  double s = 0;
  for (double x : xi) s += x * x;
  return std::sqrt(s);
}

int total(const std::vector<int>& beta) {
  int s = 0;
  for (int b : beta) s += b;
  return s;
}

// All multi-indices with |beta| <= order in `dim` variables.
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

double fd_step(double xi_abs, double scale) {
  return scale * std::max(1e-4, 1e-3 * (1.0 + xi_abs));
}

}  // namespace

double Symbol::op_norm(std::span<const double> xi) const {
  std::vector<cd> v(components);
  eval(xi, v);
  double m = 0;
  for (const cd& e : v) m = std::max(m, std::abs(e));
  return m;
}

Symbol scale_symbol(const Symbol& m,
                    std::function<double(std::span<const double>)> w,
                    const std::string& name) {
  Symbol out;
  out.components = m.components;
  out.name = name;
  out.eval = [inner = m.eval, w](std::span<const double> xi,
                                 std::span<cd> v) {
    inner(xi, v);
    double c = w(xi);
    for (cd& e : v) e *= c;
  };
  return out;
}

Symbol dilate_symbol(const Symbol& m, double a) {
  Symbol out;
  out.components = m.components;
  out.name = m.name + "(a.)";
  out.eval = [inner = m.eval, a](std::span<const double> xi,
                                 std::span<cd> v) {
    double scaled[3];
    for (std::size_t i = 0; i < xi.size(); ++i) scaled[i] = a * xi[i];
    inner(std::span<const double>(scaled, xi.size()), v);
  };
  return out;
}

cd PolySymbolSpec::L(std::span<const double> xi) const {
  cd s = 0.0;
  for (const auto& [alpha, a] : coeffs) s += a * ixi_pow(xi, alpha);
  return s;
}

cd PolySymbolSpec::L_deriv(std::span<const double> xi, int axis) const {
  cd s = 0.0;
  for (const auto& [alpha, a] : coeffs) {
    if (alpha[axis] == 0) continue;
    std::vector<int> lowered = alpha;
    lowered[axis] -= 1;
    s += a * cd(0.0, 1.0) * static_cast<double>(alpha[axis]) *
         ixi_pow(xi, lowered);
  }
  return s;
}

cd ConvKernelSpec::L(double xi) const {
  cd s = 0.0;
  cd ix = cd(0.0, xi);
  cd pw = 1.0;
  for (int k = 0; k <= order; ++k) {
    s += ahat[k](xi) * pw;
    pw *= ix;
  }
  return s;
}

double ConvKernelSpec::abs_sum(double xi) const {
  double s = 0;
  for (int k = 0; k <= order; ++k) s += std::abs(ahat[k](xi));
  return s;
}

double build_theta(std::span<const double> xi, int l) {
  if (l < 1) throw config_error("build_theta: l must be >= 1");
  double s = 0;
  for (double x : xi) s += std::pow(std::abs(x), l);
  return s;
}

Symbol build_embedding_symbol(const std::vector<int>& alpha,
                              const DiagOperator& A, int l, int sigma) {
  double x = static_cast<double>(total(alpha) + sigma) / l;
  if (x > 1.0 + 1e-12)
    throw config_error(
        "build_embedding_symbol: (|alpha|+sigma)/l must be <= 1");
  Symbol out;
  out.components = A.size();
  out.name = sigma ? "Psi_sigma" : "Psi";
  std::vector<double> apow(A.entries.size());
  for (std::size_t m = 0; m < apow.size(); ++m)
    apow[m] = std::pow(A.entries[m], 1.0 - x);
  out.eval = [alpha, l, sigma, d = A.entries, apow](
                 std::span<const double> xi, std::span<cd> v) {
    double theta = build_theta(xi, l);
    cd poly = ixi_pow(xi, alpha);
    if (sigma) poly *= std::pow(abs_xi(xi), sigma);
    for (std::size_t m = 0; m < d.size(); ++m)
      v[m] = poly * apow[m] / (d[m] + theta);
  };
  return out;
}

Symbol build_resolvent_symbol(const PolySymbolSpec& spec,
                              const DiagOperator& A, cd lambda) {
  Symbol out;
  out.components = A.size();
  out.name = "resolvent";
  out.eval = [spec, d = A.entries, lambda](std::span<const double> xi,
                                           std::span<cd> v) {
    cd shift = lambda + spec.L(xi);
    for (std::size_t m = 0; m < d.size(); ++m) {
      cd denom = d[m] + shift;
      if (std::abs(denom) < 1e-13)
        throw numeric_error("pencil nearly singular at m=" +
                            std::to_string(m + 1));
      v[m] = 1.0 / denom;
    }
  };
  out.deriv = [spec, d = A.entries, lambda](std::span<const double> xi,
                                            int axis, std::span<cd> v) {
    cd shift = lambda + spec.L(xi);
    cd dL = spec.L_deriv(xi, axis);
    for (std::size_t m = 0; m < d.size(); ++m) {
      cd denom = d[m] + shift;
      v[m] = -dL / (denom * denom);
    }
  };
  return out;
}

Symbol build_pencil_symbol(const PolySymbolSpec& spec, const DiagOperator& A,
                           cd lambda, const std::vector<int>& alpha) {
  Symbol out;
  out.components = A.size();
  out.name = "L1";
  out.eval = [spec, d = A.entries, lambda, alpha](std::span<const double> xi,
                                                  std::span<cd> v) {
    cd poly = ixi_pow(xi, alpha);
    cd shift = lambda + spec.L(xi);
    for (std::size_t m = 0; m < d.size(); ++m) v[m] = poly / (d[m] + shift);
  };
  return out;
}

EllipticSymbols build_elliptic_symbols(const PolySymbolSpec& spec,
                                       const DiagOperator& A, cd lambda) {
  EllipticSymbols out;
  out.sigma1.components = A.size();
  out.sigma1.name = "sigma1";
  out.sigma1.eval = [spec, d = A.entries, lambda](std::span<const double> xi,
                                                  std::span<cd> v) {
    cd shift = lambda + spec.L(xi);
    for (std::size_t m = 0; m < d.size(); ++m) v[m] = d[m] / (d[m] + shift);
  };
  out.sigma1.deriv = [spec, d = A.entries, lambda](std::span<const double> xi,
                                                   int axis, std::span<cd> v) {
    cd shift = lambda + spec.L(xi);
    cd dL = spec.L_deriv(xi, axis);
    for (std::size_t m = 0; m < d.size(); ++m) {
      cd denom = d[m] + shift;
      v[m] = -d[m] * dL / (denom * denom);
    }
  };

  const int two_l = spec.order;
  auto alphas = multi_indices(spec.dim, two_l);
  out.sigma2.components = A.size();
  out.sigma2.name = "sigma2";
  out.sigma2.eval = [spec, d = A.entries, lambda, alphas,
                     two_l](std::span<const double> xi, std::span<cd> v) {
    cd shift = lambda + spec.L(xi);
    cd poly_sum = 0.0;
    double abs_l = std::abs(lambda);
    for (const auto& alpha : alphas) {
      double w =
          std::pow(abs_l, 1.0 - static_cast<double>(total(alpha)) / two_l);
      poly_sum += w * ixi_pow(xi, alpha);
    }
    for (std::size_t m = 0; m < d.size(); ++m)
      v[m] = poly_sum / (d[m] + shift);
  };
  return out;
}

ConvSymbols build_conv_symbols(const ConvKernelSpec& spec,
                               const DiagOperator& A, cd lambda) {
  auto denom_at = [spec, d = A.entries](double xi, cd lambda_,
                                        std::size_t m) {
    return spec.aenv(xi) * d[m] + lambda_ + spec.L(xi);
  };
  ConvSymbols out;
  out.sigma0.components = A.size();
  out.sigma0.name = "conv_sigma0";
  out.sigma0.eval = [denom_at, lambda, M = A.size()](
                        std::span<const double> xi, std::span<cd> v) {
    for (int m = 0; m < M; ++m) v[m] = lambda / denom_at(xi[0], lambda, m);
  };
  out.sigma1.components = A.size();
  out.sigma1.name = "conv_sigma1";
  out.sigma1.eval = [denom_at, spec, d = A.entries, lambda](
                        std::span<const double> xi, std::span<cd> v) {
    for (std::size_t m = 0; m < d.size(); ++m)
      v[m] = spec.aenv(xi[0]) * d[m] / denom_at(xi[0], lambda, m);
  };
  out.sigma2.components = A.size();
  out.sigma2.name = "conv_sigma2";
  out.sigma2.eval = [denom_at, spec, M = A.size(), lambda](
                        std::span<const double> xi, std::span<cd> v) {
    cd num = 0.0;
    cd ix = cd(0.0, xi[0]);
    cd pw = 1.0;
    double abs_l = std::abs(lambda);
    for (int k = 0; k <= spec.order; ++k) {
      num += std::pow(abs_l, 1.0 - static_cast<double>(k) / spec.order) *
             spec.ahat[k](xi[0]) * pw;
      pw *= ix;
    }
    for (int m = 0; m < M; ++m) v[m] = num / denom_at(xi[0], lambda, m);
  };
  return out;
}

std::vector<cd> symbol_derivative(const Symbol& m, std::span<const double> xi,
                                  const std::vector<int>& beta,
                                  double step_scale) {
  if (total(beta) == 0) return m(xi);
  // Lower the first nonzero axis and central-difference it.
  int axis = 0;
  while (beta[axis] == 0) ++axis;
  std::vector<int> lowered = beta;
  lowered[axis] -= 1;
  double h = fd_step(abs_xi(xi), step_scale);
  std::vector<double> lo(xi.begin(), xi.end()), hi(xi.begin(), xi.end());
  lo[axis] -= h;
  hi[axis] += h;
  std::vector<cd> a = symbol_derivative(m, lo, lowered, step_scale);
  std::vector<cd> b = symbol_derivative(m, hi, lowered, step_scale);
  for (std::size_t i = 0; i < a.size(); ++i) b[i] = (b[i] - a[i]) / (2.0 * h);
  return b;
}

double mikhlin_constant(const Symbol& m, int order, const SymbolScan& scan) {
  auto betas = multi_indices(scan.grid.dim(), order);
  double sup = 0;
  std::int64_t checked = 0;
  scan.for_each([&](std::span<const double> xi) {
    double w1 = 1.0 + abs_xi(xi);
    for (const auto& beta : betas) {
      std::vector<cd> d = symbol_derivative(m, xi, beta);
      double nrm = 0;
      for (const cd& e : d) nrm = std::max(nrm, std::abs(e));
      sup = std::max(sup, std::pow(w1, total(beta)) * nrm);
    }
    // Consistency of the analytic path against central differences,
    // sampled sparsely.
    if (m.deriv && (checked++ % 97) == 0) {
      std::vector<cd> an(m.components), fd(m.components);
      for (int axis = 0; axis < scan.grid.dim(); ++axis) {
        m.deriv(xi, axis, an);
        std::vector<int> e(scan.grid.dim(), 0);
        e[axis] = 1;
        fd = symbol_derivative(m, xi, e);
        for (int c = 0; c < m.components; ++c) {
          double scale = std::max(1.0, std::abs(an[c]));
          if (std::abs(an[c] - fd[c]) / scale > 1e-4)
            throw numeric_error(
                "mikhlin_constant: analytic/difference derivative mismatch");
        }
      }
    }
  });
  return sup;
}

double hormander_constant(const Symbol& m, double p, int order,
                          const std::vector<double>& radii,
                          const SymbolScan& scan) {
  auto betas = multi_indices(scan.grid.dim(), order);
  const Grid& g = scan.grid;
  double cell = std::pow(kPi / g.half_width(), g.dim());  // freq cell measure
  double best = 0;
  for (const auto& beta : betas) {
    double inner = 0;
    std::vector<double> annuli(radii.size(), 0.0);
    std::vector<std::int64_t> counts(radii.size(), 0);
    scan.for_each([&](std::span<const double> xi) {
      double r = abs_xi(xi);
      std::vector<cd> d = symbol_derivative(m, xi, beta);
      double nrm = 0;
      for (const cd& e : d) nrm = std::max(nrm, std::abs(e));
      double vp = std::pow(nrm, p);
      if (r <= 2.0) inner += vp * cell;
      for (std::size_t i = 0; i < radii.size(); ++i)
        if (r >= radii[i] && r <= 4.0 * radii[i]) {
          annuli[i] += vp * cell;
          counts[i]++;
        }
    });
    best = std::max(best, std::pow(inner, 1.0 / p));
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (counts[i] < 4) continue;  // annulus unresolved; skip
      double val = std::pow(std::pow(radii[i], -g.dim()) * annuli[i], 1.0 / p);
      best = std::max(best, std::pow(radii[i], total(beta)) * val);
    }
  }
  return best;
}

MpEtaResult mp_eta_constant(const Symbol& m, double p, double eta,
                            const std::vector<double>& dilations,
                            const Grid& sample_grid) {
  if (dilations.empty()) throw config_error("mp_eta_constant: no dilations");
  double pprime = std::isinf(p) ? 1.0 : p / (p - 1.0);
  if (p == 1.0) pprime = std::numeric_limits<double>::infinity();
  double s = sample_grid.dim() * (1.0 / eta - (std::isinf(pprime) ? 0.0
                                                                  : 1.0 / pprime));
  BesovParams params(p, 1.0, s);
  DyadicSystem sys(sample_grid);
  VectorNorm sup_entries = [](std::span<const cd> v) {
    double mx = 0;
    for (const cd& e : v) mx = std::max(mx, std::abs(e));
    return mx;
  };
  MpEtaResult best{std::numeric_limits<double>::infinity(), dilations[0]};
  for (double a : dilations) {
    // Sample m(a xi) over the grid as a physical-domain field; the symbol's
    // own variable plays the role of the spatial variable here.
    Field samples(sample_grid, m.components, Domain::physical);
    std::vector<cd> v(m.components);
    for (std::int64_t pt = 0; pt < sample_grid.points(); ++pt) {
      double x[3];
      int idx[3];
      sample_grid.unravel(pt, idx);
      for (int ax = 0; ax < sample_grid.dim(); ++ax)
        x[ax] = a * sample_grid.coord(idx[ax]);
      m.eval(std::span<const double>(x, sample_grid.dim()), v);
      for (int c = 0; c < m.components; ++c) samples.at(pt, c) = v[c];
    }
    double norm = besov_norm_fourier(samples, params, sys, sup_entries);
    if (norm < best.value) best = {norm, a};
  }
  if (!std::isfinite(best.value))
    throw config_error("mp_eta_constant: all dilations overflow the grid");
  return best;
}

double blockwise_condition(const Symbol& m, double p, double eta, int K,
                           const Grid& sample_grid,
                           const std::vector<double>& dilations) {
  DyadicSystem sys(sample_grid);
  if (K > sys.k_max())
    throw config_error("blockwise_condition: K exceeds resolvable blocks");
  double sup = 0;
  for (int k = 0; k <= K; ++k) {
    Symbol mk = scale_symbol(
        m,
        [&sys, k](std::span<const double> xi) { return sys.phi(xi, k); },
        "phi_k.m");
    sup = std::max(sup,
                   mp_eta_constant(mk, p, eta, dilations, sample_grid).value);
  }
  return sup;
}

double lemma212_windows(const Symbol& m, int l, double u, int K,
                        const SymbolScan& scan) {
  auto alphas = multi_indices(scan.grid.dim(), l);
  const Grid& g = scan.grid;
  double cell = std::pow(kPi / g.half_width(), g.dim());
  double best = 0;
  for (int k = 0; k <= K; ++k) {
    Symbol mk = k == 0 ? m : dilate_symbol(m, std::ldexp(1.0, k - 1));
    double lo = k == 0 ? 0.0 : 1.0;  // I_0 = {|t|<=2}, I_1 = {1<=|t|<=4}
    double hi = k == 0 ? 2.0 : 4.0;
    for (const auto& alpha : alphas) {
      double acc = 0, sup = 0;
      scan.for_each([&](std::span<const double> xi) {
        double r = abs_xi(xi);
        if (r < lo || r > hi) return;
        std::vector<cd> d = symbol_derivative(mk, xi, alpha);
        double nrm = 0;
        for (const cd& e : d) nrm = std::max(nrm, std::abs(e));
        if (std::isinf(u))
          sup = std::max(sup, nrm);
        else
          acc += std::pow(nrm, u) * cell;
      });
      best = std::max(best, std::isinf(u) ? sup : std::pow(acc, 1.0 / u));
    }
    if (k == 0 && K == 0) break;
  }
  return best;
}

EllipticityReport ellipticity_check(const PolySymbolSpec& spec, double phi1,
                                    const SymbolScan& scan) {
  EllipticityReport rep{std::numeric_limits<double>::infinity(), true, {}};
  scan.for_each([&](std::span<const double> xi) {
    double denom = 0;
    for (double x : xi) denom += std::pow(std::abs(x), spec.order);
    if (denom == 0) return;
    cd L = spec.L(xi);
    double ratio = std::abs(L) / denom;
    if (ratio < rep.K_hat) {
      rep.K_hat = ratio;
      rep.worst_xi.assign(xi.begin(), xi.end());
    }
    if (std::abs(L) > 1e-300 && std::abs(std::arg(L)) > phi1 + 1e-12)
      rep.sector_ok = false;
  });
  return rep;
}

Condition51Report condition51_check(const ConvKernelSpec& spec,
                                    const SymbolScan& scan) {
  Condition51Report rep{std::numeric_limits<double>::infinity(), true, 0.0};
  scan.for_each([&](std::span<const double> xi) {
    double x = xi[0];
    if (x == 0.0) return;
    double denom = std::pow(std::abs(x), spec.order) * spec.abs_sum(x);
    cd L = spec.L(x);
    if (denom <= 0) {
      rep.C_hat = 0.0;
      rep.worst_xi = x;
      return;
    }
    double ratio = std::abs(L) / denom;
    if (ratio < rep.C_hat) {
      rep.C_hat = ratio;
      rep.worst_xi = x;
    }
  });
  if (!std::isfinite(rep.C_hat)) rep.C_hat = 0.0;
  return rep;
}

std::map<std::string, double> derivative_bounds_check(
    const ConvKernelSpec& spec, const DiagOperator& A,
    const std::vector<cd>& lambdas, const SymbolScan& scan) {
  for (cd l : lambdas)
    if (std::abs(l) == 0.0)
      throw config_error(
          "derivative_bounds_check: sweep requires |lambda| >= lambda0 > 0");
  std::map<std::string, double> rep;
  auto upd = [&rep](const std::string& key, double v) {
    auto [it, inserted] = rep.emplace(key, v);
    if (!inserted) it->second = std::max(it->second, v);
  };

  // A'(xi) A^{-1}(xi) = aenv'(xi)/aenv(xi) for the separable family.
  auto env_deriv = [&spec](double xi, int order) {
    double h = fd_step(std::abs(xi), 1.0);
    if (order == 1) return (spec.aenv(xi + h) - spec.aenv(xi - h)) / (2 * h);
    return (spec.aenv(xi + h) - 2 * spec.aenv(xi) + spec.aenv(xi - h)) /
           (h * h);
  };
  scan.for_each([&](std::span<const double> xiv) {
    double xi = xiv[0];
    for (int mo = 1; mo <= 2; ++mo) {
      double ratio = std::abs(env_deriv(xi, mo) / spec.aenv(xi));
      upd("A_deriv_ratio_m" + std::to_string(mo), ratio);
      upd("A_deriv_ratio_weighted_m" + std::to_string(mo),
          std::pow(std::abs(xi), mo) * ratio);
    }
    for (int k = 0; k <= spec.order; ++k)
      for (int mo = 0; mo <= 2; ++mo)
        upd("xi_m_ahat_" + std::to_string(k),
            std::pow(std::abs(xi), mo) * std::abs(spec.ahat[k](xi)));
  });

  for (cd lambda : lambdas) {
    ConvSymbols sig = build_conv_symbols(spec, A, lambda);
    const Symbol* syms[3] = {&sig.sigma0, &sig.sigma1, &sig.sigma2};
    for (int i = 0; i < 3; ++i) {
      for (int mo = 0; mo <= 2; ++mo) {
        std::vector<int> beta{mo};
        double sup = 0;
        scan.for_each([&](std::span<const double> xiv) {
          std::vector<cd> d = symbol_derivative(*syms[i], xiv, beta);
          double nrm = 0;
          for (const cd& e : d) nrm = std::max(nrm, std::abs(e));
          sup = std::max(sup,
                         std::pow(std::abs(xiv[0]), mo) * nrm);
        });
        upd("sigma" + std::to_string(i) + "_weighted_d" + std::to_string(mo),
            sup);
      }
    }
  }
  return rep;
}

}  // namespace besovlab
