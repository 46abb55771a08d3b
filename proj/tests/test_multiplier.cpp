#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "besovlab/multiplier.hpp"
#include "besovlab/reference.hpp"

using namespace besovlab;

namespace {

double max_dev(const Field& a, const Field& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

Symbol scalar_symbol(std::function<cd(double)> f, const std::string& name) {
  Symbol m;
  m.components = 1;
  m.name = name;
  m.eval = [f](std::span<const double> xi, std::span<cd> v) { v[0] = f(xi[0]); };
  return m;
}

}  // namespace

TEST_CASE("probe corpus is deterministic and boundary-decayed") {
  Grid g(1, 16.0, 256);
  ProbeEnsemble a = ProbeEnsemble::make(g, 4, 7, 3);
  ProbeEnsemble b = ProbeEnsemble::make(g, 4, 7, 3);
  REQUIRE(a.probes.size() == 12);
  for (std::size_t i = 0; i < a.probes.size(); ++i)
    CHECK(max_dev(a.probes[i], b.probes[i]) == 0.0);
  ProbeEnsemble c = ProbeEnsemble::make(g, 4, 8, 3);
  CHECK(max_dev(a.probes[0], c.probes[0]) > 1e-6);
  // Gaussian and mixing families decay below 1e-14 at the box edge.
  for (std::size_t i : {std::size_t(0), std::size_t(1), std::size_t(9)}) {
    const Field& f = a.probes[i];
    for (int ci = 0; ci < f.components; ++ci)
      CHECK(std::abs(f.at(0, ci)) < 1e-14);
  }
}

TEST_CASE("identity and derivative symbols") {
  Grid g(1, 16.0, 256);
  ProbeEnsemble probes = ProbeEnsemble::make(g, 2, 3, 1);
  const Field& f = probes.probes.front();
  Symbol ident = scalar_symbol([](double) { return cd(1.0, 0.0); }, "1");
  CHECK(max_dev(apply_multiplier(ident, f), f) < 1e-12);
  Symbol ixi = scalar_symbol([](double xi) { return cd(0.0, xi); }, "ixi");
  CHECK(max_dev(apply_multiplier(ixi, f), spectral_derivative(f, {1})) <
        1e-12);
}

TEST_CASE("multiplier application is linear and composes") {
  Grid g(1, 16.0, 256);
  ProbeEnsemble probes = ProbeEnsemble::make(g, 2, 5, 1);
  const Field& f = probes.probes[0];
  const Field& h = probes.probes[1];
  Symbol m1 = scalar_symbol(
      [](double xi) { return cd(1.0, 0.0) / (1.0 + xi * xi); }, "m1");
  Symbol m2 = scalar_symbol([](double xi) { return cd(0.0, xi); }, "m2");
  Field lin = apply_multiplier(m1, cd(2.0, 0.0) * f + cd(0.0, 1.0) * h);
  Field expect = cd(2.0, 0.0) * apply_multiplier(m1, f) +
                 cd(0.0, 1.0) * apply_multiplier(m1, h);
  CHECK(max_dev(lin, expect) < 1e-11);

  Symbol prod = scalar_symbol(
      [](double xi) { return cd(0.0, xi) / (1.0 + xi * xi); }, "m1m2");
  Field composed = apply_multiplier(m1, apply_multiplier(m2, f));
  CHECK(max_dev(composed, apply_multiplier(prod, f)) < 1e-10);
}

TEST_CASE("serial reference multiplier agrees with the parallel kernel") {
  Grid g(1, 16.0, 512);
  ProbeEnsemble probes = ProbeEnsemble::make(g, 3, 11, 1);
  Symbol m = scalar_symbol(
      [](double xi) { return std::exp(cd(0.0, 0.3 * xi)) / (2.0 + xi * xi); },
      "m");
  for (const Field& f : probes.probes)
    CHECK(max_dev(apply_multiplier(m, f),
                  reference::serial_apply_multiplier(m, f)) < 1e-13);
}

TEST_CASE("young convolution identities") {
  Grid g(1, 16.0, 256);
  // Discrete delta: 1/h at the origin node -> K = identity.
  Field delta(g, 1);
  delta.at(g.samples() / 2, 0) = 1.0 / g.spacing();
  ProbeEnsemble probes = ProbeEnsemble::make(g, 1, 2, 1);
  const Field& f = probes.probes.front();
  CHECK(max_dev(young_convolution(delta, f), f) < 1e-10);

  // Gaussians convolve to a Gaussian with summed variances:
  // N(0,a^2) * N(0,b^2) = sqrt(2 pi) a b / sqrt(a^2+b^2) N(0, a^2+b^2).
  double a = 0.8, b = 0.6;
  Field ka(g, 1), kb(g, 1);
  for (std::int64_t p = 0; p < g.points(); ++p) {
    double x = g.coord(static_cast<int>(p));
    ka.at(p, 0) = std::exp(-x * x / (2 * a * a));
    kb.at(p, 0) = std::exp(-x * x / (2 * b * b));
  }
  Field conv = young_convolution(ka, kb);
  double s2 = a * a + b * b;
  double amp = std::sqrt(2 * kPi) * a * b / std::sqrt(s2);
  double worst = 0;
  for (std::int64_t p = 0; p < g.points(); ++p) {
    double x = g.coord(static_cast<int>(p));
    worst = std::max(worst, std::abs(conv.at(p, 0) -
                                     amp * std::exp(-x * x / (2 * s2))));
  }
  CHECK(worst < 1e-8);

  // Scalar convolution commutes.
  CHECK(max_dev(young_convolution(ka, kb), young_convolution(kb, ka)) <
        1e-10);

  // K 0 = 0.
  Field zero(g, 1);
  CHECK(lq_grid_norm(young_convolution(ka, zero), 2.0) == 0.0);
}

TEST_CASE("Lq norm estimates") {
  Grid g(1, 16.0, 256);
  ProbeEnsemble probes = ProbeEnsemble::make(g, 2, 17, 4);
  OperatorClosure ident = [](const Field& f) { return f; };
  CHECK(estimate_Lq_norm(ident, 2.0, 2.0, probes) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // Classical Young bound ||k * f||_q <= ||k||_1 ||f||_q.
  Field k(g, 1);
  for (std::int64_t p = 0; p < g.points(); ++p) {
    double x = g.coord(static_cast<int>(p));
    k.at(p, 0) = std::exp(-x * x) * (1.0 + 0.5 * std::cos(x));
  }
  double k1 = kernel_Leta_norm(k, 1.0);
  OperatorClosure K = [&k](const Field& f) { return young_convolution(k, f); };
  for (double q : {1.5, 2.0, 4.0}) {
    double est = estimate_Lq_norm(K, q, q, probes);
    CHECK(est <= k1 * (1.0 + 1e-9));
  }
}

TEST_CASE("estimate monotonicity in probe inclusion") {
  Grid g(1, 16.0, 256);
  ProbeEnsemble small = ProbeEnsemble::make(g, 2, 17, 2);
  ProbeEnsemble big = small;
  ProbeEnsemble extra = ProbeEnsemble::make(g, 2, 18, 2);
  big.probes.insert(big.probes.end(), extra.probes.begin(),
                    extra.probes.end());
  Symbol m = scalar_symbol(
      [](double xi) { return cd(1.0, 0.0) / (1.0 + std::abs(xi)); }, "m");
  OperatorClosure T = multiplier_closure(m);
  CHECK(estimate_Lq_norm(T, 2.0, 2.0, big) >=
        estimate_Lq_norm(T, 2.0, 2.0, small));
}

TEST_CASE("block identity of the multiplier theorem") {
  Grid g(1, 16.0, 512);
  DyadicSystem sys(g);
  ProbeEnsemble probes = ProbeEnsemble::make(g, 2, 23, 2);
  Symbol m = scalar_symbol(
      [](double xi) { return std::exp(cd(0.0, xi * 0.2)) / (1.0 + xi * xi); },
      "m");
  for (int k : {1, 2, 3}) {
    Symbol mpsi = scale_symbol(
        m,
        [&sys, k](std::span<const double> xi) {
          return sys.phi(xi, k - 1) + sys.phi(xi, k) + sys.phi(xi, k + 1);
        },
        "m psi_k");
    for (const Field& f : probes.probes) {
      Field lhs = sys.block(apply_multiplier(m, f), k);
      Field rhs = apply_multiplier(mpsi, sys.block(f, k));
      CHECK(max_dev(lhs, rhs) < 1e-10);
    }
  }
}

TEST_CASE("fourier type constants") {
  Grid g(1, 16.0, 512);
  ProbeEnsemble probes = ProbeEnsemble::make(g, 1, 29, 3);
  // p = 2 is Plancherel: the constant is exactly sqrt(2 pi).
  CHECK(fourier_type_constant(2.0, probes) ==
        doctest::Approx(std::sqrt(2 * kPi)).epsilon(1e-10));
  // p < 2 estimates stay finite.
  CHECK(std::isfinite(fourier_type_constant(1.5, probes)));
  CHECK_THROWS_AS(fourier_type_constant(3.0, probes), config_error);
}

TEST_CASE("besov operator norm estimate for a multiplier") {
  Grid g(1, 16.0, 512);
  DyadicSystem sys(g);
  ProbeEnsemble probes = ProbeEnsemble::make(g, 1, 31, 2);
  Symbol m = scalar_symbol(
      [](double xi) { return cd(1.0, 0.0) / (1.0 + xi * xi); }, "m");
  BesovParams params(2.0, 2.0, 1.0);
  double est = estimate_besov_norm(multiplier_closure(m), params, params,
                                   probes, sys);
  CHECK(est > 0);
  CHECK(est <= 1.0 + 1e-9);  // |m| <= 1 pointwise, blocks diagonalize
  // Scaling: the estimate is 1-homogeneous in the symbol.
  Symbol m3 = scale_symbol(m, [](std::span<const double>) { return 3.0; },
                           "3m");
  CHECK(estimate_besov_norm(multiplier_closure(m3), params, params, probes,
                            sys) == doctest::Approx(3.0 * est).epsilon(1e-10));
}
