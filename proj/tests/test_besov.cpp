#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "besovlab/besov.hpp"

using namespace besovlab;

namespace {

Field gaussian(const Grid& g, double width) {
  Field f(g, 1);
  for (std::int64_t p = 0; p < g.points(); ++p) {
    int idx[3];
    g.unravel(p, idx);
    double e = 0;
    for (int a = 0; a < g.dim(); ++a) {
      double x = g.coord(idx[a]);
      e += x * x;
    }
    f.at(p, 0) = std::exp(-e / (2.0 * width * width));
  }
  return f;
}

}  // namespace

TEST_CASE("finite difference matches the index-shift oracle") {
  Grid g(1, 8.0, 128);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> gauss_rng;
  Field f = gaussian(g, 0.8);  // boundary-decayed, so margins are immaterial
  for (int m : {1, 2}) {
    double y = 2 * g.spacing();
    Field d = finite_difference(f, 0, y, m);
    double worst = 0;
    for (int p = 8; p < g.samples() - 8; ++p) {
      cd oracle = 0.0;
      // (S_y - 1)^m via binomial expansion.
      for (int j = 0; j <= m; ++j) {
        double binom = m == 1 ? (j == 0 ? -1 : 1)
                              : (j == 0 ? 1 : (j == 1 ? -2 : 1));
        if (m == 1) binom = j == 0 ? -1.0 : 1.0;
        oracle += binom * f.at(p + 2 * j, 0);
      }
      worst = std::max(worst, std::abs(d.at(p, 0) - oracle));
    }
    CHECK(worst < 1e-9);
  }
  (void)gauss_rng;
  (void)rng;
}

TEST_CASE("fourier norm of a single dyadic block") {
  Grid g(1, 16.0, 512);
  DyadicSystem sys(g);
  // Spectrum living on one annulus: only band k contributes, so the norm is
  // 2^{ks} times the block's L_q norm for every r.
  int k = 3;
  Field fhat(g, 1, Domain::frequency);
  for (std::int64_t p = 0; p < g.points(); ++p) {
    double xi = g.freq(static_cast<int>(p));
    fhat.at(p, 0) = sys.phi_radial(std::abs(xi), k);
  }
  Field f = inverse_ft(fhat);
  for (double r : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
    BesovParams params(2.0, r, 1.5);
    double norm = besov_norm_fourier(f, params, sys);
    // Neighbor bands overlap the annulus, so compare against the direct sum.
    double expect = 0;
    for (int kk = 0; kk <= sys.k_max(); ++kk) {
      double bn = lq_grid_norm(sys.block(f, kk), 2.0);
      double w = std::pow(2.0, kk * params.s);
      if (std::isinf(r))
        expect = std::max(expect, w * bn);
      else
        expect += std::pow(w * bn, r);
    }
    if (!std::isinf(r)) expect = std::pow(expect, 1.0 / r);
    CHECK(norm == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("besov norms are homogeneous") {
  Grid g(1, 16.0, 256);
  DyadicSystem sys(g);
  Field f = gaussian(g, 1.0);
  BesovParams params(2.0, 2.0, 0.5);
  double base_f = besov_norm_fourier(f, params, sys);
  double base_d = besov_norm_difference(f, params, 1, 1.0);
  Field cf = cd(-3.0, 0.0) * f;
  CHECK(besov_norm_fourier(cf, params, sys) ==
        doctest::Approx(3.0 * base_f).epsilon(1e-12));
  CHECK(besov_norm_difference(cf, params, 1, 1.0) ==
        doctest::Approx(3.0 * base_d).epsilon(1e-12));
}

TEST_CASE("difference and fourier definitions agree within a bracket") {
  Grid g(1, 16.0, 512);
  DyadicSystem sys(g);
  Field f = gaussian(g, 1.0);
  for (double s : {0.5, 1.5}) {
    for (double r : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
      BesovParams params(2.0, r, s);
      int m = static_cast<int>(std::floor(s)) + 1;
      double dn = besov_norm_difference(f, params, m, 1.0);
      double fn = besov_norm_fourier(f, params, sys);
      double ratio = dn / fn;
      CHECK(ratio > 0.1);
      CHECK(ratio < 10.0);
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(BesovParams(0.5, 2.0, 1.0), config_error);
  CHECK_THROWS_AS(BesovParams(2.0, 0.5, 1.0), config_error);
  Grid g(1, 16.0, 256);
  Field f = gaussian(g, 1.0);
  CHECK_THROWS_AS(besov_norm_difference(f, BesovParams(2, 2, 1.5), 1, 1.0),
                  config_error);  // needs m > s
}

TEST_CASE("anisotropic norm is finite and scales") {
  Grid g(1, 16.0, 256);
  DyadicSystem sys(g);
  SequenceSpace space(2.0, {1.0, 4.0, 9.0});
  DiagOperator A(space);
  Field f(g, 3);
  Field env = gaussian(g, 1.0);
  for (std::int64_t p = 0; p < g.points(); ++p)
    for (int c = 0; c < 3; ++c) f.at(p, c) = env.at(p, 0) / (1.0 + c);
  AnisoParams params(2, BesovParams(2.0, 2.0, 1.0), A);
  double n1 = aniso_norm(f, params, sys);
  CHECK(n1 > 0);
  CHECK(std::isfinite(n1));
  CHECK(aniso_norm(cd(2.0, 0.0) * f, params, sys) ==
        doctest::Approx(2.0 * n1).epsilon(1e-10));
}
