#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "besovlab/estimates.hpp"

using namespace besovlab;

namespace {

PolySymbolSpec laplace1d() {
  PolySymbolSpec spec;
  spec.dim = 1;
  spec.order = 2;
  spec.coeffs[{2}] = -1.0;
  return spec;
}

DiagOperator squares(int M) {
  std::vector<double> d(M);
  for (int m = 1; m <= M; ++m) d[m - 1] = m * m;
  return DiagOperator(SequenceSpace(2.0, std::move(d)));
}

SweepPlan small_plan() {
  SweepPlan plan(Sector(kPi / 3), BesovParams(2.0, 2.0, 1.0),
                 BesovParams(2.0, 2.0, 1.0));
  plan.mag_min = 1.0;
  plan.mag_max = 100.0;
  plan.per_decade = 3;
  plan.probes_per_family = 1;
  plan.seed = 5;
  return plan;
}

}  // namespace

TEST_CASE("sweep plan validation and samples") {
  CHECK_THROWS_AS(SweepPlan(Sector(kPi / 3), BesovParams(2, 2, 1),
                            BesovParams(2, 1, 1)),
                  config_error);
  SweepPlan plan = small_plan();
  std::vector<cd> ls = plan.lambdas();
  CHECK(ls.size() >= 12);  // >= 2 decades x 3 per decade x 3 rays
  for (cd l : ls) CHECK(plan.sector.contains(l));
}

TEST_CASE("sweep report bookkeeping") {
  SweepReport rep;
  rep.record(cd(1.5, 0.0), 0, 2.0);
  rep.record(cd(15.0, 0.0), 1, 4.0);
  rep.record(cd(150.0, 0.0), 0, 3.0);
  CHECK(rep.sup == 4.0);
  CHECK(rep.per_decade_sup.at(0) == 2.0);
  CHECK(rep.per_decade_sup.at(1) == 4.0);
  CHECK(rep.per_decade_spread() == doctest::Approx(2.0));
  nlohmann::json j = nlohmann::json::parse(rep.to_json());
  CHECK(j["sup"] == 4.0);
  CHECK(j["table"].size() == 3);
  std::string csv = rep.to_csv();
  CHECK(csv.find("lambda_re") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("elliptic coercive sweep is uniform across decades") {
  Grid g(1, 16.0, 128);
  SweepReport rep = coercive_sweep_elliptic(laplace1d(), squares(4), g,
                                            kPi / 12, small_plan());
  CHECK(rep.failures.empty());
  CHECK(std::isfinite(rep.sup));
  CHECK(rep.sup > 0);
  CHECK(rep.per_decade_spread() < 3.0);
}

TEST_CASE("single-mode coercive ratio matches the arithmetic oracle") {
  // With a single Fourier mode the solve and all norms collapse to scalar
  // arithmetic; the measured ratio must match it.
  Grid g(1, 16.0, 128);
  DiagOperator A(SequenceSpace(2.0, {2.0}));
  double kappa = kPi * 8 / g.half_width();
  cd lambda(10.0, 0.0);
  Field f(g, 1);
  for (std::int64_t p = 0; p < g.points(); ++p)
    f.at(p, 0) = std::exp(cd(0.0, kappa * g.coord(static_cast<int>(p))));

  DyadicSystem sys(g);
  VectorNorm enorm = weighted_lq_enorm(A.space);
  BesovParams params(2.0, 2.0, 1.0);
  Symbol resolvent = build_resolvent_symbol(laplace1d(), A, lambda);
  Field u = apply_multiplier(resolvent, f);
  double denom = besov_norm_fourier(f, params, sys, enorm);
  double lhs = 0;
  cd pencil = A.entries[0] + lambda + kappa * kappa;
  // |lambda|^{1-j/2} |(i kappa)^j| / |pencil| per derivative order j, plus
  // the A-term |d| / |pencil|; Besov weights cancel in the ratio.
  for (int j = 0; j <= 2; ++j)
    lhs += std::pow(std::abs(lambda), 1.0 - j / 2.0) *
           std::pow(kappa, j) / std::abs(pencil);
  lhs += A.entries[0] / std::abs(pencil);
  double measured =
      (std::pow(std::abs(lambda), 1.0) *
           besov_norm_fourier(u, params, sys, enorm) +
       std::pow(std::abs(lambda), 0.5) *
           besov_norm_fourier(spectral_derivative(u, {1}), params, sys,
                              enorm) +
       besov_norm_fourier(spectral_derivative(u, {2}), params, sys, enorm) +
       2.0 * besov_norm_fourier(u, params, sys, enorm)) /
      denom;
  CHECK(measured == doctest::Approx(lhs).epsilon(1e-2));
}

TEST_CASE("convolution coercive sweep stays bounded") {
  Grid g(1, 16.0, 128);
  ConvKernelSpec spec;
  spec.order = 2;
  spec.ahat = {[](double) { return cd(0.0, 0.0); },
               [](double) { return cd(0.0, 0.0); },
               [](double) { return cd(-1.0, 0.0); }};
  spec.aenv = [](double) { return 1.0; };
  SweepReport rep =
      coercive_sweep_convolution(spec, squares(3), g, 1.0, small_plan());
  CHECK(rep.failures.empty());
  CHECK(std::isfinite(rep.sup));
  CHECK(rep.per_decade_spread() < 3.0);

  CHECK_THROWS_AS(
      coercive_sweep_convolution(spec, squares(3), g, 0.0, small_plan()),
      config_error);
}

TEST_CASE("embedding sweep and its endpoints") {
  Grid g(1, 16.0, 256);
  DiagOperator A = squares(4);
  SweepPlan plan = small_plan();
  SweepReport rep = embedding_sweep({1}, 2, A, g, plan);  // x = 1/2
  CHECK(rep.failures.empty());
  CHECK(std::isfinite(rep.sup));
  CHECK(rep.sup > 0);
  CHECK(rep.metadata_numbers.at("x") == doctest::Approx(0.5));

  // x = 1 endpoint: identity fractional power.
  SweepReport endpoint = embedding_sweep({2}, 2, A, g, plan);
  CHECK(endpoint.metadata_numbers.at("x") == doctest::Approx(1.0));
  CHECK(std::isfinite(endpoint.sup));

  CHECK_THROWS_AS(embedding_sweep({2}, 2, A, g, plan, 1), config_error);
}

TEST_CASE("convolution variant of the embedding is Young-bounded") {
  Grid g(1, 16.0, 256);
  DiagOperator A = squares(3);
  SweepPlan plan = small_plan();
  Field kernel(g, 1);
  for (std::int64_t p = 0; p < g.points(); ++p) {
    double x = g.coord(static_cast<int>(p));
    kernel.at(p, 0) = std::exp(-x * x);
  }
  SweepReport plain = embedding_sweep({1}, 2, A, g, plan);
  SweepReport conv = embedding_sweep({1}, 2, A, g, plan, 0, &kernel);
  double k1 = kernel_Leta_norm(kernel, 1.0);
  CHECK(conv.sup <= k1 * plain.sup + 1e-9);
}

TEST_CASE("semigroup ray check against the scalar oracle") {
  Grid g(1, 16.0, 128);
  DiagOperator A(SequenceSpace(2.0, {2.0, 5.0}));
  PolySymbolSpec none;
  none.dim = 1;
  none.order = 2;
  none.coeffs[{0}] = 0.0;  // L = 0: the pure operator pencil
  SweepPlan plan = small_plan();
  double phi = 3.0 * kPi / 4.0;
  SweepReport rep = semigroup_ray_check(none, A, g, 1.0, phi, plan);
  CHECK(rep.failures.empty());
  // Oracle: sup over the sampled lambda of |lambda| max_m 1/|d_m + 1 + la|.
  double oracle = 0;
  for (cd lam :
       SectorSamples::make(Sector(phi), plan.mag_min, plan.mag_max,
                           plan.per_decade, plan.extra_rays)
           .lambdas)
    for (double d : A.entries)
      oracle = std::max(oracle, std::abs(lam) / std::abs(d + 1.0 + lam));
  CHECK(rep.sup <= oracle + 1e-9);
  CHECK(rep.sup > 0.3 * oracle);  // probes do excite the worst component
  CHECK_THROWS_AS(semigroup_ray_check(none, A, g, 1.0, kPi / 4, plan),
                  config_error);
}

TEST_CASE("embedding sigma arithmetic") {
  CHECK(embedding_sigma(1, 2.0, 2.0) == 2);  // ceil(1*(1+1/2-1/2))+1
  CHECK(embedding_sigma(1, 2.0, 4.0) == 2);  // ceil(3/4)+1
  CHECK(embedding_sigma(2, 2.0, std::numeric_limits<double>::infinity()) ==
        2);  // ceil(2*(1-1/2))+1 = 2... ceil(1)+1
}

TEST_CASE("sweeps are reproducible from the seed") {
  Grid g(1, 16.0, 128);
  SweepReport a = coercive_sweep_elliptic(laplace1d(), squares(2), g,
                                          kPi / 12, small_plan());
  SweepReport b = coercive_sweep_elliptic(laplace1d(), squares(2), g,
                                          kPi / 12, small_plan());
  REQUIRE(a.table.size() == b.table.size());
  for (std::size_t i = 0; i < a.table.size(); ++i)
    CHECK(a.table[i].ratio == b.table[i].ratio);
}
