#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "besovlab/symbols.hpp"

using namespace besovlab;

namespace {

PolySymbolSpec laplace1d() {
  PolySymbolSpec spec;
  spec.dim = 1;
  spec.order = 2;
  spec.coeffs[{2}] = -1.0;  // a (i xi)^2 with a = -1  =>  L = xi^2
  return spec;
}

DiagOperator squares(int M, double q = 2.0) {
  std::vector<double> d(M);
  for (int m = 1; m <= M; ++m) d[m - 1] = m * m;
  return DiagOperator(SequenceSpace(q, std::move(d)));
}

}  // namespace

TEST_CASE("polynomial symbol evaluation and derivative") {
  PolySymbolSpec spec;
  spec.dim = 2;
  spec.order = 2;
  spec.coeffs[{2, 0}] = -1.0;
  spec.coeffs[{0, 2}] = -1.0;
  spec.coeffs[{1, 1}] = cd(0.0, 0.5);
  double xi[2] = {1.5, -2.0};
  // L = xi1^2 + xi2^2 + 0.5i (i xi1)(i xi2) = xi1^2+xi2^2 - 0.5i xi1 xi2.
  cd expect = cd(1.5 * 1.5 + 4.0, 0.0) +
              cd(0.0, 0.5) * cd(0.0, 1.5) * cd(0.0, -2.0);
  CHECK(std::abs(spec.L(xi) - expect) < 1e-14);
  for (int axis = 0; axis < 2; ++axis) {
    double h = 1e-6;
    double lo[2] = {xi[0], xi[1]}, hi[2] = {xi[0], xi[1]};
    lo[axis] -= h;
    hi[axis] += h;
    cd fd = (spec.L(hi) - spec.L(lo)) / (2.0 * h);
    CHECK(std::abs(spec.L_deriv(xi, axis) - fd) < 1e-7);
  }
}

TEST_CASE("theta and the embedding symbol") {
  double xi[2] = {-2.0, 3.0};
  CHECK(build_theta(xi, 2) == doctest::Approx(4.0 + 9.0));
  CHECK(build_theta(xi, 1) == doctest::Approx(5.0));

  DiagOperator A = squares(4);
  Symbol psi = build_embedding_symbol({1}, A, 2);
  double x1[1] = {2.0};
  std::vector<cd> v = psi(x1);
  // (i xi) d^{1/2} / (d + xi^2) entrywise.
  for (int m = 0; m < 4; ++m) {
    double d = A.entries[m];
    cd expect = cd(0.0, 2.0) * std::sqrt(d) / (d + 4.0);
    CHECK(std::abs(v[m] - expect) < 1e-14);
  }
  CHECK_THROWS_AS(build_embedding_symbol({3}, A, 2), config_error);
}

TEST_CASE("elliptic symbol closed forms") {
  DiagOperator A = squares(3);
  cd lambda(4.0, 1.0);
  EllipticSymbols sym = build_elliptic_symbols(laplace1d(), A, lambda);
  double xi[1] = {1.5};
  cd L(1.5 * 1.5, 0.0);
  std::vector<cd> s1 = sym.sigma1(xi);
  for (int m = 0; m < 3; ++m) {
    double d = A.entries[m];
    CHECK(std::abs(s1[m] - d / (d + lambda + L)) < 1e-14);
  }
  // sigma2 = [ |l|^1 + |l|^{1/2}(i xi) - (i xi)^2... ] with the configured
  // coefficient structure; verify against a direct sum over multi-indices.
  std::vector<cd> s2 = sym.sigma2(xi);
  double al = std::abs(lambda);
  cd poly = std::pow(al, 1.0) + std::pow(al, 0.5) * cd(0.0, 1.5) +
            cd(0.0, 1.5) * cd(0.0, 1.5);
  for (int m = 0; m < 3; ++m)
    CHECK(std::abs(s2[m] - poly / (A.entries[m] + lambda + L)) < 1e-12);
}

TEST_CASE("convolution symbols at a point") {
  ConvKernelSpec spec;
  spec.order = 2;
  spec.ahat = {[](double) { return cd(0.1, 0.0); },
               [](double) { return cd(0.0, 0.0); },
               [](double) { return cd(1.0, 0.0); }};
  spec.aenv = [](double xi) { return 1.0 / (1.0 + 0.01 * xi * xi); };
  DiagOperator A = squares(2);
  cd lambda(9.0, 0.0);
  ConvSymbols sym = build_conv_symbols(spec, A, lambda);
  double xiv[1] = {2.0};
  double env = spec.aenv(2.0);
  cd L = cd(0.1, 0.0) + cd(1.0, 0.0) * cd(0.0, 2.0) * cd(0.0, 2.0);
  for (int m = 0; m < 2; ++m) {
    cd denom = env * A.entries[m] + lambda + L;
    CHECK(std::abs(sym.sigma0(xiv)[m] - lambda / denom) < 1e-13);
    CHECK(std::abs(sym.sigma1(xiv)[m] - env * A.entries[m] / denom) < 1e-13);
  }
  cd num = std::pow(9.0, 1.0) * 0.1 +
           std::pow(9.0, 0.0) * cd(1.0, 0.0) * cd(0.0, 2.0) * cd(0.0, 2.0);
  CHECK(std::abs(sym.sigma2(xiv)[0] -
                 num / (env * A.entries[0] + lambda + L)) < 1e-12);
}

TEST_CASE("symbol derivative agrees with the analytic path") {
  DiagOperator A = squares(3);
  Symbol res = build_resolvent_symbol(laplace1d(), A, cd(5.0, 2.0));
  double xi[1] = {1.2};
  std::vector<cd> an(3), fd = symbol_derivative(res, xi, {1});
  res.deriv(xi, 0, an);
  for (int m = 0; m < 3; ++m)
    CHECK(std::abs(an[m] - fd[m]) < 1e-6 * std::max(1.0, std::abs(an[m])));
}

TEST_CASE("dilation and scaling combinators") {
  DiagOperator A = squares(2);
  Symbol res = build_resolvent_symbol(laplace1d(), A, cd(3.0, 0.0));
  Symbol dil = dilate_symbol(res, 2.0);
  double xi[1] = {0.7};
  double xi2[1] = {1.4};
  for (int m = 0; m < 2; ++m)
    CHECK(std::abs(dil(xi)[m] - res(xi2)[m]) < 1e-15);
  Symbol sc = scale_symbol(res, [](std::span<const double>) { return 2.5; },
                           "scaled");
  for (int m = 0; m < 2; ++m)
    CHECK(std::abs(sc(xi)[m] - 2.5 * res(xi)[m]) < 1e-15);
}

TEST_CASE("mikhlin constant of a scalar resolvent") {
  Symbol m;
  m.components = 1;
  m.name = "1/(1+xi^2)";
  m.eval = [](std::span<const double> xi, std::span<cd> v) {
    v[0] = 1.0 / (1.0 + xi[0] * xi[0]);
  };
  SymbolScan scan(Grid(1, 16.0, 256));
  double c = mikhlin_constant(m, 2, scan);
  CHECK(c >= 1.0);  // the |beta| = 0 term attains 1 at xi = 0
  CHECK(c < 10.0);
}

TEST_CASE("ellipticity and kernel smallness checks") {
  SymbolScan scan(Grid(1, 16.0, 256));
  EllipticityReport er = ellipticity_check(laplace1d(), 0.1, scan);
  CHECK(er.K_hat == doctest::Approx(1.0));
  CHECK(er.sector_ok);

  PolySymbolSpec bad;
  bad.dim = 1;
  bad.order = 2;
  bad.coeffs[{2}] = 1.0;  // L = -xi^2: leaves every proper sector
  EllipticityReport eb = ellipticity_check(bad, 0.5, scan);
  CHECK_FALSE(eb.sector_ok);

  ConvKernelSpec spec;
  spec.order = 2;
  spec.ahat = {[](double) { return cd(0.0, 0.0); },
               [](double) { return cd(0.0, 0.0); },
               [](double) { return cd(1.0, 0.0); }};
  spec.aenv = [](double) { return 1.0; };
  Condition51Report cr = condition51_check(spec, scan);
  CHECK(cr.C_hat == doctest::Approx(1.0));  // |xi^2| / (|xi|^2 * 1)
}

TEST_CASE("besov-type multiplier constant is finite and dilation-searched") {
  Symbol m;
  m.components = 1;
  m.name = "gauss";
  m.eval = [](std::span<const double> xi, std::span<cd> v) {
    v[0] = std::exp(-xi[0] * xi[0]);
  };
  MpEtaResult r = mp_eta_constant(m, 2.0, 2.0, {0.5, 1.0, 2.0},
                                  Grid(1, 16.0, 256));
  CHECK(std::isfinite(r.value));
  CHECK(r.value > 0);
  CHECK((r.argmin_a == 0.5 || r.argmin_a == 1.0 || r.argmin_a == 2.0));
}

TEST_CASE("weighted derivative bounds of the convolution family") {
  ConvKernelSpec spec;
  spec.order = 2;
  spec.ahat = {[](double) { return cd(0.0, 0.0); },
               [](double) { return cd(0.0, 0.0); },
               [](double) { return cd(1.0, 0.0); }};
  spec.aenv = [](double xi) { return 1.0 / (1.0 + 0.001 * xi * xi); };
  DiagOperator A = squares(3);
  std::vector<cd> lambdas{cd(1.0, 0.0), cd(10.0, 3.0), cd(100.0, 0.0)};
  SymbolScan scan(Grid(1, 16.0, 128));
  auto rep = derivative_bounds_check(spec, A, lambdas, scan);
  CHECK(!rep.empty());
  for (const auto& [key, v] : rep) {
    INFO(key);
    CHECK(std::isfinite(v));
  }
  CHECK_THROWS_AS(derivative_bounds_check(spec, A, {cd(0.0, 0.0)}, scan),
                  config_error);
}
