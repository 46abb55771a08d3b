// Benchmark comparing the OpenMP kernels with their serial reference twins:
// multiplier application, L_q grid norms, and symbol sup scans.

#include <chrono>
#include <cstdio>

#include "besovlab/multiplier.hpp"
#include "besovlab/reference.hpp"

namespace bl = besovlab;

namespace {

template <class F>
double time_ms(F&& f, int reps) {
  // One warm-up run (FFTW plans, page faults), then the timed average.
  f();
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-26s %10.3f ms %10.3f ms %8.2fx\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
  const int M = 16;
  bl::Grid g(1, 16.0, 1 << 16);
  bl::SequenceSpace space(2.0, [] {
    std::vector<double> d(M);
    for (int m = 1; m <= M; ++m) d[m - 1] = m * m;
    return d;
  }());
  bl::DiagOperator A(space);
  bl::PolySymbolSpec spec;
  spec.dim = 1;
  spec.order = 2;
  spec.coeffs[{2}] = -1.0;  // L(xi) = xi^2
  bl::EllipticSymbols sym = bl::build_elliptic_symbols(spec, A, 10.0);

  bl::ProbeEnsemble probes = bl::ProbeEnsemble::make(g, M, 7, 1);
  const bl::Field& f = probes.probes.front();

  std::printf("%-26s %13s %13s %9s\n", "kernel", "serial", "parallel",
              "speedup");

  double s_mult = time_ms(
      [&] { (void)bl::reference::serial_apply_multiplier(sym.sigma1, f); }, 3);
  double p_mult =
      time_ms([&] { (void)bl::apply_multiplier(sym.sigma1, f); }, 3);
  row("apply_multiplier", s_mult, p_mult);

  double s_norm = time_ms(
      [&] { (void)bl::reference::serial_lq_grid_norm(f, 2.0); }, 5);
  double p_norm = time_ms([&] { (void)bl::lq_grid_norm(f, 2.0); }, 5);
  row("lq_grid_norm (q=2)", s_norm, p_norm);

  double s_sup = time_ms(
      [&] { (void)bl::reference::serial_symbol_sup(sym.sigma2, g); }, 3);
  double p_sup = time_ms(
      [&] { (void)bl::reference::parallel_symbol_sup(sym.sigma2, g); }, 3);
  row("symbol sup scan", s_sup, p_sup);

  // Agreement spot checks so a benchmark run doubles as a smoke test.
  bl::Field a = bl::apply_multiplier(sym.sigma1, f);
  bl::Field b = bl::reference::serial_apply_multiplier(sym.sigma1, f);
  double diff = bl::lq_grid_norm(a - b, std::numeric_limits<double>::infinity());
  std::printf("\nserial/parallel multiplier max deviation: %.3e\n", diff);
  return diff < 1e-12 ? 0 : 1;
}
