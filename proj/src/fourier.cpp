#include "besovlab/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace besovlab {

namespace {

// FFTW plan creation is not thread-safe; execution on caller-owned arrays is.
std::mutex fftw_mutex;

// In-place rank-N DFT in standard DFT ordering over all M components.
void fft_core(std::vector<cd>& data, const Grid& g, int M, int sign) {
  int n[3];
  for (int a = 0; a < g.dim(); ++a) n[a] = g.samples();
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex);
    plan = fftw_plan_many_dft(g.dim(), n, M, ptr, nullptr, M, 1, ptr, nullptr,
                              M, 1, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_mutex);
    fftw_destroy_plan(plan);
  }
}

// Parity of sum over axes of (c_a - n/2) for the point with linear index p.
int center_parity(const Grid& g, std::int64_t p) {
  int idx[3];
  g.unravel(p, idx);
  int s = 0;
  for (int a = 0; a < g.dim(); ++a) s += idx[a] - g.samples() / 2;
  return s & 1;
}

// Map centered linear index -> standard DFT linear index.
std::int64_t centered_to_standard(const Grid& g, std::int64_t p) {
  int idx[3];
  g.unravel(p, idx);
  int n = g.samples();
  for (int a = 0; a < g.dim(); ++a) idx[a] = (idx[a] - n / 2 + n) % n;
  return g.ravel(idx);
}

}  // namespace

Field forward_ft(const Field& f) {
  if (f.domain != Domain::physical)
    throw usage_error("forward_ft: input must be in the physical domain");
  if (!f.finite()) throw data_error("forward_ft: non-finite input");
  const Grid& g = f.grid;
  const int M = f.components;
  std::vector<cd> work = f.values;
  fft_core(work, g, M, FFTW_FORWARD);

  // u_hat(xi_j) = h^N * (-1)^{sum j} * DFT[f][j mod n] with j = c - n/2.
  double hN = std::pow(g.spacing(), g.dim());
  Field out(g, M, Domain::frequency);
  for (std::int64_t p = 0; p < g.points(); ++p) {
    std::int64_t src = centered_to_standard(g, p);
    double phase = center_parity(g, p) ? -hN : hN;
    for (int c = 0; c < M; ++c) out.at(p, c) = phase * work[src * M + c];
  }
  return out;
}

Field inverse_ft(const Field& fhat) {
  if (fhat.domain != Domain::frequency)
    throw usage_error("inverse_ft: input must be in the frequency domain");
  const Grid& g = fhat.grid;
  const int M = fhat.components;
  double hN = std::pow(g.spacing(), g.dim());
  std::vector<cd> work(fhat.values.size());
  for (std::int64_t p = 0; p < g.points(); ++p) {
    std::int64_t dst = centered_to_standard(g, p);
    double phase = center_parity(g, p) ? -1.0 : 1.0;
    for (int c = 0; c < M; ++c)
      work[dst * M + c] = phase / hN * fhat.at(p, c);
  }
  fft_core(work, g, M, FFTW_BACKWARD);
  double scale = 1.0 / static_cast<double>(g.points());
  Field out(g, M, Domain::physical);
  for (std::size_t i = 0; i < work.size(); ++i) out.values[i] = scale * work[i];
  return out;
}

Field spectral_derivative(const Field& f, const std::vector<int>& alpha) {
  if (static_cast<int>(alpha.size()) != f.grid.dim())
    throw usage_error("spectral_derivative: alpha size != dim");
  for (int a : alpha)
    if (a < 0) throw usage_error("spectral_derivative: negative multi-index");
  Field fhat = f.domain == Domain::frequency ? f : forward_ft(f);
  const Grid& g = f.grid;
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < g.points(); ++p) {
    double xi[3];
    g.freq_at(p, xi);
    cd factor = 1.0;
    for (int a = 0; a < g.dim(); ++a)
      for (int j = 0; j < alpha[a]; ++j) factor *= cd(0.0, xi[a]);
    for (int c = 0; c < fhat.components; ++c) fhat.at(p, c) *= factor;
  }
  return inverse_ft(fhat);
}

Field spectral_shift(const Field& f, int axis, double y) {
  if (axis < 0 || axis >= f.grid.dim())
    throw usage_error("spectral_shift: bad axis");
  Field fhat = forward_ft(f);
  const Grid& g = f.grid;
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < g.points(); ++p) {
    int idx[3];
    g.unravel(p, idx);
    double xi = g.freq(idx[axis]);
    cd factor = std::exp(cd(0.0, xi * y));
    for (int c = 0; c < fhat.components; ++c) fhat.at(p, c) *= factor;
  }
  return inverse_ft(fhat);
}

double euclidean_enorm(std::span<const cd> v) {
  double s = 0;
  for (const cd& x : v) s += std::norm(x);
  return std::sqrt(s);
}

double lq_grid_norm(const Field& f, double q, const VectorNorm& enorm) {
  const Grid& g = f.grid;
  double hN = std::pow(g.spacing(), g.dim());
  auto point_norm = [&](std::int64_t p) {
    return enorm ? enorm(f.point(p)) : euclidean_enorm(f.point(p));
  };
  if (std::isinf(q)) {
    double m = 0;
#pragma omp parallel for reduction(max : m) schedule(static)
    for (std::int64_t p = 0; p < g.points(); ++p)
      m = std::max(m, point_norm(p));
    return m;
  }
  if (q < 1) throw config_error("lq_grid_norm: q must be >= 1");
  double s = 0;
#pragma omp parallel for reduction(+ : s) schedule(static)
  for (std::int64_t p = 0; p < g.points(); ++p)
    s += std::pow(point_norm(p), q);
  return std::pow(hN * s, 1.0 / q);
}

}  // namespace besovlab
