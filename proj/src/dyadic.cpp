#include "besovlab/dyadic.hpp"

#include <cmath>

namespace besovlab {

namespace {

// Unnormalized bump on (1/2, 2).
double bump(double s) {
  if (s <= 0.5 || s >= 2.0) return 0.0;
  return std::exp(-1.0 / ((s - 0.5) * (2.0 - s)));
}

}  // namespace

DyadicSystem::DyadicSystem(const Grid& grid) : grid_(grid) {
  // Annulus I_k reaches 2^{k+1}; require it inside the Nyquist band.
  k_max_ =
      static_cast<int>(std::floor(std::log2(kPi / grid.spacing()))) - 1;
  if (k_max_ < 1) throw config_error("DyadicSystem: grid too coarse");
}

double DyadicSystem::psi(double s) {
  if (s <= 0.0) return 0.0;
  double num = bump(s);
  if (num == 0.0) return 0.0;
  // Only dilates 2^{-j}s in (1/2,2) contribute; |j - log2 s| <= 1.
  int j0 = static_cast<int>(std::floor(std::log2(s)));
  double denom = 0.0;
  for (int j = j0 - 2; j <= j0 + 2; ++j)
    denom += bump(std::ldexp(s, -j));
  return num / denom;
}

double DyadicSystem::phi_radial(double r, int k) const {
  if (k < 0) return 0.0;
  if (k >= 1) return psi(std::ldexp(r, -k));
  // phi_0 = sum_{k<=0} psi(2^{-k} r), zero terms outside |j - log2 r| <= 1.
  if (r <= 0.0) return 1.0;
  if (r >= 2.0) return 0.0;
  double s = 0.0;
  int j0 = static_cast<int>(std::floor(std::log2(r)));
  for (int j = std::min(0, j0 + 2); j >= j0 - 2; --j)
    if (j <= 0) s += psi(std::ldexp(r, -j));
  return s;
}

double DyadicSystem::phi(std::span<const double> t, int k) const {
  double r2 = 0;
  for (double x : t) r2 += x * x;
  return phi_radial(std::sqrt(r2), k);
}

Field DyadicSystem::block_from_spectrum(const Field& fhat, int k) const {
  if (fhat.domain != Domain::frequency)
    throw usage_error("block_from_spectrum: frequency input required");
  Field ghat = fhat;
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < grid_.points(); ++p) {
    double xi[3];
    grid_.freq_at(p, xi);
    double w = phi(std::span<const double>(xi, grid_.dim()), k);
    for (int c = 0; c < ghat.components; ++c) ghat.at(p, c) *= w;
  }
  return inverse_ft(ghat);
}

Field DyadicSystem::block(const Field& f, int k) const {
  return block_from_spectrum(forward_ft(f), k);
}

Field DyadicSystem::remainder(const Field& f) const {
  Field fhat = forward_ft(f);
  Field ghat = fhat;
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < grid_.points(); ++p) {
    double xi[3];
    grid_.freq_at(p, xi);
    double w = 0.0;
    for (int k = 0; k <= k_max_; ++k)
      w += phi(std::span<const double>(xi, grid_.dim()), k);
    for (int c = 0; c < ghat.components; ++c) ghat.at(p, c) *= (1.0 - w);
  }
  return inverse_ft(ghat);
}

}  // namespace besovlab
