#include "besovlab/sequence.hpp"

#include <algorithm>
#include <cmath>

namespace besovlab {

SequenceSpace::SequenceSpace(double q_, std::vector<double> w)
    : q(q_), weights(std::move(w)) {
  if (!(q > 1.0) && !std::isinf(q))
    throw config_error("SequenceSpace: q must be in (1, inf)");
  if (weights.empty()) throw config_error("SequenceSpace: empty weights");
  for (double d : weights)
    if (!(d > 0.0)) throw config_error("SequenceSpace: weights must be > 0");
}

Sector::Sector(double phi) : angle(phi) {
  if (phi < 0.0 || phi >= kPi)
    throw config_error("Sector: angle must be in [0, pi)");
}

bool Sector::contains(cd lambda) const {
  if (lambda == cd(0.0, 0.0)) return true;
  return std::abs(std::arg(lambda)) <= angle + 1e-14;
}

DiagOperator::DiagOperator(SequenceSpace s)
    : space(std::move(s)), entries(space.weights) {}

DiagOperator::DiagOperator(SequenceSpace s, std::vector<double> e)
    : space(std::move(s)), entries(std::move(e)) {
  if (entries.size() != space.weights.size())
    throw config_error("DiagOperator: entry count != truncation");
  for (double d : entries)
    if (!(d > 0.0)) throw config_error("DiagOperator: entries must be > 0");
}

DiagOperator DiagOperator::frac_power(double theta) const {
  std::vector<double> e(entries.size());
  for (std::size_t m = 0; m < entries.size(); ++m)
    e[m] = std::pow(entries[m], theta);
  return DiagOperator(space, std::move(e));
}

std::vector<cd> DiagOperator::resolvent_entries(cd lambda) const {
  std::vector<cd> r(entries.size());
  for (std::size_t m = 0; m < entries.size(); ++m) {
    cd denom = entries[m] + lambda;
    if (std::abs(denom) < 1e-300)
      throw numeric_error("resolvent: singular entry m=" +
                          std::to_string(m + 1));
    r[m] = 1.0 / denom;
  }
  return r;
}

double DiagOperator::resolvent_norm(cd lambda) const {
  double worst = 0;
  for (std::size_t m = 0; m < entries.size(); ++m) {
    cd denom = entries[m] + lambda;
    if (std::abs(denom) < 1e-300)
      throw numeric_error("resolvent_norm: singular entry m=" +
                          std::to_string(m + 1));
    worst = std::max(worst, 1.0 / std::abs(denom));
  }
  return worst;
}

double lq_norm(std::span<const cd> u, double q) {
  if (std::isinf(q)) {
    double m = 0;
    for (const cd& x : u) m = std::max(m, std::abs(x));
    return m;
  }
  double s = 0;
  for (const cd& x : u) s += std::pow(std::abs(x), q);
  return std::pow(s, 1.0 / q);
}

double lq_norm(std::span<const cd> u, const SequenceSpace& space,
               bool weighted) {
  if (static_cast<int>(u.size()) != space.truncation())
    throw usage_error("lq_norm: vector length != truncation");
  if (!weighted) return lq_norm(u, space.q);
  if (std::isinf(space.q)) {
    double m = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
      m = std::max(m, space.weights[i] * std::abs(u[i]));
    return m;
  }
  double s = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    s += std::pow(space.weights[i] * std::abs(u[i]), space.q);
  return std::pow(s, 1.0 / space.q);
}

double graph_norm(std::span<const cd> u, const DiagOperator& A, double theta,
                  double p) {
  if (p < 1.0 || std::isinf(p)) throw config_error("graph_norm: p in [1,inf)");
  std::vector<cd> au(u.begin(), u.end());
  for (std::size_t m = 0; m < au.size(); ++m)
    au[m] *= std::pow(A.entries[m], theta);
  double base = lq_norm(u, A.space, true);
  double shifted = lq_norm(std::span<const cd>(au), A.space, true);
  return std::pow(std::pow(base, p) + std::pow(shifted, p), 1.0 / p);
}

SectorSamples SectorSamples::make(const Sector& s, double mag_min,
                                  double mag_max, int per_decade,
                                  int extra_rays, bool include_zero) {
  if (mag_min <= 0 || mag_max < mag_min)
    throw config_error("SectorSamples: bad magnitude range");
  std::vector<double> angles{0.0};
  if (s.angle > 0) {
    angles.push_back(s.angle);
    angles.push_back(-s.angle);
    for (int r = 1; r <= extra_rays; ++r) {
      double a = s.angle * r / (extra_rays + 1);
      angles.push_back(a);
      angles.push_back(-a);
    }
  }
  int decades = static_cast<int>(std::ceil(std::log10(mag_max / mag_min)));
  int count = std::max(2, decades * per_decade);
  SectorSamples out;
  if (include_zero) out.lambdas.push_back(0.0);
  for (double a : angles)
    for (int i = 0; i <= count; ++i) {
      double t = static_cast<double>(i) / count;
      double mag = mag_min * std::pow(mag_max / mag_min, t);
      out.lambdas.push_back(std::polar(mag, a));
    }
  return out;
}

double positivity_constant(const DiagOperator& A, const Sector& sector,
                           const SectorSamples& samples) {
  double sup = 0;
  for (cd lambda : samples.lambdas) {
    if (!sector.contains(lambda)) continue;
    sup = std::max(sup, (1.0 + std::abs(lambda)) * A.resolvent_norm(lambda));
  }
  return sup;
}

double sector_sum_bound(const Sector& phi, const Sector& psi,
                        int ray_samples) {
  if (phi.angle + psi.angle >= kPi)
    throw config_error("sector_sum_bound: phi + psi must be < pi");
  // By homogeneity unit magnitudes suffice.
  double inf = 1.0;
  for (int i = 0; i <= ray_samples; ++i) {
    double a = phi.angle * (2.0 * i / ray_samples - 1.0);
    for (int j = 0; j <= ray_samples; ++j) {
      double b = psi.angle * (2.0 * j / ray_samples - 1.0);
      cd lambda = std::polar(1.0, a), mu = std::polar(1.0, b);
      inf = std::min(inf, std::abs(lambda + mu) / 2.0);
    }
  }
  return inf;
}

double moment_inequality_check(const DiagOperator& A, double x,
                               std::span<const std::vector<cd>> probes) {
  if (x < 0.0 || x > 1.0)
    throw config_error("moment_inequality_check: x in [0,1]");
  double sup = 0;
  DiagOperator Apow = A.frac_power(1.0 - x);
  for (const auto& u : probes) {
    double base = lq_norm(std::span<const cd>(u), A.space, true);
    if (base == 0.0) continue;  // zero probe skipped
    std::vector<cd> au(u), apu(u);
    for (std::size_t m = 0; m < u.size(); ++m) {
      au[m] *= A.entries[m];
      apu[m] *= Apow.entries[m];
    }
    double num = lq_norm(std::span<const cd>(apu), A.space, true);
    double den = std::pow(lq_norm(std::span<const cd>(au), A.space, true),
                          1.0 - x) *
                 std::pow(base, x);
    if (den > 0) sup = std::max(sup, num / den);
  }
  return sup;
}

VectorNorm weighted_lq_enorm(SequenceSpace space) {
  return [space = std::move(space)](std::span<const cd> v) {
    return lq_norm(v, space, true);
  };
}

VectorNorm unweighted_lq_enorm(double q) {
  return [q](std::span<const cd> v) { return lq_norm(v, q); };
}

VectorNorm graph_enorm(DiagOperator A, double theta, double p) {
  return [A = std::move(A), theta, p](std::span<const cd> v) {
    return graph_norm(v, A, theta, p);
  };
}

}  // namespace besovlab
