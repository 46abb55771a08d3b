#include "besovlab/solvers.hpp"

#include <cmath>

namespace besovlab {

namespace {

// L_2(grid;E) norm with the Euclidean component norm.
double l2_norm(const Field& f) { return lq_grid_norm(f, 2.0); }

}  // namespace

EllipticProblem::EllipticProblem(PolySymbolSpec s, DiagOperator a, cd l,
                                 Field f, Sector sec, double phi1_)
    : spec(std::move(s)), A(std::move(a)), lambda(l), rhs(std::move(f)),
      sector(sec), phi1(phi1_) {
  if (rhs.components != A.size())
    throw config_error("EllipticProblem: rhs components != A size");
  if (sector.angle + phi1 >= kPi)
    throw config_error("EllipticProblem: requires phi + phi1 < pi");
  if (!sector.contains(lambda))
    throw config_error("EllipticProblem: lambda outside the sector");
  SymbolScan scan(rhs.grid);
  EllipticityReport rep = ellipticity_check(spec, phi1, scan);
  if (!(rep.K_hat > 0) || !rep.sector_ok) {
    std::string at;
    for (double x : rep.worst_xi) at += " " + std::to_string(x);
    throw config_error("EllipticProblem: ellipticity check failed at xi =" +
                       at);
  }
}

Field solve_elliptic(const EllipticProblem& p) {
  const Grid& g = p.rhs.grid;
  Field fhat = forward_ft(p.rhs);
  bool bad = false;
  std::string diag;
#pragma omp parallel for schedule(static)
  for (std::int64_t pt = 0; pt < g.points(); ++pt) {
    double xi[3];
    g.freq_at(pt, xi);
    cd shift = p.lambda + p.spec.L(std::span<const double>(xi, g.dim()));
    for (int m = 0; m < p.A.size(); ++m) {
      cd denom = p.A.entries[m] + shift;
      if (std::abs(denom) < 1e-13) {
#pragma omp critical
        {
          bad = true;
          diag = "m=" + std::to_string(m + 1) +
                 ", xi[0]=" + std::to_string(xi[0]);
        }
        continue;
      }
      fhat.at(pt, m) /= denom;
    }
  }
  if (bad)
    throw numeric_error("solve_elliptic: near-singular pencil at " + diag);
  return inverse_ft(fhat);
}

double residual(const EllipticProblem& p, const Field& u) {
  const Grid& g = u.grid;
  if (!(g == p.rhs.grid)) throw usage_error("residual: grid mismatch");
  Field uhat = forward_ft(u);
  Field fhat = forward_ft(p.rhs);
#pragma omp parallel for schedule(static)
  for (std::int64_t pt = 0; pt < g.points(); ++pt) {
    double xi[3];
    g.freq_at(pt, xi);
    cd shift = p.lambda + p.spec.L(std::span<const double>(xi, g.dim()));
    for (int m = 0; m < p.A.size(); ++m)
      uhat.at(pt, m) =
          (p.A.entries[m] + shift) * uhat.at(pt, m) - fhat.at(pt, m);
  }
  return l2_norm(inverse_ft(uhat));
}

ConvolutionProblem::ConvolutionProblem(ConvKernelSpec s, DiagOperator a, cd l,
                                       double l0, Field f)
    : spec(std::move(s)), A(std::move(a)), lambda(l), lambda0(l0),
      rhs(std::move(f)) {
  if (rhs.grid.dim() != 1)
    throw config_error("ConvolutionProblem: one-dimensional only");
  if (rhs.components != A.size())
    throw config_error("ConvolutionProblem: rhs components != A size");
  if (!(lambda0 > 0) || std::abs(lambda) < lambda0)
    throw config_error("ConvolutionProblem: requires |lambda| >= lambda0 > 0");
  if (static_cast<int>(spec.ahat.size()) != spec.order + 1)
    throw config_error("ConvolutionProblem: need a_hat_0..a_hat_l");
}

Field solve_convolution(const ConvolutionProblem& p) {
  const Grid& g = p.rhs.grid;
  SymbolScan scan(g);
  Condition51Report rep = condition51_check(p.spec, scan);
  if (!(rep.C_hat > 0))
    throw config_error(
        "solve_convolution: kernel smallness condition fails at xi=" +
        std::to_string(rep.worst_xi));
  Field fhat = forward_ft(p.rhs);
  bool bad = false;
  std::string diag;
#pragma omp parallel for schedule(static)
  for (std::int64_t pt = 0; pt < g.points(); ++pt) {
    double xi = g.freq(static_cast<int>(pt));
    cd shift = p.lambda + p.spec.L(xi);
    double env = p.spec.aenv(xi);
    for (int m = 0; m < p.A.size(); ++m) {
      cd denom = env * p.A.entries[m] + shift;
      if (!(env > 0) || std::abs(denom) < 1e-13) {
#pragma omp critical
        {
          bad = true;
          diag = "m=" + std::to_string(m + 1) + ", xi=" + std::to_string(xi);
        }
        continue;
      }
      fhat.at(pt, m) /= denom;
    }
  }
  if (bad)
    throw numeric_error("solve_convolution: degenerate pencil at " + diag);
  return inverse_ft(fhat);
}

double residual(const ConvolutionProblem& p, const Field& u) {
  const Grid& g = u.grid;
  if (!(g == p.rhs.grid)) throw usage_error("residual: grid mismatch");
  Field uhat = forward_ft(u);
  Field fhat = forward_ft(p.rhs);
#pragma omp parallel for schedule(static)
  for (std::int64_t pt = 0; pt < g.points(); ++pt) {
    double xi = g.freq(static_cast<int>(pt));
    cd shift = p.lambda + p.spec.L(xi);
    double env = p.spec.aenv(xi);
    for (int m = 0; m < p.A.size(); ++m)
      uhat.at(pt, m) = (env * p.A.entries[m] + shift) * uhat.at(pt, m) -
                       fhat.at(pt, m);
  }
  return l2_norm(inverse_ft(uhat));
}

InfiniteSystemProblem::InfiniteSystemProblem(std::function<double(int)> w,
                                             std::vector<int> Ms,
                                             PolySymbolSpec s, cd l, Field f)
    : weight(std::move(w)), M_list(std::move(Ms)), spec(std::move(s)),
      lambda(l), rhs(std::move(f)) {
  if (M_list.empty())
    throw config_error("InfiniteSystemProblem: empty truncation list");
  for (std::size_t i = 1; i < M_list.size(); ++i)
    if (M_list[i] <= M_list[i - 1])
      throw config_error("InfiniteSystemProblem: truncations must increase");
  if (rhs.components < M_list.back())
    throw config_error("InfiniteSystemProblem: rhs must cover max truncation");
  for (int m = 1; m <= M_list.back(); ++m)
    if (!(weight(m) > 0))
      throw config_error("InfiniteSystemProblem: weights must be positive");
}

SystemSolveResult solve_infinite_system(const InfiniteSystemProblem& p) {
  const Grid& g = p.rhs.grid;
  const int Mmax = p.M_list.back();
  Field fhat = forward_ft(p.rhs);

  // Diagonal decoupling: solve every component's scalar pencil once; a
  // truncated solution is the leading block, zero-padded.
  Field uhat_full = fhat;
  bool bad = false;
#pragma omp parallel for schedule(static)
  for (std::int64_t pt = 0; pt < g.points(); ++pt) {
    double xi[3];
    g.freq_at(pt, xi);
    cd shift = p.lambda + p.spec.L(std::span<const double>(xi, g.dim()));
    for (int m = 0; m < Mmax; ++m) {
      cd denom = p.weight(m + 1) + shift;
      if (std::abs(denom) < 1e-13) {
        bad = true;
        continue;
      }
      uhat_full.at(pt, m) /= denom;
    }
  }
  if (bad)
    throw numeric_error("solve_infinite_system: near-singular pencil");
  Field u_full = inverse_ft(uhat_full);

  SystemSolveResult out;
  double tail = 0;
  for (int M : p.M_list) {
    Field u(g, p.rhs.components, Domain::physical);
    for (std::int64_t pt = 0; pt < g.points(); ++pt)
      for (int m = 0; m < M; ++m) u.at(pt, m) = u_full.at(pt, m);
    out.solutions.push_back(std::move(u));
    tail = 0;
    for (int m = 1; m <= M; ++m) tail += 1.0 / p.weight(m);
    out.weight_tail.push_back(tail);
  }
  out.stabilizing = true;
  for (std::size_t i = 0; i + 1 < out.solutions.size(); ++i) {
    out.diffs.push_back(l2_norm(out.solutions[i] - out.solutions[i + 1]));
    if (i > 0 && out.diffs[i] > out.diffs[i - 1]) out.stabilizing = false;
  }
  return out;
}

}  // namespace besovlab
