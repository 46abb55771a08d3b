#pragma once

#include "besovlab/multiplier.hpp"

namespace besovlab {

/// (Q + lambda)u = sum_{|alpha|<=2l} a_alpha D^alpha u + (A + lambda)u = f
/// on the periodic box, A = diag(d_m).
struct EllipticProblem {
  PolySymbolSpec spec;
  DiagOperator A;
  cd lambda;
  Field rhs;
  Sector sector;   // lambda must lie in S_phi
  double phi1;     // sector of L(xi); requires phi + phi1 < pi

  EllipticProblem(PolySymbolSpec s, DiagOperator a, cd l, Field f,
                  Sector sec, double phi1_);
};

/// u = F^{-1} [A + lambda + L(xi)]^{-1} f_hat.  Throws numeric_error with
/// (m, xi) when a pencil entry is nearly singular.
Field solve_elliptic(const EllipticProblem& p);

/// ||sum a_alpha D^alpha u + (A + lambda)u - f||_{L_2(grid;E)}.
double residual(const EllipticProblem& p, const Field& u);

/// sum_{k<=l} a_k * d^k u/dx^k + (A + lambda) * u = f on N = 1, with the
/// separable family A_hat(xi) = aenv(xi) diag(d_m).
struct ConvolutionProblem {
  ConvKernelSpec spec;
  DiagOperator A;
  cd lambda;
  double lambda0;  // |lambda| >= lambda0 > 0
  Field rhs;

  ConvolutionProblem(ConvKernelSpec s, DiagOperator a, cd l, double l0,
                     Field f);
};

/// u = F^{-1} [A_hat(xi) + lambda + L(xi)]^{-1} f_hat.  Refuses (config
/// error) when the kernel smallness condition fails on the grid.
Field solve_convolution(const ConvolutionProblem& p);

/// ||sum a_k * u^{(k)} + (A + lambda) * u - f||_{L_2(grid;E)}, convolution
/// terms realized as a_hat_k(xi)(i xi)^k multipliers.
double residual(const ConvolutionProblem& p, const Field& u);

/// Diagonal infinite system: component m solves the scalar pencil
/// d_m + lambda + L(xi).  rhs carries max(M_list) components; truncated
/// solves use its leading components.
struct InfiniteSystemProblem {
  std::function<double(int)> weight;  // d_m, m >= 1
  std::vector<int> M_list;            // increasing truncations
  PolySymbolSpec spec;
  cd lambda;
  Field rhs;

  InfiniteSystemProblem(std::function<double(int)> w, std::vector<int> Ms,
                        PolySymbolSpec s, cd l, Field f);
};

struct SystemSolveResult {
  std::vector<Field> solutions;     // one per truncation, padded to max M
  std::vector<double> diffs;        // ||u^{(M_i)} - u^{(M_{i+1})}||_{L_2}
  std::vector<double> weight_tail;  // partial sums of 1/d_m at each M
  bool stabilizing;                 // diffs non-increasing
};
SystemSolveResult solve_infinite_system(const InfiniteSystemProblem& p);

}  // namespace besovlab
