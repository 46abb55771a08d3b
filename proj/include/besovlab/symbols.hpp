#pragma once

#include <functional>
#include <map>
#include <string>

#include "besovlab/besov.hpp"

namespace besovlab {

/// Operator-valued symbol on the truncated space: xi -> diag(entries).
/// Diagonal representation is exact for every built-in family; the operator
/// norm on l_q(D) is the max entry modulus.
struct Symbol {
  int components = 1;
  std::function<void(std::span<const double> xi, std::span<cd> out)> eval;
  /// Optional analytic first derivative along one axis.
  std::function<void(std::span<const double> xi, int axis, std::span<cd> out)>
      deriv;
  std::string name;

  std::vector<cd> operator()(std::span<const double> xi) const {
    std::vector<cd> out(components);
    eval(xi, out);
    return out;
  }
  double op_norm(std::span<const double> xi) const;
};

/// Pointwise product by a scalar function (e.g. a dyadic cutoff).
Symbol scale_symbol(const Symbol& m, std::function<double(std::span<const double>)> w,
                    const std::string& name);
/// Dilated symbol xi -> m(a*xi).
Symbol dilate_symbol(const Symbol& m, double a);

/// Polynomial symbol L(xi) = sum_{|alpha|<=order} a_alpha (i xi)^alpha.
struct PolySymbolSpec {
  int dim = 1;
  int order = 2;  // 2l for the elliptic family
  std::map<std::vector<int>, cd> coeffs;

  cd L(std::span<const double> xi) const;
  cd L_deriv(std::span<const double> xi, int axis) const;
};

/// Convolution-family data (N = 1): kernel transforms a_hat_k and the
/// separable operator family A_hat(xi) = a_env(xi) * diag(d_m).
struct ConvKernelSpec {
  int order = 2;                               // l
  std::vector<std::function<cd(double)>> ahat;  // a_hat_0..a_hat_l
  std::function<double(double)> aenv;           // a_hat of the A family; > 0

  cd L(double xi) const;
  double abs_sum(double xi) const;  // sum_k |a_hat_k(xi)|
};

/// theta(xi) = sum_k |xi_k|^l.
double build_theta(std::span<const double> xi, int l);

/// Psi(xi) = (i xi)^alpha A^{1-x} [A + theta(xi)]^{-1}, optionally weighted
/// by |xi|^sigma (then x = (|alpha|+sigma)/l).
Symbol build_embedding_symbol(const std::vector<int>& alpha, const DiagOperator& A,
                              int l, int sigma = 0);

struct EllipticSymbols {
  Symbol sigma1;  // A[A + lambda + L(xi)]^{-1}
  Symbol sigma2;  // sum_alpha |lambda|^{1-|alpha|/2l} L_1(xi)
};
EllipticSymbols build_elliptic_symbols(const PolySymbolSpec& spec,
                                       const DiagOperator& A, cd lambda);
/// L_1 for one alpha: (i xi)^alpha [A + lambda + L(xi)]^{-1}.
Symbol build_pencil_symbol(const PolySymbolSpec& spec, const DiagOperator& A,
                           cd lambda, const std::vector<int>& alpha);
/// The solver symbol [A + lambda + L(xi)]^{-1}.
Symbol build_resolvent_symbol(const PolySymbolSpec& spec, const DiagOperator& A,
                              cd lambda);

struct ConvSymbols {
  Symbol sigma0;  // lambda [A(xi) + lambda + L(xi)]^{-1}
  Symbol sigma1;  // A(xi) [A(xi) + lambda + L(xi)]^{-1}
  Symbol sigma2;  // sum_k |lambda|^{1-k/l} a_hat_k (i xi)^k [...]^{-1}
};
ConvSymbols build_conv_symbols(const ConvKernelSpec& spec,
                               const DiagOperator& A, cd lambda);

/// Scan points for symbol sup/inf estimates: the frequency nodes of a grid.
struct SymbolScan {
  Grid grid;
  explicit SymbolScan(const Grid& g) : grid(g) {}
  template <class F>
  void for_each(F&& f) const {
    for (std::int64_t p = 0; p < grid.points(); ++p) {
      double xi[3];
      grid.freq_at(p, xi);
      f(std::span<const double>(xi, grid.dim()));
    }
  }
};

/// D^beta m by nested central differences (step rule per axis), or the
/// analytic path for |beta| = 1 when available.
std::vector<cd> symbol_derivative(const Symbol& m, std::span<const double> xi,
                                  const std::vector<int>& beta,
                                  double step_scale = 1.0);

/// Mikhlin constant: max_{|beta|<=order} sup_xi (1+|xi|)^{|beta|} ||D^beta m||.
/// Cross-checks analytic vs central-difference first derivatives when the
/// symbol provides the analytic path.
double mikhlin_constant(const Symbol& m, int order, const SymbolScan& scan);

/// Hormander constant over dyadic radii.
double hormander_constant(const Symbol& m, double p, int order,
                          const std::vector<double>& radii,
                          const SymbolScan& scan);

struct MpEtaResult {
  double value;
  double argmin_a;
};
/// M_{p,eta}(m) = inf_a ||m(a .)||_{B^{N(1/eta - 1/p')}_{p,1}}, grid search
/// over dilations; the operator-valued Besov norm is computed entrywise with
/// sup aggregation.
MpEtaResult mp_eta_constant(const Symbol& m, double p, double eta,
                            const std::vector<double>& dilations,
                            const Grid& sample_grid);

/// sup over k <= K of M_{p,eta}(phi_k . m).
double blockwise_condition(const Symbol& m, double p, double eta, int K,
                           const Grid& sample_grid,
                           const std::vector<double>& dilations);

/// Lemma-style window bounds: L_u norms over I_0 of D^alpha m and over I_1 of
/// D^alpha m(2^{k-1} .), max over k <= K and |alpha| <= l.
double lemma212_windows(const Symbol& m, int l, double u, int K,
                        const SymbolScan& scan);

struct EllipticityReport {
  double K_hat;     // inf |L(xi)| / sum |xi_k|^{2l}
  bool sector_ok;   // all L(xi) in S(phi1)
  std::vector<double> worst_xi;
};
EllipticityReport ellipticity_check(const PolySymbolSpec& spec, double phi1,
                                    const SymbolScan& scan);

struct Condition51Report {
  double C_hat;  // inf |L| / (|xi|^l sum |a_hat_k|)
  bool sector_ok;
  double worst_xi;
};
Condition51Report condition51_check(const ConvKernelSpec& spec,
                                    const SymbolScan& scan);

/// Measured sups of the convolution-family derivative bounds for
/// m in {0,1,2}: ||A^{(m)} A^{-1}||, |xi^m a_hat_k|, and the
/// |xi|^m-weighted derivatives of sigma_0, sigma_1, sigma_2 over a lambda
/// sweep with |lambda| >= lambda0 > 0.
std::map<std::string, double> derivative_bounds_check(
    const ConvKernelSpec& spec, const DiagOperator& A,
    const std::vector<cd>& lambdas, const SymbolScan& scan);

}  // namespace besovlab
