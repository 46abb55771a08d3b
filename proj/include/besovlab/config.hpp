#pragma once

#include <map>
#include <optional>

#include "besovlab/estimates.hpp"
#include "besovlab/expr.hpp"

namespace besovlab {

/// Line-oriented configuration: `[section]` headers, `key = value` lines,
/// `#` comments.  `inf` is a valid numeric literal where an endpoint index
/// is allowed.  Unknown keys and inconsistent exponents are errors carrying
/// line numbers.
struct Config {
  // [grid]
  int dim = 1;
  double half_width = 16.0;
  int samples = 256;

  // [space]
  double q = 2.0;
  int truncation = 8;
  std::string weight = "m^2";  // d_m, expression in m

  // [problem]
  std::string family = "elliptic";  // elliptic | convolution | system
  int order = 2;                    // 2l (elliptic/system) or l (convolution)
  std::map<std::vector<int>, double> coeffs;  // a_alpha, keys a_<i>[_<j>...]
  std::vector<std::string> kernels;           // ahat_0..ahat_l, exprs in xi
  std::string aenv = "1";                     // envelope of A_hat, expr in xi
  double lambda0 = 1.0;
  double lambda_re = 10.0, lambda_im = 0.0;
  double phi = 1.0471975511965976;   // sector of lambda (pi/3)
  double phi1 = 0.5235987755982988;  // sector of L(xi) (pi/6)

  // [besov]
  double q1 = 2.0;
  std::optional<double> q2;
  std::optional<double> eta;
  double r = 2.0;
  double s = 1.0;

  // [sweep]
  double mag_min = 1.0, mag_max = 1e4;
  int per_decade = 6;
  int extra_rays = 0;
  std::uint64_t seed = 1;
  int probes_per_family = 6;

  // [embed]
  std::vector<int> alpha = {1};
  int sigma = -1;  // -1: derive from the exponent line

  // [output]
  std::string out_dir = ".";
  std::string format = "json";

  /// eta' from eta (conjugate exponent); infinity when eta is 1 or unset.
  double eta_prime() const;
  /// q2 resolved through 1/q2 = 1/q1 - 1/eta'.
  double resolved_q2() const;
  BesovParams besov_from() const { return {q1, r, s}; }
  BesovParams besov_to() const { return {resolved_q2(), r, s}; }

  std::string print() const;
};

/// Parse + validate; throws config_error whose message lists every problem
/// with its line number.
Config parse_config(const std::string& text);
Config load_config(const std::string& path);

/// Builders for the configured objects.
SequenceSpace build_space(const Config& c);
DiagOperator build_operator(const Config& c);
PolySymbolSpec build_poly_spec(const Config& c);
ConvKernelSpec build_conv_spec(const Config& c);
SweepPlan build_plan(const Config& c);

}  // namespace besovlab
