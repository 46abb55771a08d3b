#include "besovlab/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace besovlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& v, int line,
                    std::vector<std::string>& errors) {
  if (v == "inf") return kInf;
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    errors.push_back("line " + std::to_string(line) + ": bad number '" + v +
                     "'");
    return 0.0;
  }
}

// "a_<i>[_<j>...]" -> multi-index, or nullopt if the key isn't of that form.
std::optional<std::vector<int>> parse_coeff_key(const std::string& key) {
  if (key.size() < 3 || key[0] != 'a' || key[1] != '_') return std::nullopt;
  std::vector<int> alpha;
  std::size_t pos = 2;
  while (pos < key.size()) {
    std::size_t next = key.find('_', pos);
    std::string part = key.substr(pos, next == std::string::npos
                                           ? std::string::npos
                                           : next - pos);
    if (part.empty() ||
        part.find_first_not_of("0123456789") != std::string::npos)
      return std::nullopt;
    alpha.push_back(std::stoi(part));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return alpha;
}

std::string fmt(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

double Config::eta_prime() const {
  if (!eta) return kInf;
  if (*eta == 1.0) return kInf;
  return *eta / (*eta - 1.0);
}

double Config::resolved_q2() const {
  if (q2) return *q2;
  double ep = eta_prime();
  double inv = 1.0 / q1 - (std::isinf(ep) ? 0.0 : 1.0 / ep);
  if (inv <= 1e-15) return kInf;
  return 1.0 / inv;
}

Config parse_config(const std::string& text) {
  Config c;
  std::vector<std::string> errors;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  bool q2_given = false, eta_given = false;

  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    std::size_t hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') {
        errors.push_back("line " + std::to_string(line) +
                         ": malformed section header");
        continue;
      }
      section = s.substr(1, s.size() - 2);
      if (section != "grid" && section != "space" && section != "problem" &&
          section != "besov" && section != "sweep" && section != "embed" &&
          section != "output")
        errors.push_back("line " + std::to_string(line) +
                         ": unknown section [" + section + "]");
      continue;
    }
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(line) + ": expected key = value");
      continue;
    }
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    auto num = [&]() { return parse_number(value, line, errors); };
    auto integer = [&]() { return static_cast<int>(num()); };
    bool known = true;

    if (section == "grid") {
      if (key == "dim") c.dim = integer();
      else if (key == "half_width") c.half_width = num();
      else if (key == "samples") c.samples = integer();
      else known = false;
    } else if (section == "space") {
      if (key == "q") c.q = num();
      else if (key == "truncation") c.truncation = integer();
      else if (key == "weight") c.weight = value;
      else known = false;
    } else if (section == "problem") {
      if (key == "family") c.family = value;
      else if (key == "order") c.order = integer();
      else if (key == "aenv") c.aenv = value;
      else if (key == "lambda0") c.lambda0 = num();
      else if (key == "lambda_re") c.lambda_re = num();
      else if (key == "lambda_im") c.lambda_im = num();
      else if (key == "phi") c.phi = num();
      else if (key == "phi1") c.phi1 = num();
      else if (key.rfind("ahat_", 0) == 0) {
        int k = std::atoi(key.c_str() + 5);
        if (static_cast<int>(c.kernels.size()) <= k)
          c.kernels.resize(k + 1, "0");
        c.kernels[k] = value;
      } else if (auto alpha = parse_coeff_key(key)) {
        c.coeffs[*alpha] = num();
      } else known = false;
    } else if (section == "besov") {
      if (key == "q1") c.q1 = num();
      else if (key == "q2") { c.q2 = num(); q2_given = true; }
      else if (key == "eta") { c.eta = num(); eta_given = true; }
      else if (key == "r") c.r = num();
      else if (key == "s") c.s = num();
      else known = false;
    } else if (section == "sweep") {
      if (key == "mag_min") c.mag_min = num();
      else if (key == "mag_max") c.mag_max = num();
      else if (key == "per_decade") c.per_decade = integer();
      else if (key == "extra_rays") c.extra_rays = integer();
      else if (key == "seed") c.seed = static_cast<std::uint64_t>(num());
      else if (key == "probes_per_family") c.probes_per_family = integer();
      else known = false;
    } else if (section == "embed") {
      if (key == "alpha") {
        c.alpha.clear();
        std::istringstream as(value);
        int v;
        while (as >> v) c.alpha.push_back(v);
        if (c.alpha.empty())
          errors.push_back("line " + std::to_string(line) + ": empty alpha");
      } else if (key == "sigma") c.sigma = integer();
      else known = false;
    } else if (section == "output") {
      if (key == "dir") c.out_dir = value;
      else if (key == "format") c.format = value;
      else known = false;
    } else {
      errors.push_back("line " + std::to_string(line) +
                       ": key outside any section");
      continue;
    }
    if (!known)
      errors.push_back("line " + std::to_string(line) + ": unknown key '" +
                       key + "' in [" + section + "]");
  }

  // Cross-field validation.
  if (c.dim < 1 || c.dim > 3) errors.push_back("grid: dim must be 1..3");
  if (c.samples < 4 || c.samples % 2)
    errors.push_back("grid: samples must be even and >= 4");
  if (!(c.half_width > 0)) errors.push_back("grid: half_width must be > 0");
  if (!(c.q1 > 1.0)) errors.push_back("besov: requires 1 < q1");
  double ep = c.eta_prime();
  if (eta_given && c.q1 > ep + 1e-12)
    errors.push_back("besov: requires q1 <= eta'");
  if (q2_given) {
    if (*c.q2 < c.q1 - 1e-12)
      errors.push_back(
          "besov: 1/q2 > 1/q1 violates the exponent line for any eta' >= 1");
    if (eta_given) {
      double implied_inv = 1.0 / c.q1 - (std::isinf(ep) ? 0.0 : 1.0 / ep);
      double given_inv = std::isinf(*c.q2) ? 0.0 : 1.0 / *c.q2;
      if (std::abs(implied_inv - given_inv) > 1e-9)
        errors.push_back(
            "besov: q2 and eta are inconsistent with 1/q2 = 1/q1 - 1/eta'");
    }
  }
  if (c.family != "elliptic" && c.family != "convolution" &&
      c.family != "system")
    errors.push_back("problem: unknown family '" + c.family + "'");
  if (c.family == "convolution" && !(c.lambda0 > 0))
    errors.push_back("problem: lambda0 must be > 0 for convolution problems");
  if (c.order < 1) errors.push_back("problem: order must be >= 1");
  if (c.truncation < 1) errors.push_back("space: truncation must be >= 1");
  if (!(c.q > 1.0) || std::isinf(c.q))
    errors.push_back("space: q must be in (1, inf)");
  if (c.format != "json" && c.format != "csv")
    errors.push_back("output: format must be json or csv");
  try {
    Expr::parse(c.weight);
  } catch (const std::exception& e) {
    errors.push_back(std::string("space: weight: ") + e.what());
  }
  for (const std::string& k : c.kernels)
    try {
      Expr::parse(k);
    } catch (const std::exception& e) {
      errors.push_back(std::string("problem: kernel: ") + e.what());
    }
  try {
    Expr::parse(c.aenv);
  } catch (const std::exception& e) {
    errors.push_back(std::string("problem: aenv: ") + e.what());
  }

  if (!errors.empty()) {
    std::string msg = "config errors:";
    for (const std::string& e : errors) msg += "\n  " + e;
    throw config_error(msg);
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string Config::print() const {
  std::ostringstream os;
  os << "[grid]\n"
     << "dim = " << dim << "\n"
     << "half_width = " << fmt(half_width) << "\n"
     << "samples = " << samples << "\n\n";
  os << "[space]\n"
     << "q = " << fmt(q) << "\n"
     << "truncation = " << truncation << "\n"
     << "weight = " << weight << "\n\n";
  os << "[problem]\n"
     << "family = " << family << "\n"
     << "order = " << order << "\n";
  for (const auto& [a, v] : coeffs) {
    os << "a";
    for (int i : a) os << "_" << i;
    os << " = " << fmt(v) << "\n";
  }
  for (std::size_t k = 0; k < kernels.size(); ++k)
    os << "ahat_" << k << " = " << kernels[k] << "\n";
  os << "aenv = " << aenv << "\n"
     << "lambda0 = " << fmt(lambda0) << "\n"
     << "lambda_re = " << fmt(lambda_re) << "\n"
     << "lambda_im = " << fmt(lambda_im) << "\n"
     << "phi = " << fmt(phi) << "\n"
     << "phi1 = " << fmt(phi1) << "\n\n";
  os << "[besov]\n"
     << "q1 = " << fmt(q1) << "\n";
  if (q2) os << "q2 = " << fmt(*q2) << "\n";
  if (eta) os << "eta = " << fmt(*eta) << "\n";
  os << "r = " << fmt(r) << "\n"
     << "s = " << fmt(s) << "\n\n";
  os << "[sweep]\n"
     << "mag_min = " << fmt(mag_min) << "\n"
     << "mag_max = " << fmt(mag_max) << "\n"
     << "per_decade = " << per_decade << "\n"
     << "extra_rays = " << extra_rays << "\n"
     << "seed = " << seed << "\n"
     << "probes_per_family = " << probes_per_family << "\n\n";
  os << "[embed]\nalpha =";
  for (int a : alpha) os << " " << a;
  os << "\nsigma = " << sigma << "\n\n";
  os << "[output]\n"
     << "dir = " << out_dir << "\n"
     << "format = " << format << "\n";
  return os.str();
}

SequenceSpace build_space(const Config& c) {
  Expr w = Expr::parse(c.weight);
  std::vector<double> d(c.truncation);
  for (int m = 1; m <= c.truncation; ++m) {
    d[m - 1] = w.eval_m(m);
    if (!(d[m - 1] > 0))
      throw config_error("space: weight expression must be positive at m=" +
                         std::to_string(m));
  }
  return SequenceSpace(c.q, std::move(d));
}

DiagOperator build_operator(const Config& c) {
  return DiagOperator(build_space(c));
}

PolySymbolSpec build_poly_spec(const Config& c) {
  PolySymbolSpec spec;
  spec.dim = c.dim;
  spec.order = c.order;
  if (c.coeffs.empty()) {
    // Default: L(xi) = sum_k xi_k^order, elliptic for even order.
    if (c.order % 2)
      throw config_error("problem: default coefficients need even order");
    double sign = (c.order / 2) % 2 ? -1.0 : 1.0;  // cancel (i)^order
    for (int a = 0; a < c.dim; ++a) {
      std::vector<int> alpha(c.dim, 0);
      alpha[a] = c.order;
      spec.coeffs[alpha] = sign;
    }
  } else {
    for (const auto& [alpha, v] : c.coeffs) {
      if (static_cast<int>(alpha.size()) != c.dim)
        throw config_error("problem: coefficient index rank != dim");
      int tot = 0;
      for (int i : alpha) tot += i;
      if (tot > c.order)
        throw config_error("problem: coefficient order exceeds the operator");
      spec.coeffs[alpha] = v;
    }
  }
  return spec;
}

ConvKernelSpec build_conv_spec(const Config& c) {
  ConvKernelSpec spec;
  spec.order = c.order;
  std::vector<std::string> kernels = c.kernels;
  kernels.resize(c.order + 1, "0");
  for (const std::string& text : kernels) {
    Expr e = Expr::parse(text);
    spec.ahat.push_back([e](double xi) { return cd(e.eval_xi(xi), 0.0); });
  }
  Expr env = Expr::parse(c.aenv);
  spec.aenv = [env](double xi) { return env.eval_xi(xi); };
  return spec;
}

SweepPlan build_plan(const Config& c) {
  SweepPlan plan(Sector(c.phi), c.besov_from(), c.besov_to());
  plan.extra_rays = c.extra_rays;
  plan.mag_min = c.mag_min;
  plan.mag_max = c.mag_max;
  plan.per_decade = c.per_decade;
  plan.seed = c.seed;
  plan.probes_per_family = c.probes_per_family;
  plan.eta_prime = c.eta_prime();
  return plan;
}

}  // namespace besovlab
