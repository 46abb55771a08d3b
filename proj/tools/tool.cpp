// Command-line front end: norm / solve / check-symbol / sweep / embed /
// report subcommands over the line-oriented config format.
//
// Exit codes: 0 success; 1 a verified bound failed numerically; 2 config
// error; 3 numeric error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "besovlab/config.hpp"

namespace bl = besovlab;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBoundViolated = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

json provenance(const bl::Config& c) {
  json j;
  j["grid"] = {{"dim", c.dim},
               {"half_width", c.half_width},
               {"samples", c.samples}};
  j["seed"] = c.seed;
  j["truncation"] = c.truncation;
  j["timestamp"] =
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  return j;
}

void write_text(const std::string& dir, const std::string& name,
                const std::string& text) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir + "/" + name);
  if (!out) throw bl::data_error("cannot write " + dir + "/" + name);
  out << text;
}

bl::Field fixture_field(const bl::Config& c) {
  bl::Grid g(c.dim, c.half_width, c.samples);
  bl::ProbeEnsemble probes =
      bl::ProbeEnsemble::make(g, c.truncation, c.seed, 1);
  return probes.probes.front();  // the seeded Gaussian probe
}

json run_norm(const bl::Config& c) {
  bl::Grid g(c.dim, c.half_width, c.samples);
  bl::DyadicSystem sys(g);
  bl::Field f = fixture_field(c);
  bl::SequenceSpace space = bl::build_space(c);
  bl::VectorNorm enorm = bl::weighted_lq_enorm(space);
  bl::BesovParams params = c.besov_from();
  int m = static_cast<int>(std::floor(params.s)) + 1;
  double remainder = 0;
  double fourier = bl::besov_norm_fourier(f, params, sys, enorm, &remainder);
  double difference =
      bl::besov_norm_difference(f, params, m, 1.0, enorm);
  json j;
  j["besov_fourier"] = fourier;
  j["besov_difference"] = difference;
  j["ratio"] = fourier > 0 ? difference / fourier : 0.0;
  j["spectral_remainder_ratio"] = remainder;
  j["params"] = {{"q", params.q}, {"r", params.r}, {"s", params.s}};
  return j;
}

json run_solve(const bl::Config& c, int& exit_code) {
  bl::Grid g(c.dim, c.half_width, c.samples);
  bl::DiagOperator A = bl::build_operator(c);
  bl::Field f = fixture_field(c);
  bl::cd lambda(c.lambda_re, c.lambda_im);
  json j;
  double res = 0, fnorm = bl::lq_grid_norm(f, 2.0);
  bl::Field u(g, 1);
  if (c.family == "convolution") {
    bl::ConvolutionProblem p(bl::build_conv_spec(c), A, lambda, c.lambda0, f);
    u = bl::solve_convolution(p);
    res = bl::residual(p, u);
  } else if (c.family == "system") {
    bl::InfiniteSystemProblem p(
        [&c](int m) { return bl::Expr::parse(c.weight).eval_m(m); },
        {std::max(1, c.truncation / 2), c.truncation}, bl::build_poly_spec(c),
        lambda, f);
    bl::SystemSolveResult r = bl::solve_infinite_system(p);
    u = r.solutions.back();
    bl::EllipticProblem ep(bl::build_poly_spec(c), A, lambda, f,
                           bl::Sector(c.phi), c.phi1);
    res = bl::residual(ep, u);
    j["truncation_diffs"] = r.diffs;
    j["stabilizing"] = r.stabilizing;
  } else {
    bl::EllipticProblem p(bl::build_poly_spec(c), A, lambda, f,
                          bl::Sector(c.phi), c.phi1);
    u = bl::solve_elliptic(p);
    res = bl::residual(p, u);
  }
  j["residual"] = res;
  j["rhs_l2"] = fnorm;
  j["relative_residual"] = fnorm > 0 ? res / fnorm : 0.0;
  j["tolerance"] = 1e-9;
  if (fnorm > 0 && res / fnorm > 1e-9) exit_code = kExitBoundViolated;
  bl::save_field(u, c.out_dir + "/solution.json");
  return j;
}

json run_check_symbol(const bl::Config& c, int& exit_code) {
  bl::Grid g(c.dim, c.half_width, c.samples);
  bl::SymbolScan scan(g);
  bl::DiagOperator A = bl::build_operator(c);
  bl::PolySymbolSpec spec = bl::build_poly_spec(c);
  bl::EllipticityReport er = bl::ellipticity_check(spec, c.phi1, scan);
  json j;
  j["ellipticity_K"] = er.K_hat;
  j["sector_ok"] = er.sector_ok;
  if (!(er.K_hat > 0) || !er.sector_ok)
    throw bl::config_error("check-symbol: ellipticity fails at xi[0]=" +
                           std::to_string(er.worst_xi.empty()
                                              ? 0.0
                                              : er.worst_xi[0]));

  // Positivity constant M over the sector, then the resolvent-part bound
  // sup ||sigma_1|| <= 1 + M.
  bl::Sector sector(c.phi);
  bl::SectorSamples samples =
      bl::SectorSamples::make(sector, c.mag_min, c.mag_max, c.per_decade,
                              c.extra_rays);
  // The symbol family's sectorial arguments include L(xi); widen to the
  // joint sector when estimating M.
  double M_hat = 0;
  for (bl::cd lam : samples.lambdas)
    M_hat = std::max(M_hat, (1.0 + std::abs(lam)) * A.resolvent_norm(lam));
  j["M_hat"] = M_hat;

  double sup_sigma1 = 0, sup_sigma2 = 0;
  std::map<int, double> sigma1_decade;
  for (bl::cd lam : samples.lambdas) {
    bl::EllipticSymbols sym = bl::build_elliptic_symbols(spec, A, lam);
    double s1 = 0, s2 = 0;
    scan.for_each([&](std::span<const double> xi) {
      s1 = std::max(s1, sym.sigma1.op_norm(xi));
      s2 = std::max(s2, sym.sigma2.op_norm(xi));
    });
    sup_sigma1 = std::max(sup_sigma1, s1);
    sup_sigma2 = std::max(sup_sigma2, s2);
    int dec = static_cast<int>(std::floor(std::log10(std::abs(lam))));
    auto [it, ins] = sigma1_decade.emplace(dec, s1);
    if (!ins) it->second = std::max(it->second, s1);
  }
  j["sup_sigma1"] = sup_sigma1;
  j["sup_sigma2"] = sup_sigma2;
  j["sigma1_bound"] = 1.0 + M_hat + 1e-9;
  j["tolerance"] = 1e-9;
  if (sup_sigma1 > 1.0 + M_hat + 1e-9) exit_code = kExitBoundViolated;
  if (!std::isfinite(sup_sigma2)) exit_code = kExitBoundViolated;

  bl::EllipticSymbols sym =
      bl::build_elliptic_symbols(spec, A, bl::cd(c.lambda_re, c.lambda_im));
  j["mikhlin_sigma1"] = bl::mikhlin_constant(sym.sigma1, 1, scan);
  return j;
}

json run_sweep(const bl::Config& c, int& exit_code, std::string* csv) {
  bl::Grid g(c.dim, c.half_width, c.samples);
  bl::SweepPlan plan = bl::build_plan(c);
  bl::DiagOperator A = bl::build_operator(c);
  bl::SweepReport rep;
  if (c.family == "convolution")
    rep = bl::coercive_sweep_convolution(bl::build_conv_spec(c), A, g,
                                         c.lambda0, plan);
  else if (c.family == "system")
    rep = bl::resolvent_sweep(bl::build_poly_spec(c), A, g, c.phi1, plan);
  else
    rep = bl::coercive_sweep_elliptic(bl::build_poly_spec(c), A, g, c.phi1,
                                      plan);
  if (csv) *csv = rep.to_csv();
  json j = json::parse(rep.to_json());
  j["uniformity_factor"] = 3.0;
  if (!std::isfinite(rep.sup) || rep.per_decade_spread() >= 3.0)
    exit_code = kExitBoundViolated;
  return j;
}

json run_embed(const bl::Config& c, int& exit_code) {
  bl::Grid g(c.dim, c.half_width, c.samples);
  bl::SweepPlan plan = bl::build_plan(c);
  bl::DiagOperator A = bl::build_operator(c);
  int l = c.order;  // B^{l,s} order of the anisotropic space
  int sigma = c.sigma;
  if (sigma < 0)
    sigma = c.q2 || c.eta
                ? bl::embedding_sigma(c.dim, c.q1, c.resolved_q2())
                : 0;
  bl::SweepReport rep =
      bl::embedding_sweep(c.alpha, l, A, g, plan, sigma);
  json j = json::parse(rep.to_json());
  if (!std::isfinite(rep.sup)) exit_code = kExitBoundViolated;
  return j;
}

int dispatch(const std::string& name, const bl::Config& c) {
  int exit_code = kExitOk;
  json report;
  report["provenance"] = provenance(c);
  report["subcommand"] = name;
  std::string csv;

  if (name == "norm") {
    report["norm"] = run_norm(c);
  } else if (name == "solve") {
    report["solve"] = run_solve(c, exit_code);
  } else if (name == "check-symbol") {
    report["check_symbol"] = run_check_symbol(c, exit_code);
  } else if (name == "sweep") {
    report["sweep"] = run_sweep(c, exit_code, &csv);
  } else if (name == "embed") {
    report["embed"] = run_embed(c, exit_code);
  } else if (name == "report") {
    report["norm"] = run_norm(c);
    report["solve"] = run_solve(c, exit_code);
    report["check_symbol"] = run_check_symbol(c, exit_code);
    report["sweep"] = run_sweep(c, exit_code, &csv);
    report["embed"] = run_embed(c, exit_code);
  }
  report["exit_code"] = exit_code;

  write_text(c.out_dir, name + "_report.json", report.dump(2) + "\n");
  if (c.format == "csv" && !csv.empty())
    write_text(c.out_dir, name + "_table.csv", csv);
  std::cout << report.dump(2) << std::endl;
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Besov-space multiplier laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_dir, format;
  std::int64_t seed = -1;

  auto add = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "config file path")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "probe seed override");
    sub->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    return sub;
  };
  add("norm", "compute both Besov norms of the fixture field");
  add("solve", "solve the configured problem and report the residual");
  add("check-symbol", "symbol bound checks for the configured family");
  add("sweep", "lambda sweep of the coercive ratio");
  add("embed", "embedding ratio sweep");
  add("report", "run every check and write one combined report");

  CLI11_PARSE(app, argc, argv);

  try {
    bl::Config c = bl::load_config(config_path);
    if (!out_dir.empty()) c.out_dir = out_dir;
    if (!format.empty()) c.format = format;
    if (seed >= 0) c.seed = static_cast<std::uint64_t>(seed);
    return dispatch(app.get_subcommands().front()->get_name(), c);
  } catch (const bl::config_error& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return kExitConfig;
  } catch (const bl::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << std::endl;
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitNumeric;
  }
}
