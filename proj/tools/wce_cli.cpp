// Command-line front end: classify, spectrum, polar, domain, suite and a
// randomized oracle cross-check.

#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wce/scenarios.hpp"
#include "wce/space_file.hpp"
#include "wce/suite.hpp"
#include "wce/wce.hpp"

namespace {

using nlohmann::json;
using wce::Index;
using wce::scenarios::Scenario;
using Complex = std::complex<double>;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json complex_list(const std::vector<Complex>& zs) {
  json out = json::array();
  for (const auto& z : zs) out.push_back(complex_json(z));
  return out;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("expected k=v, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty()) {
      throw UsageError("parameter " + key + " is not a number: '" + value + "'");
    }
    out[key] = v;
  }
  return out;
}

struct Source {
  std::string scenario;
  std::string space_file;
  std::vector<std::string> params;

  void attach(CLI::App* cmd) {
    auto* s = cmd->add_option("--scenario", scenario, "named scenario")
                  ->check(CLI::IsMember(wce::scenarios::names()));
    auto* f = cmd->add_option("--space-file", space_file, "JSON space description");
    s->excludes(f);
    cmd->add_option("--params", params, "scenario parameters as k=v");
  }

  Scenario load() const {
    if (!space_file.empty()) {
      if (!params.empty()) throw UsageError("--params only applies to --scenario");
      return wce::load_space_file(space_file);
    }
    if (scenario.empty()) throw UsageError("one of --scenario or --space-file is required");
    return wce::scenarios::by_name(scenario, parse_params(params));
  }
};

json describe(const Scenario& sc) {
  return {{"name", sc.name},
          {"points", sc.space.size()},
          {"atoms", sc.partition.atom_count()},
          {"total_mass", sc.space.total_mass()},
          {"discarded_mass", sc.discarded_mass}};
}

int run_classify(const Source& src, double tol) {
  const auto sc = src.load();
  const auto op = sc.op();
  const auto r = wce::classify(op, tol);
  json out = {{"scenario", describe(sc)},
              {"tolerance", tol},
              {"self_adjoint", r.self_adjoint},
              {"normal", r.normal},
              {"quasinormal", r.quasinormal},
              {"measurability_deviation", r.measurability_deviation},
              {"max_imaginary", r.max_imaginary},
              {"quasinormal_test", r.quasinormal_from_oracle ? "oracle" : "pointwise"}};
  if (r.normal_witness_atom >= 0) out["normal_witness_atom"] = r.normal_witness_atom;
  if (r.self_adjoint_witness_point >= 0)
    out["self_adjoint_witness_point"] = r.self_adjoint_witness_point;
  if (r.quasinormal_witness_point >= 0)
    out["quasinormal_witness_point"] = r.quasinormal_witness_point;
  if (r.quasinormal_from_oracle) {
    out["quasinormal_residual"] = r.quasinormal_oracle;
  } else {
    out["quasinormal_residual"] = r.quasinormal_pointwise;
  }
  std::cout << out.dump(2) << "\n";
  return kExitPass;
}

int run_spectrum(const Source& src, double tol, bool oracle, double oracle_tol) {
  const auto sc = src.load();
  const auto op = sc.op();
  const auto s = wce::spectrum_formula(op, tol);
  json out = {{"scenario", describe(sc)},
              {"tolerance", tol},
              {"spectrum", complex_list(s.values)},
              {"includes_zero", s.includes_zero},
              {"discrete", s.discrete},
              {"source", s.source}};
  int code = kExitPass;
  if (oracle) {
    const auto check = wce::verify_spectrum(wce::matrix_of(op), s.values);
    json probes = json::array();
    for (const auto& p : check.probes) {
      probes.push_back(
          {{"lambda", complex_json(p.lambda)}, {"distance", p.distance}, {"min_singular", p.min_singular}});
    }
    const bool hit = check.candidates_hit(oracle_tol);
    const bool clear = check.probes_clear(oracle_tol);
    out["oracle"] = {{"operator_norm", check.operator_norm},
                     {"candidate_min_singular", check.candidate_min_singular},
                     {"probes", probes},
                     {"candidates_hit", hit},
                     {"probes_clear", clear},
                     {"tolerance", oracle_tol}};
    if (!hit || !clear) code = kExitFail;
  }
  std::cout << out.dump(2) << "\n";
  return code;
}

int run_polar(const Source& src, double tol, double oracle_tol) {
  const auto sc = src.load();
  const auto op = sc.op();
  const auto parts = wce::polar(op, tol);
  const auto T = wce::matrix_of(op);
  const auto U = wce::isometry_matrix(op, parts);
  const auto A = wce::modulus_matrix(op, parts);
  const double t_norm = T.norm();
  const double factor = (U * A - T).norm();
  const auto root = wce::psd_sqrt<wce::OracleReal>(wce::gram(wce::promote<wce::OracleReal>(T)));
  const double modulus = static_cast<double>((wce::promote<wce::OracleReal>(A) - root).norm());
  // U is a partial isometry: U*U is the projection onto its initial space.
  const wce::DenseMatrix<double> UU = U.adjoint() * U;
  const double partial_isometry = (UU * UU - UU).norm();
  const double scale = t_norm > 0 ? t_norm : 1.0;
  const bool ok = factor <= 1e-10 * scale && modulus <= oracle_tol * scale &&
                  partial_isometry <= oracle_tol * std::max(1.0, UU.norm());
  json out = {{"scenario", describe(sc)},
              {"tolerance", tol},
              {"support", parts.support},
              {"u_prime", complex_list({parts.u_prime.data(), parts.u_prime.data() + parts.u_prime.size()})},
              {"u_tilde", complex_list({parts.u_tilde.data(), parts.u_tilde.data() + parts.u_tilde.size()})},
              {"checks",
               {{"operator_frobenius", t_norm},
                {"factorization_residual", factor},
                {"modulus_vs_psd_sqrt", modulus},
                {"partial_isometry_residual", partial_isometry},
                {"passed", ok}}}};
  std::cout << out.dump(2) << "\n";
  return ok ? kExitPass : kExitFail;
}

int run_domain(const std::string& name, double theta, double tail_tol) {
  wce::scenarios::Countable spec;
  if (name == "poisson-parity") {
    spec = wce::scenarios::poisson_parity_spec(theta);
  } else if (name == "geometric") {
    spec = wce::scenarios::geometric_spec();
  } else if (name == "geometric-blowup") {
    spec = wce::scenarios::geometric_blowup_spec();
  } else {
    throw UsageError("domain needs a countable scenario: poisson-parity, geometric, geometric-blowup");
  }
  const auto d = wce::densely_defined(spec, tail_tol);
  json atoms = json::array();
  for (const auto& v : d.atoms) {
    json a = {{"atom", v.atom},
              {"converges", v.converges},
              {"partial_weighted_sum", v.partial_weighted_sum},
              {"partial_mass", v.partial_mass},
              {"scanned_points", v.scanned_points}};
    if (v.converges) {
      a["E_abs_u2"] = v.cond_value;
      a["E_abs_u2_upper"] = v.cond_upper;
      a["tail_bound"] = v.tail_bound;
    } else {
      json levels = json::array();
      for (const auto& [level, index] : v.divergence_levels) levels.push_back({level, index});
      a["divergence_levels"] = levels;
    }
    atoms.push_back(a);
  }
  json masses = json::array();
  for (double m : d.exhaustion_masses) {
    if (std::isfinite(m)) {
      masses.push_back(m);
    } else {
      masses.push_back("inf");
    }
  }
  json out = {{"scenario", spec.name},
              {"tail_tol", tail_tol},
              {"densely_defined", d.densely_defined},
              {"sigma_finite_restriction", d.sigma_finite_restriction},
              {"agree", d.densely_defined == d.sigma_finite_restriction},
              {"atoms", atoms},
              {"exhaustion_masses", masses}};
  if (name == "poisson-parity") out["theta"] = theta;
  std::cout << out.dump(2) << "\n";
  return d.densely_defined == d.sigma_finite_restriction ? kExitPass : kExitFail;
}

int run_suite(const std::string& format, const wce::suite::Params& params) {
  const auto report = wce::suite::run(params);
  if (format == "json") {
    std::cout << report.to_json().dump(2) << "\n";
  } else {
    std::cout << report.to_text();
  }
  return report.any_fail() ? kExitFail : kExitPass;
}

// Random instances: classification vs dense residuals, polar factors vs the
// PSD square root, and the adjoint identity.
int run_oracle_check(int seeds, Index max_n, double tol, double oracle_tol, std::uint64_t base) {
  wce::InstanceOptions opt;
  opt.max_points = max_n;
  opt.min_points = std::min<Index>(opt.min_points, max_n);
  int failures = 0;
  json bad = json::array();
  double worst_polar = 0;
  double worst_modulus = 0;
  double worst_adjoint = 0;
  for (int s = 0; s < seeds; ++s) {
    const std::uint64_t seed = base + static_cast<std::uint64_t>(s);
    const auto inst = wce::random_instance<double>(seed, opt);
    const auto& op = inst.op;
    const auto c = wce::classify(op, tol);
    const auto r = wce::residuals(op);
    const bool agree = c.normal == r.is_normal(oracle_tol) &&
                       c.self_adjoint == r.is_self_adjoint(oracle_tol) &&
                       c.quasinormal == r.is_quasinormal(oracle_tol);

    const auto parts = wce::polar(op, tol);
    const auto T = wce::matrix_of(op);
    const double scale = std::max(T.norm(), 1e-300);
    const double polar_res =
        (wce::isometry_matrix(op, parts) * wce::modulus_matrix(op, parts) - T).norm() / scale;
    const auto root = wce::psd_sqrt<wce::OracleReal>(wce::gram(wce::promote<wce::OracleReal>(T)));
    const double modulus_res = static_cast<double>(
        (wce::promote<wce::OracleReal>(wce::modulus_matrix(op, parts)) - root).norm() / scale);

    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const auto f = wce::random_function<double>(op.size(), rng);
    const auto g = wce::random_function<double>(op.size(), rng);
    const double adj = std::abs(wce::inner_product(wce::apply(op, f), g, op.space()) -
                                wce::inner_product(f, wce::apply_adjoint(op, g), op.space())) /
                       (wce::norm(f, op.space()) * wce::norm(g, op.space()));

    worst_polar = std::max(worst_polar, polar_res);
    worst_modulus = std::max(worst_modulus, modulus_res);
    worst_adjoint = std::max(worst_adjoint, adj);
    const bool ok = agree && polar_res <= 1e-10 && modulus_res <= oracle_tol && adj <= 1e-10;
    if (!ok) {
      ++failures;
      bad.push_back({{"seed", seed},
                     {"kind", wce::to_string(inst.kind)},
                     {"n", op.size()},
                     {"classification_agrees", agree},
                     {"polar_residual", polar_res},
                     {"modulus_residual", modulus_res},
                     {"adjoint_residual", adj}});
    }
  }
  json out = {{"seeds", seeds},
              {"max_n", max_n},
              {"failures", failures},
              {"worst_polar_residual", worst_polar},
              {"worst_modulus_residual", worst_modulus},
              {"worst_adjoint_residual", worst_adjoint},
              {"failed_instances", bad}};
  std::cout << out.dump(2) << "\n";
  return failures == 0 ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted conditional expectation operators E M_u on finite measure spaces"};
  app.require_subcommand(1);

  double tol = 1e-10;
  double oracle_tol = 1e-8;

  Source classify_src;
  auto* classify = app.add_subcommand("classify", "self-adjoint / normal / quasinormal verdicts");
  classify_src.attach(classify);
  classify->add_option("--tol", tol, "classification tolerance");

  Source spectrum_src;
  bool with_oracle = false;
  auto* spectrum = app.add_subcommand("spectrum", "closed-form spectrum");
  spectrum_src.attach(spectrum);
  spectrum->add_flag("--oracle", with_oracle, "verify with min-singular-value probes");
  spectrum->add_option("--tol", tol, "clustering tolerance");
  spectrum->add_option("--oracle-tol", oracle_tol, "relative oracle tolerance");

  Source polar_src;
  auto* polar = app.add_subcommand("polar", "polar decomposition T = U|T|");
  polar_src.attach(polar);
  polar->add_option("--tol", tol, "support threshold for E(|u|^2)");
  polar->add_option("--oracle-tol", oracle_tol, "relative oracle tolerance");

  std::string domain_name;
  double theta = 1.0;
  double tail_tol = 1e-12;
  auto* domain = app.add_subcommand("domain", "densely-defined verdict on a countable space");
  domain->add_option("--scenario", domain_name, "poisson-parity, geometric or geometric-blowup")
      ->required();
  domain->add_option("--theta", theta, "Poisson parameter")->check(CLI::PositiveNumber);
  domain->add_option("--tail-tol", tail_tol, "tail tolerance")->check(CLI::PositiveNumber);

  std::string format = "text";
  wce::suite::Params suite_params;
  auto* suite = app.add_subcommand("suite", "check every claim of the worked examples");
  suite->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  suite->add_option("--tol", suite_params.tol, "identity tolerance");
  suite->add_option("--oracle-tol", suite_params.oracle_tol, "oracle tolerance");
  suite->add_option("--exact-tol", suite_params.exact_tol, "exact-by-construction tolerance");

  int seeds = 100;
  Index max_n = 64;
  std::uint64_t base_seed = 1;
  auto* check = app.add_subcommand("oracle-check", "randomized formula-vs-oracle cross-validation");
  check->add_option("--seeds", seeds, "number of random instances")->check(CLI::Range(1, 1000000));
  check->add_option("--max-n", max_n, "largest point count")
      ->check(CLI::Range(Index{2}, wce::kOracleMaxOrder));
  check->add_option("--first-seed", base_seed);
  check->add_option("--tol", tol, "classification tolerance");
  check->add_option("--oracle-tol", oracle_tol, "relative oracle tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (!(tol > 0) || !(oracle_tol > 0)) throw UsageError("tolerances must be positive");
    if (*classify) return run_classify(classify_src, tol);
    if (*spectrum) return run_spectrum(spectrum_src, tol, with_oracle, oracle_tol);
    if (*polar) return run_polar(polar_src, tol, oracle_tol);
    if (*domain) return run_domain(domain_name, theta, tail_tol);
    if (*suite) return run_suite(format, suite_params);
    if (*check) return run_oracle_check(seeds, max_n, tol, oracle_tol, base_seed);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const wce::SpaceFileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    // DimensionError, ParameterError, PreconditionError
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
