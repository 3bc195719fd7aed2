// Acceptance criteria 1-9. Prints one PASS/FAIL line per criterion.
//
//   acceptance            run all criteria
//   acceptance 3 7        run the listed criteria
//
// Exit status is 0 only when every selected criterion passes.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"
#include "wce/scenarios.hpp"
#include "wce/suite.hpp"
#include "wce/wce.hpp"

#ifndef WCE_CLI_PATH
#error "WCE_CLI_PATH must point at the wce_cli executable"
#endif

namespace {

using wce::Index;
using C = std::complex<double>;
using Vec = wce::ComplexVector<double>;
using RVec = wce::RealVector<double>;
using Mat = wce::DenseMatrix<double>;
namespace sc = wce::scenarios;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream o;
  o.precision(3);
  o << std::scientific << x;
  return o.str();
}

Outcome with_budget(Outcome o, double seconds, double budget) {
  o.detail += "; " + std::to_string(seconds).substr(0, 6) + " s (budget " +
              std::to_string(budget).substr(0, 4) + " s)";
  if (seconds >= budget) o.pass = false;
  return o;
}

// 1. Symmetric interval identities at N = 200.
Outcome identities() {
  const auto s = sc::symmetric_interval(200);
  const auto op = s.op();
  double e2 = 0, e1 = 0;
  for (Index i = 0; i < op.size(); ++i) {
    const double x = s.space.label(i)[0];
    e2 = std::max(e2, std::abs(op.cond_u_abs2()[i] - std::cosh(2 * x)));
    e1 = std::max(e1, std::abs(op.cond_u()[i] - std::cosh(x)));
  }
  return {e2 <= 1e-12 && e1 <= 1e-12,
          "max |E(|u|^2) - cosh 2x| = " + fmt(e2) + ", max |E(u) - cosh x| = " + fmt(e1) +
              " (tol 1e-12)"};
}

// 2. Symmetric interval spectrum at N = 64, checked by the oracle.
Outcome interval_spectrum() {
  const auto s = sc::symmetric_interval(64);
  const auto op = s.op();
  const auto spec = wce::spectrum_formula(op, 1e-10);
  std::vector<C> expected{C(0)};
  for (Index i = 32; i < 64; ++i) expected.push_back(std::cosh(s.space.label(i)[0]));
  double set_err = spec.values.size() == expected.size() ? 0.0 : INFINITY;
  for (std::size_t k = 0; k < expected.size() && std::isfinite(set_err); ++k)
    set_err = std::max(set_err, std::abs(spec.values[k] - expected[k]));

  const auto check = wce::verify_spectrum(wce::matrix_of(op), spec.values);
  double worst_hit = 0;
  for (double v : check.candidate_min_singular) worst_hit = std::max(worst_hit, v);
  double worst_ratio = INFINITY;
  for (const auto& p : check.probes) worst_ratio = std::min(worst_ratio, p.min_singular / p.distance);
  const bool ok = set_err <= 1e-10 && check.candidates_hit(1e-8) && worst_ratio >= 0.5;
  return {ok, "set error " + fmt(set_err) + ", max candidate sigma_min / ||T|| = " +
                  fmt(worst_hit / check.operator_norm) + " (tol 1e-8), min probe sigma_min / delta = " +
                  fmt(worst_ratio) + " over " + std::to_string(check.probes.size()) +
                  " probes (need >= 0.5)"};
}

// 3. Poisson parity at theta = 1.
Outcome poisson_values() {
  const auto p = sc::poisson_parity(1.0, 1e-12);
  const auto op = p.op();
  const double odd = op.cond_u()[p.partition.members(1).front()].real();
  const double even = op.cond_u()[p.partition.members(2).front()].real();
  const auto report = wce::suite::run(wce::suite::Example::poisson_parity);
  const wce::suite::Entry* entry = nullptr;
  for (const auto& e : report.entries)
    if (e.claim == "ex4.E_u.even") entry = &e;
  bool ok = std::abs(odd - 1.3130352855) <= 1e-10 && entry != nullptr;
  std::string detail = "odd atom " + std::to_string(odd) + " (|err| " +
                       fmt(std::abs(odd - 1.3130352855)) + ", tol 1e-10)";
  if (entry) {
    const double derived = entry->computed.at("series").get<double>();
    const double printed = entry->expected.get<double>();
    ok = ok && entry->status == wce::suite::Status::discrepancy &&
         std::abs(derived - 2.1639534137) <= 1e-10 && std::abs(even - derived) == 0.0 &&
         std::abs(printed - 0.3522) <= 5e-4;
    detail += ", even-atom entry status " + wce::suite::to_string(entry->status) + " with series " +
              std::to_string(derived) + " and printed " + std::to_string(printed);
  }
  return {ok, detail};
}

// 4. Polar decomposition on 100 random instances.
Outcome polar_suite() {
  wce::InstanceOptions opt;
  opt.max_points = 64;
  double worst_fact = 0, worst_mod = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto op = wce::random_instance<double>(40000 + s, opt).op;
    const auto parts = wce::polar(op, 1e-12);
    const Mat T = wce::matrix_of(op);
    const Mat A = wce::modulus_matrix(op, parts);
    const double t = T.norm();
    worst_fact = std::max(worst_fact, (wce::isometry_matrix(op, parts) * A - T).norm() / t);
    const auto root = wce::psd_sqrt<wce::OracleReal>(wce::gram(wce::promote<wce::OracleReal>(T)));
    worst_mod = std::max(worst_mod,
                         static_cast<double>((wce::promote<wce::OracleReal>(A) - root).norm()) / t);
  }
  return {worst_fact <= 1e-10 && worst_mod <= 1e-8,
          "max ||U|T| - T|| / ||T|| = " + fmt(worst_fact) + " (tol 1e-10), max |||T| - sqrt(T*T)|| / ||T|| = " +
              fmt(worst_mod) + " (tol 1e-8)"};
}

// 5. Classification against the oracle.
Outcome classification() {
  int disagreements = 0, ordering = 0;
  std::array<int, 4> kinds{};
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto inst = wce::random_instance<double>(50000 + s);
    ++kinds[static_cast<std::size_t>(inst.kind)];
    const auto c = wce::classify(inst.op, 1e-10);
    const auto r = wce::residuals(inst.op);
    disagreements += c.normal != r.is_normal(1e-8) || c.self_adjoint != r.is_self_adjoint(1e-8) ||
                     c.quasinormal != r.is_quasinormal(1e-8);
    ordering += (c.self_adjoint && !c.normal) || (c.normal && !c.quasinormal);
  }
  const bool all_kinds = kinds[0] && kinds[1] && kinds[2] && kinds[3];
  return {disagreements == 0 && ordering == 0 && all_kinds,
          std::to_string(disagreements) + " disagreements, " + std::to_string(ordering) +
              " ordering violations; generic/atom_constant/atom_real/zero_mean = " +
              std::to_string(kinds[0]) + "/" + std::to_string(kinds[1]) + "/" +
              std::to_string(kinds[2]) + "/" + std::to_string(kinds[3])};
}

// 6. Adjoint identity and adjoint matrix.
Outcome adjoint() {
  std::mt19937_64 rng(6);
  double worst = 0, worst_mat = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto op = wce::random_instance<double>(60000 + s).op;
    const auto f = wce::random_function<double>(op.size(), rng);
    const auto g = wce::random_function<double>(op.size(), rng);
    const C lhs = wce::inner_product(wce::apply(op, f), g, op.space());
    const C rhs = wce::inner_product(f, wce::apply_adjoint(op, g), op.space());
    worst = std::max(worst, std::abs(lhs - rhs) / (wce::norm(f, op.space()) * wce::norm(g, op.space())));
    worst_mat = std::max(worst_mat, (wce::matrix_of_adjoint(op) - Mat(wce::matrix_of(op).adjoint())).norm());
  }
  return {worst <= 1e-10 && worst_mat <= 1e-12,
          "max |<Tf,g> - <f,T*g>| / (||f|| ||g||) = " + fmt(worst) + " (tol 1e-10), max ||[T*] - [T]^*||_F = " +
              fmt(worst_mat) + " (tol 1e-12)"};
}

// 7. Densely defined: both verdicts on both countable spaces.
Outcome dense_domain() {
  const auto p = wce::densely_defined(sc::poisson_parity_spec(1.0), 1e-12);
  const auto g = wce::densely_defined(sc::geometric_blowup_spec(), 1e-12);
  const bool ok = p.densely_defined == p.sigma_finite_restriction &&
                  g.densely_defined == g.sigma_finite_restriction && p.densely_defined &&
                  !g.densely_defined;
  auto b = [](bool x) { return std::string(x ? "true" : "false"); };
  return {ok, "Poisson (E|u|^2 finite, sigma-finite) = (" + b(p.densely_defined) + ", " +
                  b(p.sigma_finite_restriction) + "), geometric blow-up = (" + b(g.densely_defined) +
                  ", " + b(g.sigma_finite_restriction) + ")"};
}

// 8. Conditional expectation core.
Outcome cond_exp_core() {
  std::mt19937_64 rng(8);
  double idem = 0, defining = 0, holder = -INFINITY, rank = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto op = wce::random_instance<double>(80000 + s).op;
    const auto& p = op.partition();
    const auto& sp = op.space();
    const auto f = wce::random_function<double>(op.size(), rng);
    const Vec ef = wce::cond_exp(f, p, sp);
    idem = std::max(idem, (wce::cond_exp(ef, p, sp) - ef).cwiseAbs().maxCoeff() / (1 + f.cwiseAbs().maxCoeff()));
    for (Index a = 0; a < p.atom_count(); ++a) {
      C lhs{0, 0}, rhs{0, 0};
      double scale = 0;
      for (auto i : p.members(a)) {
        lhs += sp.weight(i) * f[i];
        rhs += sp.weight(i) * ef[i];
        scale += sp.weight(i) * std::abs(f[i]);
      }
      defining = std::max(defining, std::abs(lhs - rhs) / scale);
    }
    const Vec euf = wce::cond_exp(Vec(op.u().cwiseProduct(f)), p, sp);
    const RVec ef2 = wce::cond_exp(RVec(f.cwiseAbs2()), p, sp);
    for (Index i = 0; i < op.size(); ++i)
      holder = std::max(holder, std::norm(euf[i]) - op.cond_u_abs2()[i] * ef2[i]);

    const wce::WCEOperator<double> one(sp, wce::Partition::trivial(op.size()), op.u());
    const auto sv = wce::singular_values(wce::matrix_of(one));
    rank = std::max(rank, sv.size() > 1 ? sv[1] : 0.0);
  }
  return {idem <= 1e-12 && defining <= 1e-12 && holder <= 1e-10 && rank <= 1e-10,
          "idempotence " + fmt(idem) + " (1e-12), defining property " + fmt(defining) +
              " (1e-12), max Hoelder excess " + fmt(holder) + " (1e-10), max second singular value " +
              fmt(rank) + " (1e-10)"};
}

// 9. The CLI suite in JSON form.
Outcome cli_suite() {
  const std::string cmd = std::string("\"") + WCE_CLI_PATH + "\" suite --format json";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {false, "could not start " + cmd};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(out);
  } catch (const std::exception& e) {
    return {false, std::string("output is not JSON: ") + e.what()};
  }
  static const std::vector<std::string> lettered{
      "ex1.case1.a", "ex1.case1.b1", "ex1.case1.b2", "ex1.case1.b3", "ex1.case2.a",
      "ex1.case2.b1", "ex1.case2.b2", "ex1.case2.b3", "ex1.case2.b4", "ex1.case3.a",
      "ex1.case3.b1", "ex1.case3.b2", "ex1.case3.b3", "ex1.case3.b4", "ex2.a",
      "ex2.b1", "ex2.b2", "ex2.b3", "ex2.b4", "ex3.a",
      "ex3.b", "ex3.c", "ex3.d", "ex3.e", "ex4.a",
      "ex4.b", "ex4.c", "ex4.d"};
  std::set<std::string> present;
  std::vector<std::string> discrepancies;
  for (const auto& e : j["entries"]) {
    present.insert(e["claim"].get<std::string>());
    if (e["status"] == "discrepancy") discrepancies.push_back(e["claim"].get<std::string>());
  }
  std::size_t missing = 0;
  for (const auto& c : lettered) missing += present.count(c) == 0;
  std::string listed;
  for (const auto& d : discrepancies) listed += (listed.empty() ? "" : ", ") + d;
  const bool ok = code == 0 && missing == 0 && discrepancies.size() == 1 &&
                  discrepancies.front() == "ex4.E_u.even";
  return {ok, "exit code " + std::to_string(code) + ", " + std::to_string(missing) +
                  " lettered claims missing, " + std::to_string(discrepancies.size()) +
                  " discrepancy entries [" + listed + "] (need exactly ex4.E_u.even)"};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
  double budget;  // seconds; <= 0 means no runtime bound
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "symmetric-interval identities", identities, 0.1},
      {2, "symmetric-interval spectrum", interval_spectrum, 5.0},
      {3, "Poisson parity atom values", poisson_values, 0.1},
      {4, "polar decomposition", polar_suite, 30.0},
      {5, "classification cross-validation", classification, 0},
      {6, "adjoint", adjoint, 0},
      {7, "densely-defined equivalence", dense_domain, 0},
      {8, "conditional expectation core", cond_exp_core, 0},
      {9, "suite JSON report", cli_suite, 0},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget > 0) o = with_budget(o, secs, c.budget);
    failed += !o.pass;
    std::cout << "criterion " << c.id << " " << (o.pass ? "PASS" : "FAIL") << " " << c.title << ": "
              << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
