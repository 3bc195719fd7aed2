#include <cmath>
#include <fstream>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "wce/scenarios.hpp"
#include "wce/space_file.hpp"
#include "wce/suite.hpp"

using namespace test;
using wce::Index;
namespace sc = wce::scenarios;

TEST_CASE("finite case builders") {
  const auto full = sc::case_full(4);
  CHECK((wce::projection_matrix(full.partition, full.space) - Mat::Identity(4, 4)).norm() == 0.0);
  CHECK(max_abs(full.u - vec({1, 2, 3, 4})) == 0.0);

  const auto trivial = sc::case_trivial(4);
  std::mt19937_64 rng(1);
  const auto f = wce::random_function<double>(4, rng);
  const auto tf = wce::apply(trivial.op(), f);
  const C mean = (trivial.u.cwiseProduct(f)).mean();
  for (Index i = 0; i < 4; ++i) CHECK(std::abs(tf[i] - mean) < 1e-15);

  const auto parts = sc::case_partition(7, 3);
  CHECK(parts.partition.members(0).size() == 3);
  CHECK(parts.partition.members(1).size() == 2);
  CHECK(parts.partition.members(2).size() == 2);

  CHECK_THROWS_AS(sc::case_partition(3, 4), wce::ParameterError);
  CHECK_THROWS_AS(sc::case_partition(3, 0), wce::ParameterError);
  CHECK_THROWS_AS(sc::case_full(0), wce::ParameterError);
  CHECK_THROWS_AS(sc::case_full(3, vec({1, 2})), wce::ParameterError);
  CHECK_THROWS_AS(sc::case_trivial(3, std::nullopt, rvec({1, 2})), wce::ParameterError);
}

TEST_CASE("product grid") {
  CHECK_THROWS_AS(sc::product_grid(1), wce::ParameterError);
  for (Index m : {2, 5, 8}) {
    const auto g = sc::product_grid(m, [](double, double y) { return C(y); });
    CHECK(g.space.total_mass() == doctest::Approx(1.0));
    const auto ey = wce::cond_exp(g.u, g.partition, g.space);
    CHECK(max_abs(ey - Vec::Constant(m * m, 0.5)) <= 1e-15);
    const auto h = sc::product_grid(m, [](double x, double) { return C(std::sin(x), x); });
    CHECK(wce::classify(h.op(), 1e-10).normal);
  }
}

TEST_CASE("symmetric interval") {
  CHECK_THROWS_AS(sc::symmetric_interval(7), wce::ParameterError);
  CHECK_THROWS_AS(sc::symmetric_interval(0), wce::ParameterError);
  const auto s = sc::symmetric_interval(200);
  CHECK(s.space.total_mass() == doctest::Approx(1.0));
  const auto op = s.op();
  for (Index i = 0; i < 200; ++i) {
    const double x = s.space.label(i)[0];
    CHECK(std::abs(op.cond_u_abs2()[i] - std::cosh(2 * x)) <= 1e-12);
    CHECK(std::abs(op.cond_u()[i] - std::cosh(x)) <= 1e-12);
  }
}

TEST_CASE("Poisson parity") {
  const auto p = sc::poisson_parity(1.0, 1e-12);
  const auto op = p.op();
  CHECK(op.cond_u()[0] == C(0));
  // odd and even series summed directly, in the opposite order
  double on = 0, od = 0, en = 0, ed = 0;
  for (int x = 40; x >= 1; --x) {
    const double w = std::exp(-std::lgamma(x + 1.0));
    (x % 2 ? on : en) += x * w;
    (x % 2 ? od : ed) += w;
  }
  CHECK(std::abs(op.cond_u()[1] - C(on / od)) <= 1e-10);
  CHECK(std::abs(op.cond_u()[2] - C(en / ed)) <= 1e-10);
  CHECK(std::abs(on / od - 1.3130352855) <= 1e-10);
  CHECK(std::abs(en / ed - 2.1639534137) <= 1e-10);
  CHECK(p.discarded_mass <= 1e-12);
  CHECK_THROWS_AS(sc::poisson_parity_spec(0.0), wce::ParameterError);
}

TEST_CASE("builders are deterministic") {
  for (const auto& name : sc::names()) {
    const auto a = sc::by_name(name, {});
    const auto b = sc::by_name(name, {});
    CHECK(a.space.weights() == b.space.weights());
    CHECK(a.partition.atom_ids() == b.partition.atom_ids());
    CHECK(a.u == b.u);
  }
  const auto a = wce::random_instance<double>(99).op;
  const auto b = wce::random_instance<double>(99).op;
  CHECK(a.u() == b.u());
  CHECK(a.space().weights() == b.space().weights());
}

TEST_CASE("named scenarios and parameters") {
  CHECK(sc::by_name("case-partition", {{"n", 9}, {"m", 4}}).partition.atom_count() == 4);
  CHECK(sc::by_name("symmetric-interval", {{"N", 10}}).space.size() == 10);
  CHECK_THROWS_AS(sc::by_name("nope", {}), wce::ParameterError);
  CHECK_THROWS_AS(sc::by_name("case-full", {{"m", 2}}), wce::ParameterError);
  CHECK_THROWS_AS(sc::by_name("case-full", {{"n", 2.5}}), wce::ParameterError);
}

TEST_CASE("space description files") {
  const auto s = wce::parse_space_description(R"({
    "name": "demo",
    "points": [{"weight": 0.5, "label": [-0.5]}, {"weight": 0.5, "label": [0.5]}, {"weight": 1.0, "label": [0.0]}],
    "atoms": [[0, 1], [2]],
    "u": {"builtin": "exp_label0"}
  })");
  CHECK(s.name == "demo");
  CHECK(s.partition.atom_count() == 2);
  CHECK(std::abs(s.op().cond_u()[0] - C(std::cosh(0.5))) < 1e-15);

  const auto v = wce::parse_space_description(R"({
    "points": [{"weight": 1}, {"weight": 2}],
    "atoms": [[1], [0]],
    "u": {"values": [[1, 2], [3, -4]]}
  })");
  CHECK(v.u[1] == C(3, -4));

  const auto alt = wce::parse_space_description(R"({
    "points": [{"weight": 1}, {"weight": 1}, {"weight": 1}],
    "atoms": [[0, 1, 2]],
    "u": {"builtin": "sign_alternating"}
  })");
  CHECK(max_abs(alt.u - vec({1, -1, 1})) == 0.0);

  auto rejects = [](const char* text) {
    CHECK_THROWS_AS(wce::parse_space_description(text), wce::SpaceFileError);
  };
  rejects("not json");
  rejects(R"({"points": [{"weight": 1}], "atoms": [[0, 0]], "u": {"values": [[1, 0]]}})");
  rejects(R"({"points": [{"weight": 1}, {"weight": 1}], "atoms": [[0, 1], [1]], "u": {"builtin": "sign_alternating"}})");
  rejects(R"({"points": [{"weight": 1}, {"weight": 1}], "atoms": [[0]], "u": {"builtin": "sign_alternating"}})");
  rejects(R"({"points": [{"weight": 0}], "atoms": [[0]], "u": {"values": [[1, 0]]}})");
  rejects(R"({"points": [{"weight": 1}], "atoms": [[0]], "u": {"values": [[1, 0], [2, 0]]}})");
  rejects(R"({"points": [{"weight": 1}], "atoms": [[0]], "u": {"builtin": "exp_label0"}})");
  rejects(R"({"points": [{"weight": 1}], "atoms": [[0]], "u": {"builtin": "cube"}})");
  rejects(R"({"points": [{"weight": 1}], "atoms": [[0]], "u": {"builtin": "sign_alternating", "values": [[1, 0]]}})");
  rejects(R"({"points": [{"weight": 1}], "atoms": [[0]], "u": {"values": [[1, 0]]}, "extra": 1})");
  rejects(R"({"points": [{"weight": 1, "label": [0]}, {"weight": 1}], "atoms": [[0, 1]], "u": {"builtin": "sign_alternating"}})");

  CHECK_THROWS_AS(wce::load_space_file("/nonexistent/space.json"), wce::SpaceFileError);
}

TEST_CASE("suite covers every lettered claim") {
  const auto report = wce::suite::run();
  std::set<std::string> claims;
  for (const auto& e : report.entries) {
    CHECK_FALSE(e.provenance.empty());
    CHECK(e.tolerance > 0);
    claims.insert(e.claim);
  }
  CHECK(claims.size() == report.entries.size());
  for (const char* c : {"ex1.case1.a", "ex1.case1.b1", "ex1.case1.b2", "ex1.case1.b3",
                        "ex1.case2.a", "ex1.case2.b1", "ex1.case2.b2", "ex1.case2.b3", "ex1.case2.b4",
                        "ex1.case3.a", "ex1.case3.b1", "ex1.case3.b2", "ex1.case3.b3", "ex1.case3.b4",
                        "ex2.a", "ex2.b1", "ex2.b2", "ex2.b3", "ex2.b4",
                        "ex3.a", "ex3.b", "ex3.c", "ex3.d", "ex3.e",
                        "ex4.a", "ex4.b", "ex4.c", "ex4.d"}) {
    CAPTURE(c);
    CHECK(claims.count(c) == 1);
  }
  CHECK_FALSE(report.any_fail());

  const auto j = report.to_json();
  CHECK(j["summary"]["total"] == report.entries.size());
  CHECK(j["entries"].size() == report.entries.size());
  const auto text = report.to_text();
  CHECK(text.find("pass,") != std::string::npos);

  for (const auto& e : report.entries) {
    if (e.claim == "ex4.E_u.even") {
      CHECK(e.status == wce::suite::Status::discrepancy);
      CHECK(e.computed["series"].get<double>() == doctest::Approx(2.1639534137).epsilon(1e-10));
      CHECK(e.expected.get<double>() == doctest::Approx(0.3519457263).epsilon(1e-9));
    }
    if (e.claim == "ex4.E_u.odd") CHECK(e.status == wce::suite::Status::pass);
  }
}
