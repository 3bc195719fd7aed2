#include <cmath>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "helpers.hpp"
#include "wce/scenarios.hpp"

using namespace test;
using wce::Index;
using wce::Partition;

namespace {

Mat random_hermitian(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat A(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) A(i, j) = C(g(rng), g(rng));
  return (A + A.adjoint()) / 2.0;
}

Mat random_matrix(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat A(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) A(i, j) = C(g(rng), g(rng));
  return A;
}

Mat diag(std::initializer_list<C> xs) { return vec(xs).asDiagonal(); }

}  // namespace

TEST_CASE("matrix_of examples") {
  const Op m(Space(rvec({1, 1})), Partition::singletons(2), vec({2, 3}));
  CHECK((wce::matrix_of(m) - diag({2, 3})).norm() < 1e-15);

  const Op e(Space::uniform(2, 1.0), Partition::trivial(2), vec({1, 1}));
  CHECK((wce::matrix_of(e) - Mat::Constant(2, 2, 0.5)).norm() < 1e-15);

  CHECK_THROWS_AS(wce::matrix_of(Op(Space::uniform(300, 1.0), Partition::trivial(300), Vec::Ones(300))),
                  wce::PreconditionError);
}

TEST_CASE("matrix_of is linear in u and consistent with the adjoint") {
  std::mt19937_64 rng(5);
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto op = wce::random_instance<double>(s).op;
    const auto u2 = wce::random_function<double>(op.size(), rng);
    const Mat sum = wce::matrix_of(op.with_weight(op.u() + u2));
    CHECK((sum - wce::matrix_of(op) - wce::matrix_of(op.with_weight(u2))).norm() <= 1e-12 * (1 + sum.norm()));
    const Mat M = wce::matrix_of(op);
    CHECK((wce::matrix_of_adjoint(op) - M.adjoint()).norm() <= 1e-12 * (1 + M.norm()));
  }
}

TEST_CASE("hermitian_eig examples") {
  const auto id = wce::hermitian_eig<double>(Mat::Identity(4, 4));
  for (Index i = 0; i < 4; ++i) CHECK(id.values[i] == doctest::Approx(1.0));
  const auto d = wce::hermitian_eig<double>(diag({3, 1}));
  CHECK(d.values[0] == doctest::Approx(1.0));
  CHECK(d.values[1] == doctest::Approx(3.0));

  Mat bad = Mat::Identity(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(wce::hermitian_eig<double>(bad), wce::PreconditionError);
  CHECK_THROWS_AS(wce::hermitian_eig<double>(Mat(2, 3)), wce::PreconditionError);

  std::mt19937_64 rng(2);
  for (Index n : {3, 10, 40}) {
    const Mat A = random_matrix(n, rng);
    const auto e = wce::hermitian_eig<double>(A.adjoint() * A);
    CHECK(e.values.minCoeff() >= -1e-10);
  }
}

TEST_CASE("hermitian_eig reconstruction and unitarity up to n = 128") {
  std::mt19937_64 rng(17);
  for (Index n : {1, 2, 5, 16, 33, 64, 128}) {
    const Mat H = random_hermitian(n, rng);
    const auto e = wce::hermitian_eig<double>(H);
    const double h = H.norm();
    CHECK((H * e.vectors - e.vectors * e.values.cast<C>().asDiagonal()).norm() <= 1e-10 * h);
    CHECK((e.vectors.adjoint() * e.vectors - Mat::Identity(n, n)).norm() <= 1e-10);
    CHECK(std::is_sorted(e.values.data(), e.values.data() + n));
    CHECK(e.sweeps <= 100);
    // cross-check against Eigen's solver
    Eigen::SelfAdjointEigenSolver<Mat> ref(H);
    CHECK((e.values - ref.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-10 * h);
  }
}

TEST_CASE("psd_sqrt") {
  CHECK((wce::psd_sqrt<double>(Mat::Identity(3, 3)) - Mat::Identity(3, 3)).norm() < 1e-14);
  CHECK((wce::psd_sqrt<double>(diag({4, 9})) - diag({2, 3})).norm() < 1e-14);
  CHECK_THROWS_AS(wce::psd_sqrt<double>(diag({4, -1})), wce::PreconditionError);

  std::mt19937_64 rng(6);
  for (Index n : {2, 7, 30, 64}) {
    const Mat A = random_matrix(n, rng);
    const Mat H = A.adjoint() * A;
    const Mat R = wce::psd_sqrt<double>(H);
    CHECK((R * R - H).norm() <= 1e-9 * H.norm());
    CHECK((R - R.adjoint()).norm() <= 1e-12 * R.norm());
    CHECK(wce::hermitian_eig<double>(R).values.minCoeff() >= -1e-10 * R.norm());
  }
  // rank-deficient input: small negative rounding is clamped
  const Mat v = random_matrix(5, rng).col(0);
  const Mat P = v * v.adjoint();
  const Mat R = wce::psd_sqrt<double>(P);
  CHECK((R * R - P).norm() <= 1e-9 * P.norm());
}

TEST_CASE("singular values and the min-singular-value probe") {
  CHECK(wce::min_singular_value<double>(diag({2, 3}), 2.0) == doctest::Approx(0.0));
  CHECK(wce::min_singular_value<double>(diag({2, 3}), 0.0) == doctest::Approx(2.0));
  CHECK(wce::min_singular_value<double>(diag({2, 3}), C(2.5, 0)) == doctest::Approx(0.5));

  std::mt19937_64 rng(9);
  for (Index n : {3, 12, 50}) {
    const Mat A = random_matrix(n, rng);
    const auto s = wce::singular_values(A);
    Eigen::JacobiSVD<Mat> ref(A);
    CHECK((s - ref.singularValues()).cwiseAbs().maxCoeff() <= 1e-12 * s[0]);
    CHECK(wce::spectral_norm(A) == doctest::Approx(s[0]));
  }
  // atom values of E(u) are hit
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto op = wce::random_instance<double>(seed).op;
    if (op.partition().is_discrete()) continue;
    const Mat M = wce::matrix_of(op);
    const C lambda = op.cond_u()[0];
    CHECK(wce::min_singular_value(M, lambda) <= 1e-8 * wce::spectral_norm(M));
  }
}

TEST_CASE("residuals") {
  const auto sc = wce::scenarios::case_partition(6, 3, vec({1, 1, -2, -2, 3, 3}));
  const auto r = wce::residuals(sc.op());
  CHECK(r.normal <= 1e-10);
  CHECK(r.self_adjoint <= 1e-10);
  CHECK(r.quasinormal <= 1e-10);

  const Op two(Space::uniform(2, 1.0), Partition::trivial(2), vec({1, -1}));
  const auto r2 = wce::residuals(two);
  CHECK(r2.normal > 0.1);
  CHECK_FALSE(r2.is_normal(1e-8));
}

TEST_CASE("spectrum verification") {
  const auto sym = wce::scenarios::symmetric_interval(16);
  const auto op = sym.op();
  const auto s = wce::spectrum_formula(op, 1e-10);
  const auto check = wce::verify_spectrum(wce::matrix_of(op), s.values);
  CHECK(check.candidates_hit(1e-8));
  CHECK(check.probes_clear(1e-8));
  CHECK(check.probes_regular(1e-8));
  CHECK(check.probes.size() == s.values.size() - 1 + 4);

  // a wrong candidate set is caught: dropping 0 leaves probes near the true eigenvalue
  std::vector<C> wrong(s.values.begin() + 1, s.values.end());
  wrong.push_back(C(-0.3));
  const auto bad = wce::verify_spectrum(wce::matrix_of(op), wrong);
  CHECK_FALSE(bad.candidates_hit(1e-8));

  // same seed, same probes
  const auto again = wce::verify_spectrum(wce::matrix_of(op), s.values);
  REQUIRE(again.probes.size() == check.probes.size());
  for (std::size_t k = 0; k < again.probes.size(); ++k) CHECK(again.probes[k].lambda == check.probes[k].lambda);
}

TEST_CASE("oracle verdicts reproduce formula verdicts on every scenario") {
  for (const auto& name : wce::scenarios::names()) {
    CAPTURE(name);
    const auto sc = wce::scenarios::by_name(name, {});
    const auto op = sc.op();
    const auto c = wce::classify(op, 1e-10);
    const auto r = wce::residuals(op);
    CHECK(c.normal == r.is_normal(1e-8));
    CHECK(c.self_adjoint == r.is_self_adjoint(1e-8));
    CHECK(c.quasinormal == r.is_quasinormal(1e-8));
    const auto s = wce::spectrum_formula(op, 1e-10);
    const auto check = wce::verify_spectrum(wce::matrix_of(op), s.values);
    CHECK(check.candidates_hit(1e-8));
    CHECK(check.probes_clear(1e-8));
  }
}
