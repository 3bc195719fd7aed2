#pragma once

// Dense-matrix ground truth for the operator-level formulas.
//
// Everything here works on the matrix of an operator in the orthonormal basis
// e_i = delta_i / sqrt(mu_i) of L^2(mu). Only Hermitian problems are solved
// (cyclic Jacobi); spectra of the non-normal operators are probed through
// minimum singular values instead of a general eigensolver.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "wce/operator.hpp"

namespace wce {

template <typename Real>
using DenseMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr Index kOracleMaxOrder = 256;

/// Scalar used for square roots and residuals. Eigenvalues of M* M near zero
/// carry O(eps ||M||^2) rounding, so their square roots are only accurate to
/// sqrt(eps) ||M||; the wider type pushes that floor well below 1e-8.
using OracleReal = long double;

template <typename Wide, typename Real>
DenseMatrix<Wide> promote(const DenseMatrix<Real>& M) {
  return M.template cast<std::complex<Wide>>();
}

/// M* M
template <typename Real>
DenseMatrix<Real> gram(const DenseMatrix<Real>& M) {
  return M.adjoint() * M;
}

/// Matrix of a linear map on L^2(sp): entry (j, i) = <map(e_i), e_j>.
template <typename Real, typename Map>
DenseMatrix<Real> matrix_of_map(const FiniteMeasureSpace<Real>& sp, Map&& map) {
  const Index n = sp.size();
  if (n > kOracleMaxOrder) {
    throw PreconditionError("oracle matrices are limited to order " +
                            std::to_string(kOracleMaxOrder));
  }
  DenseMatrix<Real> M(n, n);
  for (Index i = 0; i < n; ++i) {
    ComplexVector<Real> e = ComplexVector<Real>::Zero(n);
    e[i] = Real(1) / std::sqrt(sp.weight(i));
    const ComplexVector<Real> image = map(e);
    for (Index j = 0; j < n; ++j) M(j, i) = image[j] * std::sqrt(sp.weight(j));
  }
  return M;
}

template <typename Real>
DenseMatrix<Real> matrix_of(const WCEOperator<Real>& T) {
  return matrix_of_map(T.space(), [&](const ComplexVector<Real>& f) { return apply(T, f); });
}

template <typename Real>
DenseMatrix<Real> matrix_of_adjoint(const WCEOperator<Real>& T) {
  return matrix_of_map(T.space(),
                       [&](const ComplexVector<Real>& f) { return apply_adjoint(T, f); });
}

namespace detail {

// Unitary J = [[c, s e], [-s conj(e), c]] annihilating the off-diagonal entry
// of the Hermitian block [[app, apq], [conj(apq), aqq]] under J* A J.
template <typename Real>
struct Rotation {
  Real c{1};
  Real s{0};
  std::complex<Real> e{1, 0};
};

template <typename Real>
Rotation<Real> hermitian_rotation(Real app, Real aqq, std::complex<Real> apq) {
  const Real g = std::abs(apq);
  Rotation<Real> r;
  if (g == Real(0)) return r;
  r.e = apq / g;
  const Real theta = (aqq - app) / (Real(2) * g);
  const Real t = theta == Real(0)
                     ? Real(1)
                     : std::copysign(Real(1), theta) /
                           (std::abs(theta) + std::sqrt(theta * theta + Real(1)));
  r.c = Real(1) / std::sqrt(Real(1) + t * t);
  r.s = t * r.c;
  return r;
}

// A <- A J on columns p, q.
template <typename Real>
void rotate_columns(DenseMatrix<Real>& A, Index p, Index q, const Rotation<Real>& r) {
  const auto se = r.s * r.e;
  const auto sce = r.s * std::conj(r.e);
  for (Index k = 0; k < A.rows(); ++k) {
    const auto x = A(k, p);
    const auto y = A(k, q);
    A(k, p) = r.c * x - sce * y;
    A(k, q) = se * x + r.c * y;
  }
}

// A <- J* A on rows p, q.
template <typename Real>
void rotate_rows(DenseMatrix<Real>& A, Index p, Index q, const Rotation<Real>& r) {
  const auto se = r.s * r.e;
  const auto sce = r.s * std::conj(r.e);
  for (Index k = 0; k < A.cols(); ++k) {
    const auto x = A(p, k);
    const auto y = A(q, k);
    A(p, k) = r.c * x - se * y;
    A(q, k) = sce * x + r.c * y;
  }
}

template <typename Real>
Real off_diagonal_norm(const DenseMatrix<Real>& A) {
  Real acc{0};
  for (Index j = 0; j < A.cols(); ++j)
    for (Index i = 0; i < A.rows(); ++i)
      if (i != j) acc += std::norm(A(i, j));
  return std::sqrt(acc);
}

}  // namespace detail

template <typename Real>
struct HermitianEig {
  RealVector<Real> values;     ///< ascending
  DenseMatrix<Real> vectors;   ///< columns are the matching eigenvectors
  int sweeps = 0;
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix. Stops when the
/// off-diagonal Frobenius norm is at most 1e-14 ||H||_F or after 100 sweeps.
template <typename Real>
HermitianEig<Real> hermitian_eig(const DenseMatrix<Real>& H, Real tol = Real(1e-10)) {
  if (H.rows() != H.cols()) throw PreconditionError("hermitian_eig needs a square matrix");
  if (!H.allFinite()) throw PreconditionError("hermitian_eig input has non-finite entries");
  const Index n = H.rows();
  const Real scale = H.norm();
  if ((H - H.adjoint()).norm() > tol * scale) {
    throw PreconditionError("hermitian_eig input is not Hermitian");
  }
  DenseMatrix<Real> A = (H + H.adjoint()) / Real(2);
  DenseMatrix<Real> V = DenseMatrix<Real>::Identity(n, n);
  const Real stop = Real(1e-14) * scale;

  HermitianEig<Real> out;
  while (out.sweeps < 100 && detail::off_diagonal_norm(A) > stop) {
    ++out.sweeps;
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        if (A(p, q) == std::complex<Real>(0)) continue;
        const auto r = detail::hermitian_rotation(A(p, p).real(), A(q, q).real(), A(p, q));
        detail::rotate_columns(A, p, q, r);
        detail::rotate_rows(A, p, q, r);
        A(p, q) = A(q, p) = std::complex<Real>(0);
        A(p, p) = A(p, p).real();
        A(q, q) = A(q, q).real();
        detail::rotate_columns(V, p, q, r);
      }
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return A(a, a).real() < A(b, b).real(); });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    out.values[k] = A(src, src).real();
    out.vectors.col(k) = V.col(src);
  }
  return out;
}

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-1e-8 ||H||_F, 0) are clamped to zero; anything more negative is rejected.
template <typename Real>
DenseMatrix<Real> psd_sqrt(const DenseMatrix<Real>& H) {
  const auto eig = hermitian_eig(H);
  const Real floor = -Real(1e-8) * H.norm();
  RealVector<Real> roots(eig.values.size());
  for (Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values[k] < floor) {
      throw PreconditionError("psd_sqrt input has eigenvalue " +
                              std::to_string(static_cast<double>(eig.values[k])));
    }
    roots[k] = std::sqrt(std::max(eig.values[k], Real(0)));
  }
  return eig.vectors * roots.template cast<std::complex<Real>>().asDiagonal() *
         eig.vectors.adjoint();
}

/// Singular values (descending) by one-sided Jacobi: columns are rotated
/// pairwise with the Hermitian 2x2 rotation of their Gram block until they are
/// mutually orthogonal, then the column norms are the singular values. This
/// avoids squaring the condition number the way eig(M* M) would.
template <typename Real>
RealVector<Real> singular_values(DenseMatrix<Real> A) {
  const Index n = A.cols();
  const Real eps = Real(4) * std::numeric_limits<Real>::epsilon();
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Real alpha = A.col(p).squaredNorm();
        const Real beta = A.col(q).squaredNorm();
        const std::complex<Real> gamma = A.col(p).dot(A.col(q));
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        detail::rotate_columns(A, p, q, detail::hermitian_rotation(alpha, beta, gamma));
      }
    }
    if (!rotated) break;
  }
  RealVector<Real> s = A.colwise().norm().transpose();
  std::sort(s.data(), s.data() + s.size(), std::greater<Real>());
  return s;
}

template <typename Real>
Real spectral_norm(const DenseMatrix<Real>& M) {
  const auto s = singular_values(M);
  return s.size() ? s[0] : Real(0);
}

/// sigma_min(M - lambda I).
template <typename Real>
Real min_singular_value(const DenseMatrix<Real>& M, std::complex<Real> lambda) {
  DenseMatrix<Real> shifted = M;
  shifted.diagonal().array() -= lambda;
  const auto s = singular_values(std::move(shifted));
  return s[s.size() - 1];
}

struct OracleResiduals {
  double norm = 0;                    ///< ||M||_F
  double normal = 0;                  ///< ||M*M - MM*||_F
  double self_adjoint = 0;            ///< ||M - M*||_F
  double quasinormal = 0;             ///< ||M|M|^2 - |M|^2 M||_F
  double normal_relative = 0;         ///< normal / ||M||_F^2
  double self_adjoint_relative = 0;   ///< self_adjoint / ||M||_F
  double quasinormal_relative = 0;    ///< quasinormal / ||M||_F^3

  bool is_normal(double tol) const { return normal_relative <= tol; }
  bool is_self_adjoint(double tol) const { return self_adjoint_relative <= tol; }
  bool is_quasinormal(double tol) const { return quasinormal_relative <= tol; }
};

template <typename Real>
OracleResiduals residuals(const DenseMatrix<Real>& M) {
  const DenseMatrix<Real> Ms = M.adjoint();
  const DenseMatrix<Real> abs_m = psd_sqrt<Real>(Ms * M);
  const DenseMatrix<Real> abs_m2 = abs_m * abs_m;
  OracleResiduals r;
  const Real f = M.norm();
  r.norm = static_cast<double>(f);
  r.normal = static_cast<double>((Ms * M - M * Ms).norm());
  r.self_adjoint = static_cast<double>((M - Ms).norm());
  r.quasinormal = static_cast<double>((M * abs_m2 - abs_m2 * M).norm());
  if (f > Real(0)) {
    r.normal_relative = r.normal / (r.norm * r.norm);
    r.self_adjoint_relative = r.self_adjoint / r.norm;
    r.quasinormal_relative = r.quasinormal / (r.norm * r.norm * r.norm);
  }
  return r;
}

template <typename Real>
OracleResiduals residuals(const WCEOperator<Real>& T) {
  return residuals(promote<OracleReal>(matrix_of(T)));
}

template <typename Real>
struct Probe {
  std::complex<Real> lambda;
  Real distance;        ///< distance from lambda to the candidate set
  Real min_singular;    ///< sigma_min(M - lambda I)
};

template <typename Real>
struct SpectrumCheck {
  Real operator_norm{};
  std::vector<std::complex<Real>> candidates;
  std::vector<Real> candidate_min_singular;
  std::vector<Probe<Real>> probes;

  /// Every candidate is (numerically) in the spectrum.
  bool candidates_hit(Real rel_tol) const {
    for (auto s : candidate_min_singular)
      if (s > rel_tol * operator_norm) return false;
    return true;
  }
  /// Every probe at distance delta has sigma_min >= delta/2 - slack.
  bool probes_clear(Real slack) const {
    for (const auto& p : probes)
      if (p.min_singular < p.distance / Real(2) - slack) return false;
    return true;
  }
  /// Every probe point is a regular point (sigma_min bounded away from 0).
  bool probes_regular(Real rel_tol) const {
    for (const auto& p : probes)
      if (p.min_singular <= rel_tol * operator_norm) return false;
    return true;
  }
};

template <typename Real>
Real distance_to_set(std::complex<Real> z, const std::vector<std::complex<Real>>& set) {
  Real d = std::numeric_limits<Real>::infinity();
  for (const auto& c : set) d = std::min(d, std::abs(z - c));
  return d;
}

/// Probes a candidate spectrum: sigma_min at every candidate, at the midpoint
/// of each pair of consecutive (sorted) candidates, and at `outside` random
/// points beyond the disc enclosing the candidates.
template <typename Real>
SpectrumCheck<Real> verify_spectrum(const DenseMatrix<Real>& M,
                                    std::vector<std::complex<Real>> candidates,
                                    std::uint64_t seed = 0x5eed, int outside = 4) {
  SpectrumCheck<Real> check;
  std::sort(candidates.begin(), candidates.end(), lex_less<Real>);
  check.operator_norm = spectral_norm(M);
  check.candidates = candidates;
  for (const auto& c : candidates) check.candidate_min_singular.push_back(min_singular_value(M, c));

  auto add_probe = [&](std::complex<Real> z) {
    const Real d = distance_to_set(z, candidates);
    if (d > Real(0)) check.probes.push_back({z, d, min_singular_value(M, z)});
  };
  for (std::size_t k = 0; k + 1 < candidates.size(); ++k) {
    add_probe((candidates[k] + candidates[k + 1]) / Real(2));
  }

  std::complex<Real> centre{0, 0};
  for (const auto& c : candidates) centre += c;
  if (!candidates.empty()) centre /= Real(candidates.size());
  Real radius{0};
  for (const auto& c : candidates) radius = std::max(radius, std::abs(c - centre));
  const Real scale = std::max({radius, check.operator_norm, Real(1)});
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> gap(0.1, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int k = 0; k < outside; ++k) {
    const Real r = radius + Real(gap(rng)) * scale;
    add_probe(centre + std::polar(r, Real(angle(rng))));
  }
  return check;
}

}  // namespace wce
