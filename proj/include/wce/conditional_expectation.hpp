#pragma once

#include <cmath>
#include <complex>

#include "wce/measure.hpp"
#include "wce/partition.hpp"

namespace wce {

/// E(f): on each atom, the mass-weighted average of f.
template <typename Real>
ComplexVector<Real> cond_exp(const ComplexVector<Real>& f, const Partition& p,
                             const FiniteMeasureSpace<Real>& sp) {
  require_aligned(f, sp);
  require_aligned(p, sp);
  ComplexVector<Real> out(f.size());
  for (Index a = 0; a < p.atom_count(); ++a) {
    std::complex<Real> acc{0, 0};
    Real mass{0};
    for (auto i : p.members(a)) {
      acc += sp.weight(i) * f[i];
      mass += sp.weight(i);
    }
    const auto avg = acc / mass;
    for (auto i : p.members(a)) out[i] = avg;
  }
  return out;
}

/// Real-valued overload, convenient for E(|u|^2).
template <typename Real>
RealVector<Real> cond_exp(const RealVector<Real>& f, const Partition& p,
                          const FiniteMeasureSpace<Real>& sp) {
  require_aligned(f, sp);
  require_aligned(p, sp);
  RealVector<Real> out(f.size());
  for (Index a = 0; a < p.atom_count(); ++a) {
    Real acc{0};
    Real mass{0};
    for (auto i : p.members(a)) {
      acc += sp.weight(i) * f[i];
      mass += sp.weight(i);
    }
    for (auto i : p.members(a)) out[i] = acc / mass;
  }
  return out;
}

/// Matrix of E in the orthonormal coordinates e_i = delta_i / sqrt(mu_i):
/// entry (j, i) = sqrt(mu_i mu_j) / mu(A) when i, j share atom A, else 0.
template <typename Real>
Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic> projection_matrix(
    const Partition& p, const FiniteMeasureSpace<Real>& sp) {
  require_aligned(p, sp);
  using Matrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix P = Matrix::Zero(sp.size(), sp.size());
  for (Index a = 0; a < p.atom_count(); ++a) {
    const Real mass = p.atom_mass(a, sp);
    for (auto i : p.members(a)) {
      for (auto j : p.members(a)) {
        P(j, i) = std::sqrt(sp.weight(i) * sp.weight(j)) / mass;
      }
    }
  }
  return P;
}

struct MeasurabilityReport {
  bool measurable = true;
  double max_deviation = 0.0;  ///< largest per-atom mass-weighted standard deviation
  Index worst_atom = -1;       ///< atom attaining max_deviation, -1 if none deviates
};

/// Whether f is constant on every atom, up to a mass-weighted standard
/// deviation of tol.
template <typename Real>
MeasurabilityReport is_measurable(const ComplexVector<Real>& f, const Partition& p,
                                  const FiniteMeasureSpace<Real>& sp, Real tol) {
  require_aligned(f, sp);
  require_aligned(p, sp);
  if (tol < Real(0)) throw ParameterError("measurability tolerance must be non-negative");
  MeasurabilityReport report;
  for (Index a = 0; a < p.atom_count(); ++a) {
    std::complex<Real> acc{0, 0};
    Real mass{0};
    for (auto i : p.members(a)) {
      acc += sp.weight(i) * f[i];
      mass += sp.weight(i);
    }
    const auto mean = acc / mass;
    Real var{0};
    for (auto i : p.members(a)) var += sp.weight(i) * std::norm(f[i] - mean);
    const double dev = static_cast<double>(std::sqrt(var / mass));
    if (dev > report.max_deviation) {
      report.max_deviation = dev;
      report.worst_atom = a;
    }
  }
  report.measurable = report.max_deviation <= static_cast<double>(tol);
  return report;
}

}  // namespace wce
