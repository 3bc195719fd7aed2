#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wce/errors.hpp"

namespace wce {

using Index = Eigen::Index;

template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// A complex measurable function stored as its values on the points of a
/// finite measure space. Arithmetic is plain Eigen coefficient-wise algebra.
template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

/// Point masses representing a discretized sigma-finite measure space.
///
/// Every mass is strictly positive, so "almost everywhere" statements become
/// statements about every point. Optional labels carry the coordinates of the
/// discretization nodes (grid points, integers, ...).
template <typename Real>
class FiniteMeasureSpace {
 public:
  using Label = std::vector<Real>;

  explicit FiniteMeasureSpace(RealVector<Real> weights,
                              std::vector<Label> labels = {})
      : weights_(std::move(weights)), labels_(std::move(labels)) {
    if (weights_.size() < 1) {
      throw ParameterError("measure space needs at least one point");
    }
    for (Index i = 0; i < weights_.size(); ++i) {
      if (!(weights_[i] > Real(0)) || !std::isfinite(weights_[i])) {
        throw ParameterError("point mass " + std::to_string(i) +
                             " is not a finite positive number");
      }
    }
    if (!labels_.empty() && static_cast<Index>(labels_.size()) != weights_.size()) {
      throw ParameterError("label count does not match point count");
    }
    total_mass_ = weights_.sum();
  }

  /// Uniform space of n points each carrying mass total/n.
  static FiniteMeasureSpace uniform(Index n, Real total = Real(1)) {
    if (n < 1) throw ParameterError("measure space needs at least one point");
    return FiniteMeasureSpace(RealVector<Real>::Constant(n, total / Real(n)));
  }

  Index size() const { return weights_.size(); }
  Real weight(Index i) const { return weights_[i]; }
  const RealVector<Real>& weights() const { return weights_; }
  Real total_mass() const { return total_mass_; }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<Label>& labels() const { return labels_; }
  const Label& label(Index i) const { return labels_.at(static_cast<std::size_t>(i)); }

 private:
  RealVector<Real> weights_;
  std::vector<Label> labels_;
  Real total_mass_{};
};

template <typename Real, typename Derived>
void require_aligned(const Eigen::MatrixBase<Derived>& f,
                     const FiniteMeasureSpace<Real>& sp, const char* what = "function") {
  if (f.size() != sp.size()) {
    throw DimensionError(std::string(what) + " has " + std::to_string(f.size()) +
                         " values but the space has " + std::to_string(sp.size()) +
                         " points");
  }
}

/// <f, g> = sum_i f_i conj(g_i) mu_i.
template <typename Real>
std::complex<Real> inner_product(const ComplexVector<Real>& f, const ComplexVector<Real>& g,
                                 const FiniteMeasureSpace<Real>& sp) {
  require_aligned(f, sp, "left operand");
  require_aligned(g, sp, "right operand");
  std::complex<Real> acc{0, 0};
  for (Index i = 0; i < f.size(); ++i) {
    acc += f[i] * std::conj(g[i]) * sp.weight(i);
  }
  return acc;
}

template <typename Real>
Real norm(const ComplexVector<Real>& f, const FiniteMeasureSpace<Real>& sp) {
  require_aligned(f, sp);
  return std::sqrt((f.cwiseAbs2().array() * sp.weights().array()).sum());
}

/// Indices where |f| exceeds tol.
template <typename Real>
std::vector<Index> support(const ComplexVector<Real>& f, Real tol) {
  if (tol < Real(0)) throw ParameterError("support tolerance must be non-negative");
  std::vector<Index> out;
  for (Index i = 0; i < f.size(); ++i) {
    if (std::abs(f[i]) > tol) out.push_back(i);
  }
  return out;
}

template <typename Real>
bool lex_less(const std::complex<Real>& a, const std::complex<Real>& b) {
  return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

/// Distinct values of f on positive-mass points, merged by single linkage at
/// distance tol. Each cluster is represented by its mass-weighted mean; the
/// result is sorted lexicographically by (real, imag).
template <typename Real>
std::vector<std::complex<Real>> ess_range(const ComplexVector<Real>& f,
                                          const FiniteMeasureSpace<Real>& sp, Real tol) {
  require_aligned(f, sp);
  if (tol < Real(0)) throw ParameterError("essential range tolerance must be non-negative");
  const auto n = static_cast<std::size_t>(f.size());

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lex_less(f[static_cast<Index>(a)], f[static_cast<Index>(b)]);
  });

  // union-find over sorted positions
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  // Pairs within tol differ by at most tol in real part, so a window scan over
  // the real-sorted order finds every linking pair.
  for (std::size_t a = 0; a < n; ++a) {
    const auto va = f[static_cast<Index>(order[a])];
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto vb = f[static_cast<Index>(order[b])];
      if (vb.real() - va.real() > tol) break;
      if (std::abs(vb - va) <= tol) parent[find(b)] = find(a);
    }
  }

  std::vector<std::complex<Real>> sum(n, std::complex<Real>{0, 0});
  std::vector<Real> mass(n, Real(0));
  for (std::size_t a = 0; a < n; ++a) {
    const auto r = find(a);
    const auto i = static_cast<Index>(order[a]);
    sum[r] += sp.weight(i) * f[i];
    mass[r] += sp.weight(i);
  }
  std::vector<std::complex<Real>> out;
  for (std::size_t r = 0; r < n; ++r) {
    if (mass[r] > Real(0)) out.push_back(sum[r] / mass[r]);
  }
  std::sort(out.begin(), out.end(), lex_less<Real>);
  return out;
}

}  // namespace wce
