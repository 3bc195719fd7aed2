#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "wce/measure.hpp"
#include "wce/partition.hpp"

namespace wce {

/// A countable atomic measure space given lazily, point by point.
///
/// The space is only ever used through truncation plus explicit tail bounds.
/// Point i carries mass weight_at(i) > 0, lies in atom atom_of(i) in
/// [0, atom_count), and carries weight value u_at(i).
template <typename Real>
struct CountableSpaceSpec {
  std::string name;
  std::function<Real(Index)> weight_at;
  /// Upper bound on sum_{i >= N} mu_i; nonincreasing in N, tends to 0.
  std::function<Real(Index)> tail_bound;
  std::function<Index(Index)> atom_of;
  std::function<std::complex<Real>(Index)> u_at;
  Index atom_count = 1;

  /// Optional upper bound on sum_{i >= N} mu_i |u_i|^2 (over all atoms).
  /// May return +inf where no bound is known.
  std::function<Real(Index)> weighted_tail_bound;

  /// Optional divergence certificate for the weighted series of one atom:
  /// returns K such that sum_{i < K, i in atom} mu_i |u_i|^2 exceeds level,
  /// or nullopt if the spec cannot exhibit one.
  std::function<std::optional<Index>(Index atom, Real level)> divergence_witness;
};

enum class TruncationRule {
  mass,               ///< stop when the discarded mass is within tolerance
  mass_and_weighted,  ///< additionally require the discarded mu|u|^2 mass within tolerance
};

template <typename Real>
struct Truncation {
  FiniteMeasureSpace<Real> space;
  Partition partition;
  ComplexVector<Real> u;
  std::vector<Index> atom_map;  ///< original atom id -> truncated id, -1 when no point retained
  Real discarded_mass_bound{};
  Real discarded_weighted_bound{};  ///< NaN unless the weighted rule was used
};

inline constexpr Index kTruncationCap = 1 << 20;

/// First N points, where N is the smallest count (at least 1) whose tail bound
/// is at most tail_tol. The retained weights and u values are copied exactly.
template <typename Real>
Truncation<Real> truncate(const CountableSpaceSpec<Real>& spec, Real tail_tol,
                          TruncationRule rule = TruncationRule::mass,
                          Index cap = kTruncationCap) {
  if (!(tail_tol > Real(0))) throw ParameterError("tail tolerance must be positive");
  if (rule == TruncationRule::mass_and_weighted && !spec.weighted_tail_bound) {
    throw ParameterError("spec '" + spec.name + "' has no weighted tail bound");
  }
  auto done = [&](Index n) {
    if (spec.tail_bound(n) > tail_tol) return false;
    return rule == TruncationRule::mass || spec.weighted_tail_bound(n) <= tail_tol;
  };
  Index n = 1;
  while (!done(n)) {
    if (++n > cap) {
      throw NonSummableError("tail bound of '" + spec.name + "' stays above " +
                             std::to_string(static_cast<double>(tail_tol)) + " for " +
                             std::to_string(cap) + " points");
    }
  }

  RealVector<Real> weights(n);
  ComplexVector<Real> u(n);
  std::vector<typename FiniteMeasureSpace<Real>::Label> labels;
  std::vector<Index> atom_map(static_cast<std::size_t>(spec.atom_count), -1);
  std::vector<Index> atom_of(static_cast<std::size_t>(n));
  Index next = 0;
  for (Index i = 0; i < n; ++i) {
    weights[i] = spec.weight_at(i);
    u[i] = spec.u_at(i);
    labels.push_back({static_cast<Real>(i)});
    const Index a = spec.atom_of(i);
    if (a < 0 || a >= spec.atom_count) {
      throw ParameterError("spec '" + spec.name + "' maps point " + std::to_string(i) +
                           " to unknown atom " + std::to_string(a));
    }
    auto& slot = atom_map[static_cast<std::size_t>(a)];
    if (slot == -1) slot = next++;
    atom_of[static_cast<std::size_t>(i)] = slot;
  }
  const Real weighted = rule == TruncationRule::mass_and_weighted
                            ? spec.weighted_tail_bound(n)
                            : std::numeric_limits<Real>::quiet_NaN();
  return Truncation<Real>{FiniteMeasureSpace<Real>(std::move(weights), std::move(labels)),
                          Partition(std::move(atom_of)), std::move(u), std::move(atom_map),
                          spec.tail_bound(n), weighted};
}

}  // namespace wce
