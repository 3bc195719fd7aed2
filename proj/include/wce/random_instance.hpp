#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "wce/operator.hpp"

namespace wce {

/// Which classification branch a random instance is steered towards.
enum class InstanceKind {
  generic,         ///< Gaussian complex u
  atom_constant,   ///< u constant on atoms, complex (normal)
  atom_real,       ///< u constant on atoms and real (self-adjoint)
  zero_mean,       ///< E(u) = 0 while u != 0 on non-singleton atoms
};

inline std::string_view to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::generic: return "generic";
    case InstanceKind::atom_constant: return "atom_constant";
    case InstanceKind::atom_real: return "atom_real";
    case InstanceKind::zero_mean: return "zero_mean";
  }
  return "?";
}

struct InstanceOptions {
  Index min_points = 2;
  Index max_points = 64;
  double min_weight = 1e-3;
  double max_weight = 1.0;
  /// Probability of each injected special kind; generic gets the remainder.
  double special_probability = 0.2;
};

template <typename Real>
struct RandomInstance {
  WCEOperator<Real> op;
  InstanceKind kind;
};

/// Random (space, partition, u): n uniform in [min_points, max_points],
/// log-uniform masses, atom count uniform in [1, n], Gaussian complex u, with
/// atom-constant / real / zero-mean weights injected at a fixed rate.
template <typename Real>
RandomInstance<Real> random_instance(std::uint64_t seed, const InstanceOptions& opt = {}) {
  std::mt19937_64 rng(seed);
  const Index n = std::uniform_int_distribution<Index>(opt.min_points, opt.max_points)(rng);
  std::uniform_real_distribution<double> logw(std::log(opt.min_weight), std::log(opt.max_weight));
  RealVector<Real> w(n);
  for (Index i = 0; i < n; ++i) w[i] = static_cast<Real>(std::exp(logw(rng)));

  const Index m = std::uniform_int_distribution<Index>(1, n)(rng);
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Index> atom_of(static_cast<std::size_t>(n));
  std::uniform_int_distribution<Index> pick(0, m - 1);
  for (Index k = 0; k < n; ++k) {
    atom_of[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] = k < m ? k : pick(rng);
  }
  FiniteMeasureSpace<Real> space(std::move(w));
  Partition partition(std::move(atom_of));

  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const double roll = coin(rng);
  const double p = opt.special_probability;
  InstanceKind kind = roll < p         ? InstanceKind::atom_constant
                      : roll < 2 * p   ? InstanceKind::atom_real
                      : roll < 3 * p   ? InstanceKind::zero_mean
                                       : InstanceKind::generic;

  std::normal_distribution<double> gauss;
  auto cgauss = [&] {
    return std::complex<Real>(static_cast<Real>(gauss(rng)), static_cast<Real>(gauss(rng)));
  };
  ComplexVector<Real> u(n);
  switch (kind) {
    case InstanceKind::generic:
      for (Index i = 0; i < n; ++i) u[i] = cgauss();
      break;
    case InstanceKind::atom_constant:
    case InstanceKind::atom_real:
      for (Index a = 0; a < partition.atom_count(); ++a) {
        auto c = cgauss();
        if (kind == InstanceKind::atom_real) c = c.real();
        for (auto i : partition.members(a)) u[i] = c;
      }
      break;
    case InstanceKind::zero_mean:
      for (Index i = 0; i < n; ++i) u[i] = cgauss();
      u -= cond_exp(u, partition, space);
      // cancellation leaves O(eps) residue on singletons; make them exact zeros
      for (Index a = 0; a < partition.atom_count(); ++a)
        if (partition.members(a).size() == 1) u[partition.members(a).front()] = 0;
      break;
  }
  return {WCEOperator<Real>(std::move(space), std::move(partition), std::move(u)), kind};
}

/// Gaussian complex test function on n points.
template <typename Real>
ComplexVector<Real> random_function(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  ComplexVector<Real> f(n);
  for (Index i = 0; i < n; ++i)
    f[i] = std::complex<Real>(static_cast<Real>(gauss(rng)), static_cast<Real>(gauss(rng)));
  return f;
}

}  // namespace wce
