#pragma once

#include <string>
#include <vector>

#include "wce/measure.hpp"

namespace wce {

/// A finite partition of the point set. The sub-sigma-algebra it generates is
/// the collection of unions of atoms; on a finite atomic space every
/// sub-sigma-algebra arises this way.
class Partition {
 public:
  /// atom_of[i] is the atom containing point i; ids must cover 0..m-1.
  explicit Partition(std::vector<Index> atom_of) : atom_of_(std::move(atom_of)) {
    if (atom_of_.empty()) throw ParameterError("partition of an empty point set");
    Index m = 0;
    for (auto a : atom_of_) {
      if (a < 0) throw ParameterError("negative atom id");
      m = std::max(m, a + 1);
    }
    members_.assign(static_cast<std::size_t>(m), {});
    for (std::size_t i = 0; i < atom_of_.size(); ++i) {
      members_[static_cast<std::size_t>(atom_of_[i])].push_back(static_cast<Index>(i));
    }
    for (std::size_t a = 0; a < members_.size(); ++a) {
      if (members_[a].empty()) {
        throw ParameterError("atom " + std::to_string(a) + " is empty");
      }
    }
  }

  /// Builds a partition from explicit atom lists; rejects overlapping or
  /// incomplete coverage of 0..n-1.
  static Partition from_atoms(const std::vector<std::vector<Index>>& atoms, Index n) {
    if (n < 1) throw ParameterError("partition of an empty point set");
    std::vector<Index> atom_of(static_cast<std::size_t>(n), -1);
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      if (atoms[a].empty()) throw ParameterError("atom " + std::to_string(a) + " is empty");
      for (auto i : atoms[a]) {
        if (i < 0 || i >= n) {
          throw ParameterError("atom " + std::to_string(a) + " lists out-of-range point " +
                               std::to_string(i));
        }
        auto& slot = atom_of[static_cast<std::size_t>(i)];
        if (slot != -1) {
          throw ParameterError("point " + std::to_string(i) + " belongs to more than one atom");
        }
        slot = static_cast<Index>(a);
      }
    }
    for (std::size_t i = 0; i < atom_of.size(); ++i) {
      if (atom_of[i] == -1) {
        throw ParameterError("point " + std::to_string(i) + " is not covered by any atom");
      }
    }
    return Partition(std::move(atom_of));
  }

  /// Every point its own atom: the full sigma-algebra.
  static Partition singletons(Index n) {
    std::vector<Index> ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), Index{0});
    return Partition(std::move(ids));
  }

  /// One atom: the trivial sigma-algebra {X, empty}.
  static Partition trivial(Index n) {
    return Partition(std::vector<Index>(static_cast<std::size_t>(n), 0));
  }

  Index size() const { return static_cast<Index>(atom_of_.size()); }
  Index atom_count() const { return static_cast<Index>(members_.size()); }
  Index atom_of(Index i) const { return atom_of_[static_cast<std::size_t>(i)]; }
  const std::vector<Index>& atom_ids() const { return atom_of_; }
  const std::vector<Index>& members(Index atom) const {
    return members_[static_cast<std::size_t>(atom)];
  }

  bool is_discrete() const { return atom_count() == size(); }

  template <typename Real>
  Real atom_mass(Index atom, const FiniteMeasureSpace<Real>& sp) const {
    Real m{0};
    for (auto i : members(atom)) m += sp.weight(i);
    return m;
  }

 private:
  std::vector<Index> atom_of_;
  std::vector<std::vector<Index>> members_;
};

template <typename Real>
void require_aligned(const Partition& p, const FiniteMeasureSpace<Real>& sp) {
  if (p.size() != sp.size()) {
    throw DimensionError("partition covers " + std::to_string(p.size()) +
                         " points but the space has " + std::to_string(sp.size()));
  }
}

}  // namespace wce
