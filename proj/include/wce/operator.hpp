#pragma once

#include "wce/conditional_expectation.hpp"

namespace wce {

/// The weighted conditional expectation operator f -> E(u f) on L^2 of a
/// finite measure space. Immutable; E(u) and E(|u|^2) are cached.
template <typename Real>
class WCEOperator {
 public:
  WCEOperator(FiniteMeasureSpace<Real> space, Partition partition, ComplexVector<Real> u)
      : space_(std::move(space)), partition_(std::move(partition)), u_(std::move(u)) {
    require_aligned(partition_, space_);
    require_aligned(u_, space_, "weight u");
    for (Index i = 0; i < u_.size(); ++i) {
      if (!std::isfinite(u_[i].real()) || !std::isfinite(u_[i].imag())) {
        throw ParameterError("weight u is not finite at point " + std::to_string(i));
      }
    }
    eu_ = cond_exp(u_, partition_, space_);
    eu2_ = cond_exp(RealVector<Real>(u_.cwiseAbs2()), partition_, space_);
  }

  const FiniteMeasureSpace<Real>& space() const { return space_; }
  const Partition& partition() const { return partition_; }
  const ComplexVector<Real>& u() const { return u_; }
  /// E(u)
  const ComplexVector<Real>& cond_u() const { return eu_; }
  /// E(|u|^2)
  const RealVector<Real>& cond_u_abs2() const { return eu2_; }

  Index size() const { return space_.size(); }

  /// Same space and partition, weight replaced.
  WCEOperator with_weight(ComplexVector<Real> u) const {
    return WCEOperator(space_, partition_, std::move(u));
  }

 private:
  FiniteMeasureSpace<Real> space_;
  Partition partition_;
  ComplexVector<Real> u_;
  ComplexVector<Real> eu_;
  RealVector<Real> eu2_;
};

/// T f = E(u f)
template <typename Real>
ComplexVector<Real> apply(const WCEOperator<Real>& T, const ComplexVector<Real>& f) {
  require_aligned(f, T.space());
  return cond_exp(ComplexVector<Real>(T.u().cwiseProduct(f)), T.partition(), T.space());
}

/// T* f = conj(u) E(f)
template <typename Real>
ComplexVector<Real> apply_adjoint(const WCEOperator<Real>& T, const ComplexVector<Real>& f) {
  require_aligned(f, T.space());
  return T.u().conjugate().cwiseProduct(cond_exp(f, T.partition(), T.space()));
}

}  // namespace wce
