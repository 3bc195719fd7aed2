#pragma once

#include <complex>
#include <initializer_list>
#include <random>

#include "wce/wce.hpp"

namespace test {

using C = std::complex<double>;
using Vec = wce::ComplexVector<double>;
using RVec = wce::RealVector<double>;
using Space = wce::FiniteMeasureSpace<double>;
using Op = wce::WCEOperator<double>;
using Mat = wce::DenseMatrix<double>;

inline Vec vec(std::initializer_list<C> xs) {
  Vec v(static_cast<wce::Index>(xs.size()));
  wce::Index i = 0;
  for (auto x : xs) v[i++] = x;
  return v;
}

inline RVec rvec(std::initializer_list<double> xs) {
  RVec v(static_cast<wce::Index>(xs.size()));
  wce::Index i = 0;
  for (auto x : xs) v[i++] = x;
  return v;
}

// Plain loop implementation of atom-wise averaging, used to check cond_exp.
inline Vec average_by_loops(const Vec& f, const wce::Partition& p, const Space& sp) {
  Vec out(f.size());
  for (wce::Index i = 0; i < f.size(); ++i) {
    C num{0, 0};
    double den = 0;
    for (wce::Index j = 0; j < f.size(); ++j) {
      if (p.atom_of(j) == p.atom_of(i)) {
        num += sp.weight(j) * f[j];
        den += sp.weight(j);
      }
    }
    out[i] = num / den;
  }
  return out;
}

inline double max_abs(const Vec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace test
