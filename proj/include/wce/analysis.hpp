#pragma once

// Closed-form statements about T = E M_u: classification, polar
// decomposition, spectrum, dense domain and domain invariance.

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "wce/countable.hpp"
#include "wce/oracle.hpp"

namespace wce {

// ---------------------------------------------------------------------------
// Classification

struct ClassificationReport {
  bool self_adjoint = false;
  bool normal = false;
  bool quasinormal = false;

  double measurability_deviation = 0;  ///< worst per-atom std deviation of u
  double max_imaginary = 0;            ///< max |Im u|
  /// max over the common support of |conj(u) E(u) - E(|u|^2)|; NaN when the
  /// supports of E(u) and E(|u|^2) differ and the oracle decided instead.
  double quasinormal_pointwise = std::numeric_limits<double>::quiet_NaN();
  /// ||M|M|^2 - |M|^2 M||_F / ||M||_F^3; NaN when the pointwise test decided.
  double quasinormal_oracle = std::numeric_limits<double>::quiet_NaN();
  bool quasinormal_from_oracle = false;

  Index normal_witness_atom = -1;          ///< atom on which u is not constant
  Index self_adjoint_witness_point = -1;   ///< point with the largest |Im u|
  Index quasinormal_witness_point = -1;    ///< point with the largest pointwise residual
};

/// Normal iff u is constant on atoms; self-adjoint iff additionally real.
/// Quasinormality is tested pointwise (conj(u) E(u) = E(|u|^2)) when
/// S(E(u)) = S(E(|u|^2)) at tolerance tol, and otherwise through the dense
/// identity T|T|^2 = |T|^2 T.
template <typename Real>
ClassificationReport classify(const WCEOperator<Real>& T, Real tol) {
  if (!(tol > Real(0))) throw ParameterError("classification tolerance must be positive");
  ClassificationReport r;

  const auto m = is_measurable(T.u(), T.partition(), T.space(), tol);
  r.measurability_deviation = m.max_deviation;
  r.normal = m.measurable;
  if (!r.normal) r.normal_witness_atom = m.worst_atom;

  for (Index i = 0; i < T.size(); ++i) {
    const double im = static_cast<double>(std::abs(T.u()[i].imag()));
    if (im > r.max_imaginary) {
      r.max_imaginary = im;
      r.self_adjoint_witness_point = i;
    }
  }
  r.self_adjoint = r.normal && r.max_imaginary <= static_cast<double>(tol);
  if (r.self_adjoint) r.self_adjoint_witness_point = -1;

  const ComplexVector<Real> eu2 = T.cond_u_abs2().template cast<std::complex<Real>>();
  const auto s_eu = support(T.cond_u(), tol);
  const auto s_eu2 = support(eu2, tol);
  if (s_eu == s_eu2) {
    Real worst{0};
    for (auto i : s_eu) {
      const Real d = std::abs(std::conj(T.u()[i]) * T.cond_u()[i] - T.cond_u_abs2()[i]);
      if (d > worst) {
        worst = d;
        r.quasinormal_witness_point = i;
      }
    }
    r.quasinormal_pointwise = static_cast<double>(worst);
    const Real scale = std::max(Real(1), T.cond_u_abs2().maxCoeff());
    r.quasinormal = worst <= tol * scale;
  } else {
    r.quasinormal_from_oracle = true;
    const auto res = residuals(T);
    r.quasinormal_oracle = res.quasinormal_relative;
    r.quasinormal = res.is_quasinormal(static_cast<double>(tol));
  }
  if (r.quasinormal) r.quasinormal_witness_point = -1;

  if ((r.self_adjoint && !r.normal) || (r.normal && !r.quasinormal)) {
    throw InternalError("classification verdicts violate self-adjoint => normal => quasinormal");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Polar decomposition

template <typename Real>
struct PolarParts {
  ComplexVector<Real> u_prime;   ///< chi_S conj(u) / sqrt(E(|u|^2))
  ComplexVector<Real> u_tilde;   ///< chi_S u / sqrt(E(|u|^2))
  std::vector<Index> support;    ///< S = support of E(|u|^2)
};

/// |T| = M_{u'} E M_u and U = E M_{u~}, both vanishing off S.
template <typename Real>
PolarParts<Real> polar(const WCEOperator<Real>& T, Real tol) {
  if (!(tol > Real(0))) throw ParameterError("polar tolerance must be positive");
  PolarParts<Real> parts;
  const Index n = T.size();
  parts.u_prime = ComplexVector<Real>::Zero(n);
  parts.u_tilde = ComplexVector<Real>::Zero(n);
  for (Index i = 0; i < n; ++i) {
    const Real w = T.cond_u_abs2()[i];
    if (w > tol) {
      parts.support.push_back(i);
      const Real inv_root = Real(1) / std::sqrt(w);
      parts.u_prime[i] = std::conj(T.u()[i]) * inv_root;
      parts.u_tilde[i] = T.u()[i] * inv_root;
    }
  }
  return parts;
}

/// |T| f = u' E(u f)
template <typename Real>
ComplexVector<Real> apply_modulus(const WCEOperator<Real>& T, const PolarParts<Real>& parts,
                                  const ComplexVector<Real>& f) {
  return parts.u_prime.cwiseProduct(apply(T, f));
}

/// U f = E(u~ f)
template <typename Real>
ComplexVector<Real> apply_isometry(const WCEOperator<Real>& T, const PolarParts<Real>& parts,
                                   const ComplexVector<Real>& f) {
  require_aligned(f, T.space());
  return cond_exp(ComplexVector<Real>(parts.u_tilde.cwiseProduct(f)), T.partition(),
                  T.space());
}

template <typename Real>
DenseMatrix<Real> modulus_matrix(const WCEOperator<Real>& T, const PolarParts<Real>& parts) {
  return matrix_of_map(T.space(),
                       [&](const ComplexVector<Real>& f) { return apply_modulus(T, parts, f); });
}

template <typename Real>
DenseMatrix<Real> isometry_matrix(const WCEOperator<Real>& T, const PolarParts<Real>& parts) {
  return matrix_of_map(T.space(),
                       [&](const ComplexVector<Real>& f) { return apply_isometry(T, parts, f); });
}

// ---------------------------------------------------------------------------
// Spectrum

template <typename Real>
struct SpectrumReport {
  std::vector<std::complex<Real>> values;  ///< sorted by (real, imag)
  bool includes_zero = false;
  bool discrete = false;  ///< every atom a singleton: T is the multiplication operator M_u
  std::string source = "formula";
};

/// ess range(u) when every atom is a singleton, otherwise ess range(E(u))
/// together with 0.
template <typename Real>
SpectrumReport<Real> spectrum_formula(const WCEOperator<Real>& T, Real tol) {
  if (!(tol > Real(0))) throw ParameterError("spectrum tolerance must be positive");
  SpectrumReport<Real> report;
  report.discrete = T.partition().is_discrete();
  if (report.discrete) {
    report.values = ess_range(T.u(), T.space(), tol);
    for (const auto& v : report.values)
      if (std::abs(v) <= tol) report.includes_zero = true;
    return report;
  }
  report.values = ess_range(T.cond_u(), T.space(), tol);
  bool has_zero = false;
  for (const auto& v : report.values)
    if (std::abs(v) <= tol) has_zero = true;
  if (!has_zero) {
    report.values.push_back({0, 0});
    std::sort(report.values.begin(), report.values.end(), lex_less<Real>);
  }
  report.includes_zero = true;
  return report;
}

// ---------------------------------------------------------------------------
// Domain invariance

/// Smallest c with |E(u)|^4 <= c (1 + |E(u)|^2) at every point.
template <typename Real>
Real domain_invariance_constant(const WCEOperator<Real>& T) {
  Real c{0};
  for (Index i = 0; i < T.size(); ++i) {
    const Real a2 = std::norm(T.cond_u()[i]);
    c = std::max(c, a2 * a2 / (Real(1) + a2));
  }
  return c;
}

/// Smallest c with |u|^4 <= c (1 + |u|^2): the multiplication-operator case.
template <typename Real>
Real multiplication_invariance_constant(const ComplexVector<Real>& u) {
  Real c{0};
  for (Index i = 0; i < u.size(); ++i) {
    const Real a2 = std::norm(u[i]);
    c = std::max(c, a2 * a2 / (Real(1) + a2));
  }
  return c;
}

// ---------------------------------------------------------------------------
// Dense domain

struct AtomDomainVerdict {
  Index atom = 0;
  bool converges = false;
  double cond_value = std::numeric_limits<double>::quiet_NaN();  ///< E(|u|^2) estimate on the atom
  double cond_upper = std::numeric_limits<double>::quiet_NaN();  ///< rigorous upper bound
  double partial_weighted_sum = 0;  ///< sum of mu_i |u_i|^2 over the scanned points of the atom
  double partial_mass = 0;
  double tail_bound = std::numeric_limits<double>::quiet_NaN();
  Index scanned_points = 0;
  /// Divergence certificate: partial sums checked to exceed each level at the index.
  std::vector<std::pair<double, Index>> divergence_levels;
};

struct DomainReport {
  bool densely_defined = false;           ///< E(|u|^2) finite on every atom
  bool sigma_finite_restriction = false;  ///< mu_{E(|u|^2)} restricted to the atoms is sigma-finite
  std::vector<AtomDomainVerdict> atoms;
  /// nu(X_k) for the exhaustion X_k = A_0 u ... u A_k, nu = |u|^2 dmu; +inf when divergent.
  std::vector<double> exhaustion_masses;
};

/// Finite spaces: both verdicts reduce to finiteness of atom sums.
template <typename Real>
DomainReport densely_defined(const WCEOperator<Real>& T) {
  DomainReport report;
  const auto& p = T.partition();
  bool all_finite = true;
  for (Index a = 0; a < p.atom_count(); ++a) {
    AtomDomainVerdict v;
    v.atom = a;
    const Index i0 = p.members(a).front();
    v.cond_value = v.cond_upper = static_cast<double>(T.cond_u_abs2()[i0]);
    v.converges = std::isfinite(v.cond_value);
    v.tail_bound = 0;
    v.scanned_points = static_cast<Index>(p.members(a).size());
    for (auto i : p.members(a)) {
      v.partial_weighted_sum += static_cast<double>(T.space().weight(i) * std::norm(T.u()[i]));
      v.partial_mass += static_cast<double>(T.space().weight(i));
    }
    all_finite = all_finite && v.converges;
    report.atoms.push_back(v);
  }
  report.densely_defined = all_finite;

  // nu(X_k) summed point by point over the growing union of atoms
  double running = 0;
  for (Index a = 0; a < p.atom_count(); ++a) {
    for (auto i : p.members(a)) {
      running += static_cast<double>(T.space().weight(i) * std::norm(T.u()[i]));
    }
    report.exhaustion_masses.push_back(running);
  }
  report.sigma_finite_restriction =
      std::all_of(report.exhaustion_masses.begin(), report.exhaustion_masses.end(),
                  [](double x) { return std::isfinite(x); });
  return report;
}

namespace detail {

inline const std::vector<double>& divergence_levels() {
  static const std::vector<double> levels{1e1, 1e2, 1e4, 1e8, 1e16};
  return levels;
}

}  // namespace detail

/// Countable spaces: decides, atom by atom, whether sum mu_i |u_i|^2 is
/// finite. Convergence needs the spec's weighted tail bound to fall to
/// tail_tol; divergence needs a witness whose partial sums are re-checked
/// against a ladder of levels. Anything else is reported as undecidable.
template <typename Real>
DomainReport densely_defined(const CountableSpaceSpec<Real>& spec, Real tail_tol,
                             Index cap = kTruncationCap) {
  if (!(tail_tol > Real(0))) throw ParameterError("tail tolerance must be positive");
  const Index m = spec.atom_count;
  if (m < 1) throw ParameterError("spec '" + spec.name + "' has no atoms");
  auto term = [&](Index i) { return spec.weight_at(i) * std::norm(spec.u_at(i)); };

  // Convergence certificate: a prefix length whose weighted tail is small.
  std::optional<Index> prefix;
  if (spec.weighted_tail_bound) {
    for (Index n = 1; n <= cap; ++n) {
      if (spec.weighted_tail_bound(n) <= tail_tol) {
        prefix = n;
        break;
      }
    }
  }

  DomainReport report;
  report.atoms.resize(static_cast<std::size_t>(m));
  for (Index a = 0; a < m; ++a) report.atoms[static_cast<std::size_t>(a)].atom = a;

  Index scanned = 0;
  if (prefix) {
    // Scan far enough that every atom holds at least one point.
    scanned = *prefix;
    std::vector<double> sums(static_cast<std::size_t>(m), 0.0);
    std::vector<double> masses(static_cast<std::size_t>(m), 0.0);
    std::vector<Index> counts(static_cast<std::size_t>(m), 0);
    Index i = 0;
    auto visit = [&](Index k) {
      const auto a = static_cast<std::size_t>(spec.atom_of(k));
      sums[a] += static_cast<double>(term(k));
      masses[a] += static_cast<double>(spec.weight_at(k));
      ++counts[a];
    };
    for (; i < scanned; ++i) visit(i);
    while (std::find(counts.begin(), counts.end(), 0) != counts.end()) {
      if (i >= cap) {
        throw UndecidableError("spec '" + spec.name + "' leaves an atom empty within the cap");
      }
      visit(i++);
    }
    scanned = i;
    const double wtail = static_cast<double>(spec.weighted_tail_bound(scanned));
    for (Index a = 0; a < m; ++a) {
      auto& v = report.atoms[static_cast<std::size_t>(a)];
      const auto k = static_cast<std::size_t>(a);
      v.converges = true;
      v.partial_weighted_sum = sums[k];
      v.partial_mass = masses[k];
      v.tail_bound = wtail;
      v.scanned_points = counts[k];
      v.cond_value = sums[k] / masses[k];
      v.cond_upper = (sums[k] + wtail) / masses[k];
    }
  } else {
    if (!spec.divergence_witness) {
      throw UndecidableError("spec '" + spec.name +
                             "' offers neither a convergent weighted tail bound nor a "
                             "divergence witness");
    }
    for (Index a = 0; a < m; ++a) {
      auto& v = report.atoms[static_cast<std::size_t>(a)];
      for (double level : detail::divergence_levels()) {
        const auto k = spec.divergence_witness(a, static_cast<Real>(level));
        if (!k || *k > cap) {
          throw UndecidableError("spec '" + spec.name + "' has no divergence witness for atom " +
                                 std::to_string(a) + " at level " + std::to_string(level));
        }
        double partial = 0;
        for (Index i = 0; i < *k; ++i)
          if (spec.atom_of(i) == a) partial += static_cast<double>(term(i));
        if (!(partial > level)) {
          throw UndecidableError("divergence witness for atom " + std::to_string(a) +
                                 " does not exceed level " + std::to_string(level));
        }
        v.divergence_levels.emplace_back(level, *k);
        v.partial_weighted_sum = partial;
        v.scanned_points = *k;
      }
      v.converges = false;
      v.cond_value = v.cond_upper = std::numeric_limits<double>::infinity();
    }
  }
  report.densely_defined = std::all_of(report.atoms.begin(), report.atoms.end(),
                                       [](const AtomDomainVerdict& v) { return v.converges; });

  // Exhaustion by unions of atoms, measured pointwise on the union.
  const double inf = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < m; ++k) {
    double nu = 0;
    if (prefix) {
      for (Index i = 0; i < scanned; ++i)
        if (spec.atom_of(i) <= k) nu += static_cast<double>(term(i));
      nu += static_cast<double>(spec.weighted_tail_bound(scanned));
    } else {
      // any divergent atom inside the union makes nu(X_k) infinite once the
      // union's own partial sums are seen to pass the witnessed levels
      const auto& cert = report.atoms[static_cast<std::size_t>(k)].divergence_levels;
      bool unbounded = !cert.empty();
      for (const auto& [level, idx] : cert) {
        double partial = 0;
        for (Index i = 0; i < idx; ++i)
          if (spec.atom_of(i) <= k) partial += static_cast<double>(term(i));
        unbounded = unbounded && partial > level;
      }
      nu = unbounded ? inf : std::numeric_limits<double>::quiet_NaN();
    }
    report.exhaustion_masses.push_back(nu);
  }
  report.sigma_finite_restriction =
      std::all_of(report.exhaustion_masses.begin(), report.exhaustion_masses.end(),
                  [](double x) { return std::isfinite(x); });
  return report;
}

}  // namespace wce
