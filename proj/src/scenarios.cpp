#include "wce/scenarios.hpp"

#include <cmath>
#include <limits>

namespace wce::scenarios {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

RealVector<double> weights_or_uniform(Index n, const std::optional<RealVector<double>>& w) {
  if (!w) return RealVector<double>::Constant(n, 1.0 / static_cast<double>(n));
  if (w->size() != n) throw ParameterError("weight count does not match point count");
  return *w;
}

Function weight_or_index(Index n, const std::optional<Function>& u) {
  if (!u) return index_weight(n);
  if (u->size() != n) throw ParameterError("u has the wrong number of values");
  return *u;
}

Index as_count(const std::map<std::string, double>& params, const std::string& key,
               Index fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  const double v = it->second;
  if (v != std::floor(v) || v < 1 || v > 1e7) {
    throw ParameterError("parameter " + key + " must be a positive integer");
  }
  return static_cast<Index>(v);
}

double as_real(const std::map<std::string, double>& params, const std::string& key,
               double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void only_keys(const std::map<std::string, double>& params,
               std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : params) {
    bool ok = false;
    for (auto a : allowed) ok = ok || k == a;
    if (!ok) throw ParameterError("unknown parameter '" + k + "'");
  }
}

double poisson_mass(double theta, Index i) {
  return std::exp(-theta + static_cast<double>(i) * std::log(theta) -
                  std::lgamma(static_cast<double>(i) + 1.0));
}

}  // namespace

Function index_weight(Index n) {
  Function u(n);
  for (Index i = 0; i < n; ++i) u[i] = static_cast<double>(i + 1);
  return u;
}

Scenario case_full(Index n, std::optional<Function> u, std::optional<RealVector<double>> weights) {
  if (n < 1) throw ParameterError("case-full needs n >= 1");
  // built before the aggregate so a throw cannot leave members half constructed
  Space space(weights_or_uniform(n, weights));
  Partition partition = Partition::singletons(n);
  Function values = weight_or_index(n, u);
  return Scenario{"case-full", {{"n", static_cast<double>(n)}}, std::move(space), std::move(partition),
                  std::move(values), std::nullopt};
}

Scenario case_trivial(Index n, std::optional<Function> u,
                      std::optional<RealVector<double>> weights) {
  if (n < 1) throw ParameterError("case-trivial needs n >= 1");
  Space space(weights_or_uniform(n, weights));
  Partition partition = Partition::trivial(n);
  Function values = weight_or_index(n, u);
  return Scenario{"case-trivial", {{"n", static_cast<double>(n)}}, std::move(space), std::move(partition),
                  std::move(values), std::nullopt};
}

Scenario case_partition(Index n, Index m, std::optional<Function> u,
                        std::optional<RealVector<double>> weights) {
  if (m < 1 || m > n) throw ParameterError("case-partition needs 1 <= m <= n");
  std::vector<Index> atom_of(static_cast<std::size_t>(n));
  const Index base = n / m;
  const Index extra = n % m;
  Index i = 0;
  for (Index a = 0; a < m; ++a) {
    const Index size = base + (a < extra ? 1 : 0);
    for (Index k = 0; k < size; ++k) atom_of[static_cast<std::size_t>(i++)] = a;
  }
  Space space(weights_or_uniform(n, weights));
  Partition partition = Partition(std::move(atom_of));
  Function values = weight_or_index(n, u);
  return Scenario{"case-partition", 
                  {{"n", static_cast<double>(n)}, {"m", static_cast<double>(m)}},
                  std::move(space), std::move(partition), std::move(values), std::nullopt};
}

Scenario product_grid(Index m, const std::function<std::complex<double>(double, double)>& u) {
  if (m < 2) throw ParameterError("product-grid needs m >= 2");
  const Index n = m * m;
  const double md = static_cast<double>(m);
  std::vector<Space::Label> labels;
  std::vector<Index> atom_of;
  Function values(n);
  for (Index a = 0; a < m; ++a) {
    for (Index b = 0; b < m; ++b) {
      const double x = (static_cast<double>(a) + 0.5) / md;
      const double y = (static_cast<double>(b) + 0.5) / md;
      labels.push_back({x, y});
      atom_of.push_back(a);
      values[a * m + b] = u ? u(x, y) : std::complex<double>(x + y);
    }
  }
  return Scenario{"product-grid",
                  {{"m", md}},
                  Space(RealVector<double>::Constant(n, 1.0 / (md * md)), std::move(labels)),
                  Partition(std::move(atom_of)),
                  std::move(values),
                  std::nullopt};
}

Scenario symmetric_interval(Index N, const std::function<std::complex<double>(double)>& u) {
  if (N < 2 || N % 2 != 0) throw ParameterError("symmetric-interval needs an even N >= 2");
  const Index half = N / 2;
  const double nd = static_cast<double>(N);
  std::vector<Space::Label> labels(static_cast<std::size_t>(N));
  std::vector<Index> atom_of(static_cast<std::size_t>(N));
  Function values(N);
  // ascending order: -p_{half-1}, ..., -p_0, p_0, ..., p_{half-1}
  for (Index j = 0; j < half; ++j) {
    const double p = static_cast<double>(2 * j + 1) / nd;
    const Index neg = half - 1 - j;
    const Index pos = half + j;
    labels[static_cast<std::size_t>(neg)] = {-p};
    labels[static_cast<std::size_t>(pos)] = {p};
    atom_of[static_cast<std::size_t>(neg)] = j;
    atom_of[static_cast<std::size_t>(pos)] = j;
    values[neg] = u ? u(-p) : std::complex<double>(std::exp(-p));
    values[pos] = u ? u(p) : std::complex<double>(std::exp(p));
  }
  return Scenario{"symmetric-interval",
                  {{"N", nd}},
                  Space(RealVector<double>::Constant(N, 1.0 / nd), std::move(labels)),
                  Partition(std::move(atom_of)),
                  std::move(values),
                  std::nullopt};
}

Countable poisson_parity_spec(double theta) {
  if (!(theta > 0)) throw ParameterError("poisson-parity needs theta > 0");
  Countable spec;
  spec.name = "poisson-parity";
  spec.atom_count = 3;
  spec.weight_at = [theta](Index i) { return poisson_mass(theta, i); };
  spec.atom_of = [](Index i) -> Index { return i == 0 ? 0 : (i % 2 == 1 ? 1 : 2); };
  spec.u_at = [](Index i) { return std::complex<double>(static_cast<double>(i)); };
  // p_{i+1} / p_i = theta / (i + 1) is nonincreasing, so the tail past N is
  // dominated by a geometric series once the ratio drops below one.
  spec.tail_bound = [theta](Index n) {
    const double r = theta / (static_cast<double>(n) + 1.0);
    if (r >= 1.0) return 1.0;
    return std::min(1.0, poisson_mass(theta, n) / (1.0 - r));
  };
  // t_i = p_i i^2 has t_{i+1} / t_i = theta (i + 1) / i^2, nonincreasing for i >= 1.
  spec.weighted_tail_bound = [theta](Index n) {
    if (n < 1) return kInf;
    const double nd = static_cast<double>(n);
    const double r = theta * (nd + 1.0) / (nd * nd);
    if (r >= 1.0) return kInf;
    return poisson_mass(theta, n) * nd * nd / (1.0 - r);
  };
  return spec;
}

Scenario poisson_parity(double theta, double tail_tol) {
  auto spec = poisson_parity_spec(theta);
  auto cut = truncate(spec, tail_tol, TruncationRule::mass_and_weighted);
  return Scenario{"poisson-parity",
                  {{"theta", theta}, {"tail_tol", tail_tol}},
                  std::move(cut.space),
                  std::move(cut.partition),
                  std::move(cut.u),
                  std::move(spec),
                  cut.discarded_mass_bound};
}

Countable geometric_spec() {
  Countable spec;
  spec.name = "geometric";
  spec.atom_count = 1;
  spec.weight_at = [](Index k) { return std::ldexp(1.0, -static_cast<int>(k + 1)); };
  spec.tail_bound = [](Index n) { return std::ldexp(1.0, -static_cast<int>(n)); };
  spec.atom_of = [](Index) -> Index { return 0; };
  spec.u_at = [](Index) { return std::complex<double>(1.0); };
  spec.weighted_tail_bound = spec.tail_bound;
  return spec;
}

Countable geometric_blowup_spec() {
  Countable spec;
  spec.name = "geometric-blowup";
  spec.atom_count = 1;
  spec.weight_at = [](Index k) { return std::ldexp(1.0, -static_cast<int>(k + 1)); };
  spec.tail_bound = [](Index n) { return std::ldexp(1.0, -static_cast<int>(n)); };
  spec.atom_of = [](Index) -> Index { return 0; };
  spec.u_at = [](Index k) { return std::complex<double>(std::ldexp(1.0, static_cast<int>(k + 1))); };
  // partial sums over the first K points are 2^{K+1} - 2
  spec.divergence_witness = [](Index, double level) -> std::optional<Index> {
    Index k = 0;
    double partial = 0;
    while (partial <= level) {
      if (k > 1000) return std::nullopt;
      partial += std::ldexp(1.0, static_cast<int>(k + 1));
      ++k;
    }
    return k;
  };
  return spec;
}

std::vector<std::string> names() {
  return {"case-full",          "case-trivial",   "case-partition", "product-grid",
          "symmetric-interval", "poisson-parity"};
}

Scenario by_name(const std::string& name, const std::map<std::string, double>& params) {
  if (name == "case-full") {
    only_keys(params, {"n"});
    return case_full(as_count(params, "n", 4));
  }
  if (name == "case-trivial") {
    only_keys(params, {"n"});
    return case_trivial(as_count(params, "n", 4));
  }
  if (name == "case-partition") {
    only_keys(params, {"n", "m"});
    return case_partition(as_count(params, "n", 6), as_count(params, "m", 3));
  }
  if (name == "product-grid") {
    only_keys(params, {"m"});
    return product_grid(as_count(params, "m", 8));
  }
  if (name == "symmetric-interval") {
    only_keys(params, {"N"});
    return symmetric_interval(as_count(params, "N", 64));
  }
  if (name == "poisson-parity") {
    only_keys(params, {"theta", "tail_tol"});
    return poisson_parity(as_real(params, "theta", 1.0), as_real(params, "tail_tol", 1e-12));
  }
  throw ParameterError("unknown scenario '" + name + "'");
}

}  // namespace wce::scenarios
