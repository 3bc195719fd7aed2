#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wce/analysis.hpp"

namespace wce::scenarios {

using Space = FiniteMeasureSpace<double>;
using Function = ComplexVector<double>;
using Operator = WCEOperator<double>;
using Countable = CountableSpaceSpec<double>;

/// A concrete (space, partition, u), optionally backed by a countable space
/// it was truncated from.
struct Scenario {
  std::string name;
  std::map<std::string, double> parameters;
  Space space;
  Partition partition;
  Function u;
  std::optional<Countable> countable;
  double discarded_mass = 0;  ///< tail mass dropped by truncation

  Operator op() const { return Operator(space, partition, u); }
  Operator op(Function weight) const { return Operator(space, partition, std::move(weight)); }
};

/// u_i = i + 1
Function index_weight(Index n);

/// Singleton atoms: E = I and the operator is multiplication by u.
Scenario case_full(Index n, std::optional<Function> u = {},
                   std::optional<RealVector<double>> weights = {});
/// One atom: E is the average over the whole space.
Scenario case_trivial(Index n, std::optional<Function> u = {},
                      std::optional<RealVector<double>> weights = {});
/// m contiguous atoms over n points, sizes as equal as possible.
Scenario case_partition(Index n, Index m, std::optional<Function> u = {},
                        std::optional<RealVector<double>> weights = {});

/// m x m midpoint grid on the unit square, mass 1/m^2 per point, atoms are the
/// columns of constant x. Point (a, b) has index a*m + b and label {x_a, y_b}.
Scenario product_grid(Index m,
                      const std::function<std::complex<double>(double, double)>& u = {});

/// N symmetric midpoint nodes +-(2j+1)/N of [-1, 1] (each exactly the negative
/// of its partner), mass 1/N each, atoms {x, -x}. Default u(x) = exp(x).
Scenario symmetric_interval(Index N, const std::function<std::complex<double>(double)>& u = {});

/// Poisson(theta) masses on {0, 1, 2, ...} with atoms {0}, odds, evens and
/// u(x) = x, carrying factorial tail bounds for both mu and mu |u|^2.
Countable poisson_parity_spec(double theta);
/// The Poisson space truncated where both tails are within tail_tol.
Scenario poisson_parity(double theta, double tail_tol);

/// mu = 2^-i, u = 1 for i = 1, 2, ... (zero-based point k has i = k + 1).
Countable geometric_spec();
/// mu = 2^-i, u = 2^i for i = 1, 2, ...: mu |u|^2 = 2^i diverges. One atom.
Countable geometric_blowup_spec();

/// Builds a named scenario for the command line. Known names: case-full,
/// case-trivial, case-partition, product-grid, symmetric-interval,
/// poisson-parity. Unknown names or parameters throw ParameterError.
Scenario by_name(const std::string& name, const std::map<std::string, double>& params);
std::vector<std::string> names();

}  // namespace wce::scenarios
