#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "wce/scenarios.hpp"

namespace wce::suite {

enum class Status { pass, fail, discrepancy };

std::string to_string(Status s);

/// One checked claim. `expected` carries the stated value with its
/// provenance: "printed" (the value as stated for the example), "derived"
/// (independently computed closed form or series) or "exact" (holds by
/// construction). A discrepancy means the stated value disagrees with the
/// computation; both are kept in the entry.
struct Entry {
  std::string claim;
  std::string reference;
  nlohmann::json computed;
  nlohmann::json expected;
  std::string provenance;
  Status status = Status::fail;
  double tolerance = 0;
  std::string note;
};

struct Params {
  double tol = 1e-10;         ///< identities and classification
  double oracle_tol = 1e-8;   ///< formula vs dense-matrix comparisons
  double exact_tol = 1e-12;   ///< exact-by-construction checks
  Index interval_nodes = 64;  ///< symmetric interval used with the oracle
  Index identity_nodes = 200; ///< symmetric interval used for the cosh identities
  Index grid = 8;             ///< product grid side
  double theta = 1.0;
  double tail_tol = 1e-12;
};

struct Report {
  Params params;
  std::vector<Entry> entries;

  std::size_t count(Status s) const;
  bool any_fail() const { return count(Status::fail) != 0; }
  nlohmann::json to_json() const;
  std::string to_text() const;
};

enum class Example { full, trivial, partition, product_square, symmetric_interval, poisson_parity };

/// Evaluates every lettered claim of the worked examples (the four cases of
/// sub-algebras, the product square, the symmetric interval and the Poisson
/// parity space) together with the closed-form values they rest on.
Report run(const Params& params = {});

/// The claims of a single worked example.
Report run(Example which, const Params& params = {});

}  // namespace wce::suite
