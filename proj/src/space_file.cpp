#include "wce/space_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace wce {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw SpaceFileError(what); }

double finite_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where + " must be finite");
  return x;
}

void only_keys(const json& obj, std::initializer_list<const char*> allowed,
               const std::string& where) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || item.key() == a;
    if (!ok) fail(where + " has unexpected key '" + item.key() + "'");
  }
}

}  // namespace

scenarios::Scenario parse_space_description(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("top level must be an object");
  only_keys(doc, {"name", "points", "atoms", "u"}, "top level");
  for (auto key : {"points", "atoms", "u"}) {
    if (!doc.contains(key)) fail(std::string("missing key '") + key + "'");
  }

  std::string name = "space-file";
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail("name must be a string");
    name = doc["name"].get<std::string>();
  }

  const auto& points = doc["points"];
  if (!points.is_array() || points.empty()) fail("points must be a non-empty list");
  const auto n = static_cast<Index>(points.size());
  RealVector<double> weights(n);
  std::vector<scenarios::Space::Label> labels;
  std::size_t labelled = 0;
  for (Index i = 0; i < n; ++i) {
    const auto& pt = points[static_cast<std::size_t>(i)];
    const std::string where = "points[" + std::to_string(i) + "]";
    if (!pt.is_object()) fail(where + " must be an object");
    only_keys(pt, {"weight", "label"}, where);
    if (!pt.contains("weight")) fail(where + " has no weight");
    weights[i] = finite_number(pt["weight"], where + ".weight");
    if (!(weights[i] > 0)) fail(where + ".weight must be positive");
    if (pt.contains("label")) {
      if (!pt["label"].is_array()) fail(where + ".label must be a list of numbers");
      scenarios::Space::Label label;
      for (const auto& c : pt["label"]) label.push_back(finite_number(c, where + ".label"));
      labels.push_back(std::move(label));
      ++labelled;
    }
  }
  if (labelled != 0 && labelled != static_cast<std::size_t>(n)) {
    fail("either every point or no point may carry a label");
  }

  const auto& atoms_json = doc["atoms"];
  if (!atoms_json.is_array() || atoms_json.empty()) fail("atoms must be a non-empty list");
  std::vector<std::vector<Index>> atoms;
  for (const auto& atom : atoms_json) {
    if (!atom.is_array()) fail("each atom must be a list of point indices");
    std::vector<Index> members;
    for (const auto& idx : atom) {
      if (!idx.is_number_integer()) fail("atom members must be integers");
      members.push_back(idx.get<Index>());
    }
    atoms.push_back(std::move(members));
  }
  std::optional<Partition> partition;
  try {
    partition = Partition::from_atoms(atoms, n);
  } catch (const ParameterError& e) {
    fail(std::string("atoms: ") + e.what());
  }

  const auto& uj = doc["u"];
  if (!uj.is_object()) fail("u must be an object");
  only_keys(uj, {"values", "builtin"}, "u");
  if (uj.contains("values") == uj.contains("builtin")) {
    fail("u needs exactly one of 'values' or 'builtin'");
  }
  scenarios::Function u(n);
  if (uj.contains("values")) {
    const auto& vals = uj["values"];
    if (!vals.is_array() || static_cast<Index>(vals.size()) != n) {
      fail("u.values must hold one [re, im] pair per point");
    }
    for (Index i = 0; i < n; ++i) {
      const auto& pair = vals[static_cast<std::size_t>(i)];
      const std::string where = "u.values[" + std::to_string(i) + "]";
      if (!pair.is_array() || pair.size() != 2) fail(where + " must be [re, im]");
      u[i] = {finite_number(pair[0], where), finite_number(pair[1], where)};
    }
  } else {
    if (!uj["builtin"].is_string()) fail("u.builtin must be a string");
    const auto builtin = uj["builtin"].get<std::string>();
    const bool needs_label = builtin == "exp_label0" || builtin == "identity_label0";
    if (!needs_label && builtin != "sign_alternating") {
      fail("unknown builtin '" + builtin + "'");
    }
    for (Index i = 0; i < n; ++i) {
      if (needs_label) {
        if (labels.empty() || labels[static_cast<std::size_t>(i)].empty()) {
          fail("builtin '" + builtin + "' needs a label on every point");
        }
        const double x = labels[static_cast<std::size_t>(i)][0];
        u[i] = builtin == "exp_label0" ? std::exp(x) : x;
      } else {
        u[i] = (i % 2 == 0) ? 1.0 : -1.0;
      }
    }
  }

  return scenarios::Scenario{name,
                             {},
                             scenarios::Space(std::move(weights), std::move(labels)),
                             std::move(*partition),
                             std::move(u),
                             std::nullopt};
}

scenarios::Scenario load_space_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_space_description(buf.str());
}

}  // namespace wce
