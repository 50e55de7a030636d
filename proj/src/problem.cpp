#include "ybp/problem.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <utility>

#include "ybp/errors.hpp"
#include "ybp/expr.hpp"

namespace ybp {

using json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

void require_keys(const json& o, const char* where, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional) {
  for (const char* k : required)
    if (!o.contains(k))
      throw InputError(errcode::schema, std::string(where) + ": missing key '" + k + "'");
  for (const auto& [key, _] : o.items()) {
    bool known = std::find_if(required.begin(), required.end(),
                              [&](const char* k) { return key == k; }) != required.end() ||
                 std::find_if(optional.begin(), optional.end(),
                              [&](const char* k) { return key == k; }) != optional.end();
    if (!known)
      throw InputError(errcode::schema, std::string(where) + ": unknown key '" + key + "'");
  }
}

std::string get_string(const json& v, const char* where) {
  if (!v.is_string()) throw InputError(errcode::schema, std::string(where) + " must be a string");
  return v.get<std::string>();
}

std::vector<std::string> get_string_array(const json& v, const char* where) {
  if (!v.is_array()) throw InputError(errcode::schema, std::string(where) + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(get_string(e, where));
  return out;
}

int name_index(const std::vector<std::string>& names, const std::string& n, const char* where) {
  auto it = std::find(names.begin(), names.end(), n);
  if (it == names.end())
    throw InputError(errcode::unknown_identifier,
                     std::string(where) + ": unknown name '" + n + "'");
  return static_cast<int>(it - names.begin());
}

void check_unique(const std::vector<std::string>& names, const char* code, const char* what) {
  std::set<std::string> seen(names.begin(), names.end());
  if (seen.size() != names.size())
    throw InputError(code, std::string(what) + " must be pairwise distinct");
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "jacobi",     "yb",       "image",    "cocycle",       "structure", "unimodular",
      "morphism",   "poisson",  "schouten", "torsion",       "flatness",  "freeness",
      "parallel",   "metacurvature",        "killing",       "metric",    "hawkins"};
  return names;
}

bool is_verdict_name(const std::string& s) {
  return s == "pass" || s == "fail" || s == "skipped" || s == "refused";
}

ProblemSpec parse_problem(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InputError(errcode::schema, std::string("invalid json: ") + e.what());
  }
  if (!root.is_object()) throw InputError(errcode::schema, "top level must be an object");
  require_keys(root, "problem", {"schema_version", "name", "lie_algebra", "r"},
               {"action", "cometric", "volume", "probes", "parallel_candidates",
                "expect_parallel", "expect"});
  if (!root["schema_version"].is_number_integer() ||
      root["schema_version"].get<int>() != kSchemaVersion)
    throw InputError(errcode::schema, "schema_version must be the integer 1");

  ProblemSpec p;
  p.name = get_string(root["name"], "name");

  const json& la = root["lie_algebra"];
  if (!la.is_object()) throw InputError(errcode::schema, "lie_algebra must be an object");
  require_keys(la, "lie_algebra", {"basis", "brackets"}, {});
  p.basis = get_string_array(la["basis"], "basis");
  if (p.basis.empty()) throw InputError(errcode::schema, "basis must be nonempty");
  check_unique(p.basis, errcode::schema, "basis names");
  const int n = static_cast<int>(p.basis.size());

  if (!la["brackets"].is_array())
    throw InputError(errcode::schema, "brackets must be an array");
  for (const auto& b : la["brackets"]) {
    require_keys(b, "bracket", {"pair", "value"}, {});
    auto pair = get_string_array(b["pair"], "bracket pair");
    if (pair.size() != 2) throw InputError(errcode::schema, "bracket pair must have two names");
    int i = name_index(p.basis, pair[0], "bracket pair");
    int j = name_index(p.basis, pair[1], "bracket pair");
    if (i == j) throw InputError(errcode::schema, "bracket pair must be two distinct names");
    Rat sign(1);
    if (i > j) {
      std::swap(i, j);
      sign = Rat(-1);
    }
    if (p.brackets.count({i, j}))
      throw InputError(errcode::schema, "duplicate bracket pair");
    if (!b["value"].is_object())
      throw InputError(errcode::schema, "bracket value must be an object");
    RatVec value(n, Rat(0));
    for (const auto& [key, coeff] : b["value"].items()) {
      int k = name_index(p.basis, key, "bracket value");
      value[k] = Rat::parse(get_string(coeff, "bracket coefficient")) * sign;
    }
    p.brackets[{i, j}] = std::move(value);
  }

  if (!root["r"].is_array()) throw InputError(errcode::schema, "r must be an array");
  p.r = mat_zero(n, n);
  for (const auto& e : root["r"]) {
    require_keys(e, "r entry", {"pair", "coeff"}, {});
    auto pair = get_string_array(e["pair"], "r pair");
    if (pair.size() != 2) throw InputError(errcode::schema, "r pair must have two names");
    int i = name_index(p.basis, pair[0], "r pair");
    int j = name_index(p.basis, pair[1], "r pair");
    if (i == j)
      throw InputError(errcode::r_not_antisymmetric, "r pair repeats a basis name");
    Rat c = Rat::parse(get_string(e["coeff"], "r coefficient"));
    if (i > j) {
      std::swap(i, j);
      c = -c;
    }
    if (!p.r[i][j].is_zero())
      throw InputError(errcode::r_not_antisymmetric, "duplicate r pair");
    p.r[i][j] = c;
    p.r[j][i] = -c;
  }

  if (root.contains("action")) {
    const json& ac = root["action"];
    if (!ac.is_object()) throw InputError(errcode::schema, "action must be an object");
    require_keys(ac, "action", {"coords", "fields"}, {});
    auto coords = get_string_array(ac["coords"], "coords");
    if (coords.empty()) throw InputError(errcode::vars, "coords must be nonempty");
    check_unique(coords, errcode::vars, "coordinates");
    p.coords = coords;
    if (!ac["fields"].is_object())
      throw InputError(errcode::schema, "fields must be an object");
    auto vars = std::make_shared<const std::vector<std::string>>(coords);
    for (const auto& [key, comps] : ac["fields"].items()) {
      name_index(p.basis, key, "fields");
      auto exprs = get_string_array(comps, "field components");
      if (exprs.size() != coords.size())
        throw InputError(errcode::shape, "field needs one component per coordinate");
      for (const auto& ex : exprs) parse_poly(ex, vars);  // validate early
      p.field_exprs[key] = exprs;
    }
    for (const auto& b : p.basis)
      if (!p.field_exprs.count(b))
        throw InputError(errcode::schema, "fields must cover every basis element");
  }

  auto needs_action = [&](const char* what) {
    if (!p.coords)
      throw InputError(errcode::schema, std::string(what) + " requires an action");
  };
  auto coords_vars = [&]() {
    return std::make_shared<const std::vector<std::string>>(*p.coords);
  };

  if (root.contains("cometric")) {
    needs_action("cometric");
    const json& cm = root["cometric"];
    if (!cm.is_array()) throw InputError(errcode::schema, "cometric must be a matrix");
    auto vars = coords_vars();
    const int m = static_cast<int>(p.coords->size());
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : cm) {
      auto exprs = get_string_array(row, "cometric row");
      if (static_cast<int>(exprs.size()) != m)
        throw InputError(errcode::shape, "cometric must be square of coords size");
      for (const auto& ex : exprs) parse_poly(ex, vars);
      rows.push_back(exprs);
    }
    if (static_cast<int>(rows.size()) != m)
      throw InputError(errcode::shape, "cometric must be square of coords size");
    p.cometric_exprs = rows;
  }

  if (root.contains("volume")) {
    needs_action("volume");
    p.volume_expr = get_string(root["volume"], "volume");
    parse_poly(*p.volume_expr, coords_vars());
  }

  if (root.contains("probes")) {
    needs_action("probes");
    if (!root["probes"].is_array()) throw InputError(errcode::schema, "probes must be an array");
    for (const auto& pr : root["probes"]) {
      if (!pr.is_object()) throw InputError(errcode::schema, "probe must be an object");
      std::map<std::string, std::string> pt;
      for (const auto& [key, val] : pr.items()) {
        name_index(*p.coords, key, "probe");
        std::string s = get_string(val, "probe value");
        Rat::parse(s);
        pt[key] = s;
      }
      for (const auto& c : *p.coords)
        if (!pt.count(c))
          throw InputError(errcode::schema, "probe must assign every coordinate");
      p.probes.push_back(std::move(pt));
    }
  }

  if (root.contains("parallel_candidates")) {
    needs_action("parallel_candidates");
    if (!root["parallel_candidates"].is_array())
      throw InputError(errcode::schema, "parallel_candidates must be an array");
    auto vars = coords_vars();
    for (const auto& cand : root["parallel_candidates"]) {
      auto exprs = get_string_array(cand, "candidate components");
      if (exprs.size() != p.coords->size())
        throw InputError(errcode::shape, "candidate needs one component per coordinate");
      for (const auto& ex : exprs) parse_poly(ex, vars);
      p.parallel_candidate_exprs.push_back(exprs);
    }
  }

  if (root.contains("expect_parallel")) {
    if (!root["expect_parallel"].is_array())
      throw InputError(errcode::schema, "expect_parallel must be an array of indices");
    for (const auto& e : root["expect_parallel"]) {
      if (!e.is_number_integer())
        throw InputError(errcode::schema, "expect_parallel entries must be integers");
      int idx = e.get<int>();
      if (idx < 0 || idx >= static_cast<int>(p.parallel_candidate_exprs.size()))
        throw InputError(errcode::schema, "expect_parallel index out of range");
      p.expect_parallel.push_back(idx);
    }
    std::sort(p.expect_parallel.begin(), p.expect_parallel.end());
    p.expect_parallel.erase(std::unique(p.expect_parallel.begin(), p.expect_parallel.end()),
                            p.expect_parallel.end());
  }

  if (root.contains("expect")) {
    if (!root["expect"].is_object())
      throw InputError(errcode::schema, "expect must be an object");
    for (const auto& [key, val] : root["expect"].items()) {
      const auto& names = check_names();
      if (std::find(names.begin(), names.end(), key) == names.end())
        throw InputError(errcode::schema, "expect: unknown check '" + key + "'");
      std::string v = get_string(val, "expect verdict");
      if (!is_verdict_name(v))
        throw InputError(errcode::schema, "expect: unknown verdict '" + v + "'");
      p.expect[key] = v;
    }
  }
  return p;
}

std::string emit_problem(const ProblemSpec& p) {
  json root;
  root["schema_version"] = kSchemaVersion;
  root["name"] = p.name;
  json la;
  la["basis"] = p.basis;
  json brackets = json::array();
  for (const auto& [key, value] : p.brackets) {
    json b;
    b["pair"] = {p.basis[key.first], p.basis[key.second]};
    json val = json::object();
    for (std::size_t k = 0; k < value.size(); ++k)
      if (!value[k].is_zero()) val[p.basis[k]] = value[k].str();
    b["value"] = std::move(val);
    brackets.push_back(std::move(b));
  }
  la["brackets"] = std::move(brackets);
  root["lie_algebra"] = std::move(la);
  json r = json::array();
  for (std::size_t i = 0; i < p.r.size(); ++i)
    for (std::size_t j = i + 1; j < p.r.size(); ++j)
      if (!p.r[i][j].is_zero()) {
        json e;
        e["pair"] = {p.basis[i], p.basis[j]};
        e["coeff"] = p.r[i][j].str();
        r.push_back(std::move(e));
      }
  root["r"] = std::move(r);
  if (p.coords) {
    json ac;
    ac["coords"] = *p.coords;
    json fields;
    for (const auto& b : p.basis) fields[b] = p.field_exprs.at(b);
    ac["fields"] = std::move(fields);
    root["action"] = std::move(ac);
  }
  if (p.cometric_exprs) root["cometric"] = *p.cometric_exprs;
  if (p.volume_expr) root["volume"] = *p.volume_expr;
  if (!p.probes.empty()) {
    json probes = json::array();
    for (const auto& pt : p.probes) {
      json o;
      for (const auto& c : *p.coords) o[c] = pt.at(c);
      probes.push_back(std::move(o));
    }
    root["probes"] = std::move(probes);
  }
  if (!p.parallel_candidate_exprs.empty())
    root["parallel_candidates"] = p.parallel_candidate_exprs;
  if (!p.expect_parallel.empty()) root["expect_parallel"] = p.expect_parallel;
  if (!p.expect.empty()) {
    json ex;
    for (const auto& name : check_names())
      if (p.expect.count(name)) ex[name] = p.expect.at(name);
    root["expect"] = std::move(ex);
  }
  return root.dump(2) + "\n";
}

RealizedProblem realize(const ProblemSpec& p) {
  LieAlgebra algebra(p.basis, p.brackets);
  AlgBivector r(p.r);
  std::optional<ActionSetup> action;
  std::optional<CoMetric> cometric;
  std::optional<MultiPoly> volume;
  std::vector<RatVec> probe_points;
  std::vector<KForm> candidates;
  RatVec cert;
  if (p.coords) {
    Chart chart(*p.coords);
    const int m = chart.dim();
    std::vector<VectorField> fields;
    fields.reserve(p.basis.size());
    for (const auto& b : p.basis) {
      std::vector<MultiPoly> comps;
      comps.reserve(m);
      for (const auto& ex : p.field_exprs.at(b)) comps.push_back(parse_poly(ex, chart.vars()));
      fields.emplace_back(chart, std::move(comps));
    }
    action.emplace(algebra, chart, std::move(fields));
    if (p.cometric_exprs) {
      std::vector<std::vector<MultiPoly>> g;
      for (const auto& row : *p.cometric_exprs) {
        std::vector<MultiPoly> grow;
        for (const auto& ex : row) grow.push_back(parse_poly(ex, chart.vars()));
        g.push_back(std::move(grow));
      }
      cometric.emplace(chart, std::move(g));
    }
    if (p.volume_expr) volume = parse_poly(*p.volume_expr, chart.vars());
    for (const auto& pt : p.probes) {
      RatVec v(m);
      for (int i = 0; i < m; ++i) v[i] = Rat::parse(pt.at(chart.coord_name(i)));
      probe_points.push_back(std::move(v));
    }
    cert = probe_points.empty() ? RatVec(m, Rat(0)) : probe_points[0];
    for (const auto& cand : p.parallel_candidate_exprs) {
      std::vector<MultiPoly> comps;
      for (const auto& ex : cand) comps.push_back(parse_poly(ex, chart.vars()));
      candidates.push_back(KForm::covector(chart, std::move(comps)));
    }
  }
  return RealizedProblem{std::move(algebra), std::move(r),       std::move(action),
                         std::move(cometric), std::move(volume), std::move(probe_points),
                         std::move(cert),     std::move(candidates), p.expect_parallel};
}

}  // namespace ybp
