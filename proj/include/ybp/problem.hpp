#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ybp/action.hpp"
#include "ybp/forms.hpp"
#include "ybp/lie_algebra.hpp"

namespace ybp {

/// A problem file, faithfully mirroring the JSON: expressions stay as source
/// strings so emit(parse(x)) is the canonical form of x and parse(emit(p))
/// reproduces p exactly.
struct ProblemSpec {
  std::string name;
  std::vector<std::string> basis;
  LieAlgebra::BracketTable brackets;
  RatMat r;  // full antisymmetric matrix in basis order

  std::optional<std::vector<std::string>> coords;
  std::map<std::string, std::vector<std::string>> field_exprs;  // basis name -> components
  std::optional<std::vector<std::vector<std::string>>> cometric_exprs;
  std::optional<std::string> volume_expr;
  std::vector<std::map<std::string, std::string>> probes;  // coord -> rational
  std::vector<std::vector<std::string>> parallel_candidate_exprs;
  std::vector<int> expect_parallel;          // indices into the candidates
  std::map<std::string, std::string> expect;  // check name -> verdict

  friend bool operator==(const ProblemSpec& a, const ProblemSpec& b) = default;
};

ProblemSpec parse_problem(const std::string& json_text);
std::string emit_problem(const ProblemSpec& p);

/// The typed objects a problem describes. Built on demand from the spec;
/// construction errors surface as input errors before any check runs.
struct RealizedProblem {
  LieAlgebra algebra;
  AlgBivector r;
  std::optional<ActionSetup> action;
  std::optional<CoMetric> cometric;
  std::optional<MultiPoly> volume;
  std::vector<RatVec> probe_points;
  RatVec cert_point;  // first probe, else the origin
  std::vector<KForm> parallel_candidates;
  std::vector<int> expect_parallel;
};

RealizedProblem realize(const ProblemSpec& p);

/// Check names in pipeline order; expect keys must come from this list.
const std::vector<std::string>& check_names();
bool is_verdict_name(const std::string& s);

}  // namespace ybp
