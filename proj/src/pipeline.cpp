#include "ybp/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include "ybp/connection.hpp"
#include "ybp/errors.hpp"

namespace ybp {

using json = nlohmann::ordered_json;

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::skipped: return "skipped";
    case Verdict::refused: return "refused";
  }
  return "?";
}

namespace {

std::string vec_str(const RatVec& v, const std::vector<std::string>& names) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (v[i] == Rat(1))
      os << names[i];
    else
      os << v[i].str() << "*" << names[i];
  }
  return first ? "0" : os.str();
}

std::string point_str(const RatVec& p, const Chart& chart) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < chart.dim(); ++i) {
    if (i) os << ", ";
    os << chart.coord_name(i) << "=" << p[i].str();
  }
  os << ")";
  return os.str();
}

std::string mat_str(const RatMat& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) os << ", ";
    os << "[";
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (j) os << ", ";
      os << m[i][j].str();
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

std::string index_set_str(const std::vector<int>& s) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << ", ";
    os << s[i];
  }
  os << "}";
  return os.str();
}

struct State {
  RealizedProblem rp;
  std::optional<SubspaceForm> image;
  std::optional<PoissonBivector> pi;
  std::optional<ContraConnection> conn;
  std::optional<FreenessVerdict> freeness;
  std::vector<int> parallel_found;
};

}  // namespace

Report run_pipeline(const ProblemSpec& spec, const RunOptions& opt) {
  for (const auto& name : opt.only) {
    const auto& names = check_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw InputError(errcode::schema, "unknown check '" + name + "'");
  }
  State st{realize(spec), {}, {}, {}, {}, {}};
  const auto& basis = spec.basis;
  std::map<std::string, Verdict> got;

  auto deps_ok = [&](CheckResult& res, std::initializer_list<const char*> deps) {
    for (const char* d : deps) {
      Verdict v = got.at(d);
      if (v == Verdict::pass) continue;
      if (v == Verdict::skipped) {
        res.verdict = Verdict::skipped;
        res.detail = std::string("depends on '") + d + "' which was skipped";
      } else {
        res.verdict = Verdict::refused;
        res.detail = std::string("depends on '") + d + "' which " +
                     (v == Verdict::fail ? "failed" : "was refused");
      }
      return false;
    }
    return true;
  };
  auto need_data = [&](CheckResult& res, bool present, const char* what) {
    if (present) return true;
    res.verdict = Verdict::skipped;
    res.data_skip = true;
    res.detail = std::string("no ") + what;
    return false;
  };
  auto freeness_answer = [&]() {
    return st.freeness ? st.freeness->answer : Freeness::unknown;
  };

  std::map<std::string, std::function<void(CheckResult&)>> bodies;

  bodies["jacobi"] = [&](CheckResult& res) {
    const auto& jv = st.rp.algebra.jacobi();
    if (jv.ok) {
      res.detail = "all basis triples satisfy the Jacobi identity";
      return;
    }
    res.verdict = Verdict::fail;
    res.detail = "Jacobi identity fails on (" + basis[jv.triple[0]] + ", " +
                 basis[jv.triple[1]] + ", " + basis[jv.triple[2]] + ")";
    res.witness = "[[x,y],z] + [[y,z],x] + [[z,x],y] = " + vec_str(jv.residual, basis);
  };

  bodies["yb"] = [&](CheckResult& res) {
    if (!deps_ok(res, {"jacobi"})) return;
    AlgTrivector t = yang_baxter_bracket(st.rp.algebra, st.rp.r);
    if (t.is_zero()) {
      res.detail = "the bracket [r,r] vanishes identically";
      return;
    }
    res.verdict = Verdict::fail;
    res.detail = "the bracket [r,r] is nonzero";
    res.witness = "[r,r] = " + t.str(basis);
  };

  bodies["image"] = [&](CheckResult& res) {
    if (!deps_ok(res, {"jacobi"})) return;
    st.image = image_form(st.rp.algebra, st.rp.r);
    AlgBivector back = bivector_from_subspace_form(st.rp.algebra, *st.image);
    std::ostringstream os;
    os << "image dimension " << st.image->dim() << " with basis ";
    for (int a = 0; a < st.image->dim(); ++a) {
      if (a) os << ", ";
      os << vec_str(st.image->basis()[a], basis);
    }
    if (back == st.rp.r) {
      res.detail = os.str() + "; nondegenerate induced form reconstructs r";
      return;
    }
    res.verdict = Verdict::fail;
    res.detail = os.str() + "; reconstruction from the induced form does not return r";
    res.witness = "reconstructed = " + mat_str(back.matrix()) + ", r = " + mat_str(st.rp.r.matrix());
  };

  bodies["cocycle"] = [&](CheckResult& res) {
    if (!deps_ok(res, {"image"})) return;
    CocycleVerdict cv = cocycle_check(st.rp.algebra, *st.image);
    if (cv.ok()) {
      res.detail = "the induced form is a 2-cocycle on the image subalgebra";
      return;
    }
    res.verdict = Verdict::fail;
    if (!cv.closed) {
      auto [a, b] = *cv.escape;
      res.detail = "the image is not closed under the bracket";
      res.witness = "[" + vec_str(st.image->basis()[a], basis) + ", " +
                    vec_str(st.image->basis()[b], basis) + "] = " +
                    vec_str(st.rp.algebra.bracket_vec(st.image->basis()[a],
                                                      st.image->basis()[b]),
                            basis) +
                    " leaves the image";
      return;
    }
    auto [a, b, c] = *cv.witness;
    res.detail = "the cocycle identity fails on an image basis triple";
    res.witness = "w([s" + std::to_string(a) + ",s" + std::to_string(b) + "],s" +
                  std::to_string(c) + ") + cyclic = " + cv.witness_value.str();
  };

  bodies["structure"] = [&](CheckResult& res) {
    if (!deps_ok(res, {"image"})) return;
    StructureRelationVerdict sv = structure_relation_check(st.rp.algebra, *st.image);
    if (sv.ok) {
      res.detail = "all four structure-constant relation families hold in a Darboux basis";
      return;
    }
    res.verdict = Verdict::fail;
    if (sv.family == 0) {
      res.detail = "the image is not closed under the bracket";
      res.witness = "image basis pair (" + std::to_string(sv.indices[0]) + ", " +
                    std::to_string(sv.indices[1]) + ") brackets outside the image";
      return;
    }
    res.detail = "relation family " + std::to_string(sv.family) + " fails";
    res.witness = "family " + std::to_string(sv.family) + " at (i,j,k)=(" +
                  std::to_string(sv.indices[0]) + "," + std::to_string(sv.indices[1]) + "," +
                  std::to_string(sv.indices[2]) + ") gives " + sv.value.str();
  };

  bodies["unimodular"] = [&](CheckResult& res) {
    if (!deps_ok(res, {"image"})) return;
    UnimodularVerdict uv = unimodular_check(st.rp.algebra, *st.image);
    if (uv.ok()) {
      res.detail = "trace-of-ad and Darboux-sum criteria both vanish";
      return;
    }
    res.verdict = Verdict::fail;
    res.detail = "the image subalgebra is not unimodular";
    if (!uv.trace_route)
      res.witness = "tr(ad " + vec_str(st.image->basis()[*uv.trace_witness], basis) +
                    " restricted to the image) = " + uv.trace_value.str();
    else
      res.witness = "sum of [e_i, f_i] over a Darboux basis = " + vec_str(uv.darboux_sum, basis);
  };

  bodies["morphism"] = [&](CheckResult& res) {
    if (!need_data(res, st.rp.action.has_value(), "action data")) return;
    if (!deps_ok(res, {"jacobi"})) return;
    const auto& mv = st.rp.action->morphism();
    if (mv.ok) {
      res.detail = "the basis assignment extends to a bracket morphism";
      return;
    }
    res.verdict = Verdict::fail;
    res.detail = "bracket morphism fails on (" + basis[mv.pair[0]] + ", " + basis[mv.pair[1]] + ")";
    res.witness = "field([x,y]) - [field(x), field(y)] = " + mv.residual->str();
  };

  bodies["poisson"] = [&](CheckResult& res) {
    if (!need_data(res, st.rp.action.has_value(), "action data")) return;
    if (!deps_ok(res, {"yb", "morphism"})) return;
    st.pi = induced_poisson_unverified(*st.rp.action, st.rp.r);
    st.conn = ContraConnection::build_unverified(*st.rp.action, st.rp.r);
    res.detail = "induced tensor " + st.pi->as_multivector().str() +
                 " built from a verified solution and action";
  };

  bodies["schouten"] = [&](CheckResult& res) {
    if (!deps_ok(res, {"poisson"})) return;
    SchoutenVerdict sv = schouten_jacobi_check(*st.pi);
    if (sv.ok) {
      res.detail = "the coordinate jacobiator of the tensor vanishes identically";
      return;
    }
    res.verdict = Verdict::fail;
    const Chart& chart = st.pi->chart();
    res.detail = "the coordinate jacobiator is nonzero";
    res.witness = "jacobiator(" + chart.coord_name(sv.triple[0]) + ", " +
                  chart.coord_name(sv.triple[1]) + ", " + chart.coord_name(sv.triple[2]) +
                  ") = " + sv.residual.str();
  };

  bodies["torsion"] = [&](CheckResult& res) {
    if (!deps_ok(res, {"poisson"})) return;
    const Chart& chart = st.conn->chart();
    for (int a = 0; a < chart.dim(); ++a)
      for (int b = a + 1; b < chart.dim(); ++b) {
        KForm t = st.conn->torsion(KForm::d_coord(chart, a), KForm::d_coord(chart, b));
        if (!t.is_zero()) {
          res.verdict = Verdict::fail;
          res.detail = "torsion is nonzero on a coframe pair";
          res.witness = "T(d" + chart.coord_name(a) + ", d" + chart.coord_name(b) +
                        ") = " + t.str();
          return;
        }
      }
    res.detail = "torsion vanishes on every coframe pair";
  };

  bodies["flatness"] = [&](CheckResult& res) {
    if (!deps_ok(res, {"poisson"})) return;
    const Chart& chart = st.conn->chart();
    for (int a = 0; a < chart.dim(); ++a)
      for (int b = a + 1; b < chart.dim(); ++b)
        for (int c = 0; c < chart.dim(); ++c) {
          KForm k = st.conn->curvature(KForm::d_coord(chart, a), KForm::d_coord(chart, b),
                                       KForm::d_coord(chart, c));
          if (!k.is_zero()) {
            res.verdict = Verdict::fail;
            res.detail = "curvature is nonzero on a coframe triple";
            res.witness = "K(d" + chart.coord_name(a) + ", d" + chart.coord_name(b) + ")d" +
                          chart.coord_name(c) + " = " + k.str();
            return;
          }
        }
    res.detail = "curvature vanishes on every coframe triple";
  };

  bodies["freeness"] = [&](CheckResult& res) {
    if (!need_data(res, st.rp.action.has_value(), "action data")) return;
    if (!deps_ok(res, {"morphism", "image"})) return;
    std::vector<VectorField> fields;
    for (const auto& b : st.image->basis()) fields.push_back(st.rp.action->field_of(b));
    st.freeness = local_freeness(fields, st.rp.probe_points);
    const auto& fv = *st.freeness;
    if (fv.answer == Freeness::yes) {
      res.detail = "answer: yes — a constant nonzero maximal minor certifies full rank " +
                   std::to_string(fv.needed_rank) + " everywhere";
      return;
    }
    res.verdict = Verdict::fail;
    if (fv.answer == Freeness::no) {
      res.detail = "answer: no — the image fields do not have full rank everywhere";
      if (fv.drop_point)
        res.witness = "rank drops below " + std::to_string(fv.needed_rank) + " at " +
                      point_str(*fv.drop_point, st.rp.action->chart());
      else
        res.witness = "generic rank is " + std::to_string(fv.generic_rank) + " < " +
                      std::to_string(fv.needed_rank) +
                      " (every maximal minor vanishes identically)";
      return;
    }
    res.detail = "answer: unknown — generic rank is full but no everywhere-certificate exists";
    res.witness = "no maximal minor of the image fields is a nonzero constant";
  };

  bodies["parallel"] = [&](CheckResult& res) {
    if (!need_data(res, !st.rp.parallel_candidates.empty(), "parallel candidates")) return;
    if (!deps_ok(res, {"poisson"})) return;
    Freeness fr = freeness_answer();
    bool used_lie = false;
    for (std::size_t i = 0; i < st.rp.parallel_candidates.size(); ++i) {
      ParallelVerdict pv = is_parallel(*st.conn, st.rp.parallel_candidates[i], fr);
      used_lie = pv.used_lie_criterion;
      if (pv.parallel) st.parallel_found.push_back(static_cast<int>(i));
    }
    const char* criterion = used_lie ? "invariance along the image fields"
                                     : "coframe derivatives";
    if (st.parallel_found == st.rp.expect_parallel) {
      res.detail = "computed parallel set " + index_set_str(st.parallel_found) +
                   " matches the declared set; criterion: " + criterion;
      return;
    }
    res.verdict = Verdict::fail;
    res.detail = "computed parallel set " + index_set_str(st.parallel_found) +
                 " differs from declared " + index_set_str(st.rp.expect_parallel) +
                 "; criterion: " + criterion;
    for (std::size_t i = 0; i < st.rp.parallel_candidates.size(); ++i) {
      bool computed = std::find(st.parallel_found.begin(), st.parallel_found.end(),
                                static_cast<int>(i)) != st.parallel_found.end();
      bool declared = std::find(st.rp.expect_parallel.begin(), st.rp.expect_parallel.end(),
                                static_cast<int>(i)) != st.rp.expect_parallel.end();
      if (computed != declared) {
        res.witness = "candidate " + std::to_string(i) + " (" +
                      st.rp.parallel_candidates[i].str() + ") computed " +
                      (computed ? "parallel" : "non-parallel") + " but declared " +
                      (declared ? "parallel" : "non-parallel");
        break;
      }
    }
  };

  bodies["metacurvature"] = [&](CheckResult& res) {
    if (!need_data(res, !st.rp.parallel_candidates.empty(), "parallel candidates")) return;
    if (!deps_ok(res, {"parallel"})) return;
    if (st.parallel_found.empty()) {
      res.verdict = Verdict::skipped;
      res.detail = "no parallel forms to probe";
      return;
    }
    const Chart& chart = st.conn->chart();
    Freeness fr = freeness_answer();
    for (int idx : st.parallel_found) {
      const KForm& alpha = st.rp.parallel_candidates[idx];
      for (int a = 0; a < chart.dim(); ++a)
        for (int b = 0; b < chart.dim(); ++b) {
          KForm m = metacurvature(*st.conn, alpha, KForm::d_coord(chart, a),
                                  KForm::d_coord(chart, b), fr);
          if (!m.is_zero()) {
            res.verdict = Verdict::fail;
            res.detail = "metacurvature is nonzero on a parallel form";
            res.witness = "M(" + alpha.str() + ", d" + chart.coord_name(a) + ", d" +
                          chart.coord_name(b) + ") = " + m.str();
            return;
          }
        }
    }
    res.detail = "metacurvature vanishes for every parallel form against the coframe";
  };

  bodies["killing"] = [&](CheckResult& res) {
    if (!need_data(res, st.rp.cometric.has_value(), "co-metric data")) return;
    if (!deps_ok(res, {"morphism"})) return;
    KillingVerdict kv = killing_check(*st.rp.action, *st.rp.cometric);
    if (kv.ok) {
      res.detail = "every action field is a Killing field of the co-metric";
      return;
    }
    res.verdict = Verdict::fail;
    const Chart& chart = st.rp.action->chart();
    res.detail = "the field of " + basis[kv.field] + " is not Killing";
    res.witness = "(L g)^(" + chart.coord_name(kv.entry[0]) + "," +
                  chart.coord_name(kv.entry[1]) + ") = " + kv.residual.str() + " along " +
                  st.rp.action->field(kv.field).str();
  };

  bodies["metric"] = [&](CheckResult& res) {
    if (!need_data(res, st.rp.cometric.has_value(), "co-metric data")) return;
    if (!deps_ok(res, {"killing", "poisson"})) return;
    const Chart& chart = st.conn->chart();
    if (st.rp.cometric->det_at(st.rp.cert_point).is_zero())
      throw PreconditionError("co-metric is singular at the certification point " +
                              point_str(st.rp.cert_point, chart));
    MetricContraConnection mc(*st.rp.cometric, *st.pi);
    for (int a = 0; a < chart.dim(); ++a)
      for (int b = 0; b < chart.dim(); ++b) {
        KForm da = KForm::d_coord(chart, a);
        KForm db = KForm::d_coord(chart, b);
        KForm lhs = mc.derivative(da, db);
        KForm rhs = st.conn->derivative(da, db);
        if (!(lhs == rhs)) {
          res.verdict = Verdict::fail;
          res.detail = "the induced derivative differs from the metric one";
          res.witness = "on (d" + chart.coord_name(a) + ", d" + chart.coord_name(b) +
                        "): metric gives " + lhs.str() + ", induced gives " + rhs.str();
          return;
        }
      }
    res.detail = "the induced derivative agrees with the metric one on every coframe pair";
  };

  bodies["hawkins"] = [&](CheckResult& res) {
    if (!need_data(res, st.rp.volume.has_value(), "volume data")) return;
    if (!deps_ok(res, {"morphism", "image"})) return;
    HawkinsVerdict hv =
        hawkins_volume_check(*st.rp.action, st.rp.r, *st.rp.volume, st.rp.cert_point);
    if (hv.ok()) {
      res.detail = "image unimodular by both routes, volume invariant along it, d(i_pi eps) = 0";
      return;
    }
    res.verdict = Verdict::fail;
    if (!hv.volume_ok) {
      res.detail = "the volume coefficient vanishes at the certification point";
      res.witness = "volume = " + st.rp.volume->str() + " at " +
                    point_str(st.rp.cert_point, st.rp.action->chart());
      return;
    }
    if (!hv.unimodular.ok()) {
      res.detail = "the image subalgebra is not unimodular";
      if (!hv.unimodular.trace_route)
        res.witness = "tr(ad s_" + std::to_string(*hv.unimodular.trace_witness) +
                      " restricted to the image) = " + hv.unimodular.trace_value.str();
      else
        res.witness = "sum of [e_i, f_i] over a Darboux basis = " +
                      vec_str(hv.unimodular.darboux_sum, basis);
      return;
    }
    if (!hv.invariant) {
      res.detail = "the volume is not invariant along the image fields";
      res.witness = "L along image basis vector " + std::to_string(*hv.invariance_witness) +
                    " gives " + hv.invariance_residual->str();
      return;
    }
    res.detail = "d(i_pi eps) is nonzero";
    res.witness = "d(i_pi eps) = " + hv.conclusion_residual->str();
  };

  Report rep;
  rep.problem = spec.name;
  for (const auto& name : check_names()) {
    CheckResult res;
    res.check = name;
    auto start = std::chrono::steady_clock::now();
    try {
      bodies.at(name)(res);
    } catch (const PreconditionError& e) {
      res.verdict = Verdict::refused;
      res.detail = e.what();
    }
    res.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    got[name] = res.verdict;
    bool selected = opt.only.empty() ||
                    std::find(opt.only.begin(), opt.only.end(), name) != opt.only.end();
    if (!selected) continue;
    if (!opt.only.empty() && res.verdict == Verdict::skipped) {
      res.verdict = Verdict::refused;
      res.detail = "requested explicitly but " + res.detail;
    }
    auto it = spec.expect.find(name);
    if (it != spec.expect.end()) res.expected = it->second;
    rep.results.push_back(std::move(res));
  }
  return rep;
}

std::string emit_report_json(const Report& r, bool verbose) {
  json root;
  root["problem"] = r.problem;
  json results = json::array();
  for (const auto& res : r.results) {
    json o;
    o["check"] = res.check;
    o["verdict"] = verdict_name(res.verdict);
    o["detail"] = res.detail;
    o["witness"] = res.witness;
    if (res.expected) o["expected"] = *res.expected;
    if (verbose) o["elapsed_ms"] = res.elapsed_ms;
    results.push_back(std::move(o));
  }
  root["results"] = std::move(results);
  return root.dump(2) + "\n";
}

std::string emit_report_text(const Report& r) {
  std::ostringstream os;
  os << "problem: " << r.problem << "\n";
  int bad = 0;
  for (const auto& res : r.results) {
    os << "  " << res.check;
    for (std::size_t p = res.check.size(); p < 14; ++p) os << ' ';
    os << verdict_name(res.verdict);
    bool acceptable = res.expected ? verdict_name(res.verdict) == *res.expected
                                   : res.verdict == Verdict::pass ||
                                     res.verdict == Verdict::skipped;
    if (res.expected && verdict_name(res.verdict) != *res.expected)
      os << " (expected " << *res.expected << ")";
    else if (res.expected)
      os << " (as expected)";
    if (!acceptable) ++bad;
    os << "  " << res.detail << "\n";
    if (!res.witness.empty()) os << "      witness: " << res.witness << "\n";
  }
  os << "result: " << (bad == 0 ? "ok" : "unexpected verdicts") << "\n";
  return os.str();
}

int report_exit_code(const Report& r) {
  for (const auto& res : r.results) {
    if (res.expected) {
      if (verdict_name(res.verdict) != *res.expected) return 1;
    } else if (res.verdict != Verdict::pass && res.verdict != Verdict::skipped) {
      return 1;
    }
  }
  return 0;
}

}  // namespace ybp
