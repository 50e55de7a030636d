#include "ybp/poisson.hpp"

#include <utility>

#include "ybp/errors.hpp"

namespace ybp {

PoissonBivector::PoissonBivector(Chart chart, std::vector<std::vector<MultiPoly>> comps)
    : chart_(std::move(chart)), m_(std::move(comps)) {
  const int n = chart_.dim();
  if (static_cast<int>(m_.size()) != n)
    throw PreconditionError("bivector matrix must be square of chart dimension");
  for (const auto& row : m_) {
    if (static_cast<int>(row.size()) != n)
      throw PreconditionError("bivector matrix must be square of chart dimension");
    for (const auto& e : row)
      if (!(e.vars() == *chart_.vars()))
        throw InputError(errcode::vars, "bivector entry on wrong chart");
  }
  for (int i = 0; i < n; ++i) {
    if (!m_[i][i].is_zero()) throw PreconditionError("bivector diagonal must vanish");
    for (int j = i + 1; j < n; ++j)
      if (!(m_[i][j] == -m_[j][i])) throw PreconditionError("bivector must be antisymmetric");
  }
}

bool PoissonBivector::is_zero() const {
  for (const auto& row : m_)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

MultiPoly PoissonBivector::pair(const KForm& alpha, const KForm& beta) const {
  if (alpha.degree() != 1 || beta.degree() != 1)
    throw PreconditionError("bivector pairs 1-forms");
  if (alpha.chart() != chart_ || beta.chart() != chart_)
    throw PreconditionError("pairing across charts");
  MultiPoly out = chart_.zero();
  for (const auto& [ia, ca] : alpha.comps())
    for (const auto& [ib, cb] : beta.comps()) {
      const MultiPoly& p = m_[ia[0]][ib[0]];
      if (!p.is_zero()) out += p * ca * cb;
    }
  return out;
}

VectorField PoissonBivector::anchor(const KForm& alpha) const {
  if (alpha.degree() != 1) throw PreconditionError("anchor takes a 1-form");
  if (alpha.chart() != chart_) throw PreconditionError("anchor across charts");
  const int n = chart_.dim();
  std::vector<MultiPoly> comps(n, chart_.zero());
  for (int i = 0; i < n; ++i)
    for (const auto& [ia, ca] : alpha.comps()) {
      const MultiPoly& p = m_[ia[0]][i];
      if (!p.is_zero()) comps[i] += p * ca;
    }
  return VectorField(chart_, std::move(comps));
}

KMultivector PoissonBivector::as_multivector() const {
  KMultivector v(chart_, 2);
  const int n = chart_.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) v.add_term({i, j}, m_[i][j]);
  return v;
}

namespace {

PoissonBivector induced_impl(const ActionSetup& a, const AlgBivector& r) {
  const int n = a.algebra().dim();
  if (r.dim() != n) throw InputError(errcode::shape, "bivector dimension differs from algebra");
  const Chart& chart = a.chart();
  const int m = chart.dim();
  std::vector<std::vector<MultiPoly>> comps(m, std::vector<MultiPoly>(m, chart.zero()));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Rat& c = r.comp(i, j);
      if (c.is_zero()) continue;
      const VectorField& ui = a.field(i);
      const VectorField& uj = a.field(j);
      for (int k = 0; k < m; ++k)
        for (int l = k + 1; l < m; ++l) {
          MultiPoly t = (ui.comp(k) * uj.comp(l) - ui.comp(l) * uj.comp(k)).scaled(c);
          comps[k][l] += t;
          comps[l][k] -= t;
        }
    }
  return PoissonBivector(chart, std::move(comps));
}

}  // namespace

PoissonBivector induced_poisson(const ActionSetup& a, const AlgBivector& r) {
  if (!a.algebra().jacobi().ok)
    throw PreconditionError("bracket table violates the Jacobi identity");
  if (!a.morphism().ok) throw PreconditionError("assignment is not a bracket morphism");
  if (!yang_baxter_bracket(a.algebra(), r).is_zero())
    throw PreconditionError("r does not solve the Yang-Baxter equation");
  return induced_impl(a, r);
}

PoissonBivector induced_poisson_unverified(const ActionSetup& a, const AlgBivector& r) {
  return induced_impl(a, r);
}

SchoutenVerdict schouten_jacobi_check(const PoissonBivector& pi) {
  SchoutenVerdict v;
  const int n = pi.chart().dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        MultiPoly acc = pi.chart().zero();
        for (int l = 0; l < n; ++l) {
          acc += pi.comp(l, i) * pi.comp(j, k).diff(l);
          acc += pi.comp(l, j) * pi.comp(k, i).diff(l);
          acc += pi.comp(l, k) * pi.comp(i, j).diff(l);
        }
        if (!acc.is_zero()) {
          v.ok = false;
          v.triple = {i, j, k};
          v.residual = std::move(acc);
          return v;
        }
      }
  return v;
}

KForm koszul_bracket(const PoissonBivector& pi, const KForm& alpha, const KForm& beta) {
  if (alpha.degree() != 1 || beta.degree() != 1)
    throw PreconditionError("form bracket takes 1-forms");
  KForm out = lie_derivative(pi.anchor(alpha), beta);
  out -= lie_derivative(pi.anchor(beta), alpha);
  out -= exterior_d(pi.chart(), pi.pair(alpha, beta));
  return out;
}

namespace {

MultiPoly poly_det(const std::vector<std::vector<MultiPoly>>& m, const Chart& chart) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return chart.constant(Rat(1));
  if (n == 1) return m[0][0];
  MultiPoly acc = chart.zero();
  for (int c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<MultiPoly>> minor;
    minor.reserve(n - 1);
    for (int rr = 1; rr < n; ++rr) {
      std::vector<MultiPoly> row;
      row.reserve(n - 1);
      for (int cc = 0; cc < n; ++cc)
        if (cc != c) row.push_back(m[rr][cc]);
      minor.push_back(std::move(row));
    }
    MultiPoly term = m[0][c] * poly_det(minor, chart);
    acc += c % 2 == 0 ? term : -term;
  }
  return acc;
}

// All r x r minors of the fields-by-coordinates component matrix, streamed to
// a callback until it returns false.
template <typename F>
void for_each_minor(const std::vector<std::vector<MultiPoly>>& m, int r, const Chart& chart,
                    F&& f) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
  if (r > rows || r > cols) return;
  std::vector<int> ri(r), ci(r);
  auto next_combo = [](std::vector<int>& idx, int limit) {
    int k = static_cast<int>(idx.size());
    for (int t = k - 1; t >= 0; --t) {
      if (idx[t] < limit - (k - t)) {
        ++idx[t];
        for (int s = t + 1; s < k; ++s) idx[s] = idx[s - 1] + 1;
        return true;
      }
    }
    return false;
  };
  for (int t = 0; t < r; ++t) ri[t] = t;
  do {
    for (int t = 0; t < r; ++t) ci[t] = t;
    do {
      std::vector<std::vector<MultiPoly>> sub(r);
      for (int a = 0; a < r; ++a) {
        sub[a].reserve(r);
        for (int b = 0; b < r; ++b) sub[a].push_back(m[ri[a]][ci[b]]);
      }
      if (!f(poly_det(sub, chart))) return;
    } while (next_combo(ci, cols));
  } while (next_combo(ri, rows));
}

}  // namespace

FreenessVerdict local_freeness(const std::vector<VectorField>& fields,
                               const std::vector<RatVec>& probes) {
  if (fields.empty()) throw PreconditionError("freeness needs at least one field");
  const Chart& chart = fields[0].chart();
  for (const auto& f : fields)
    if (f.chart() != chart) throw PreconditionError("fields live on different charts");
  const int k = static_cast<int>(fields.size());
  const int m = chart.dim();
  std::vector<std::vector<MultiPoly>> comp(k);
  for (int a = 0; a < k; ++a) {
    comp[a].reserve(m);
    for (int i = 0; i < m; ++i) comp[a].push_back(fields[a].comp(i));
  }
  FreenessVerdict v;
  v.needed_rank = k;
  for (int r = std::min(k, m); r >= 1 && v.generic_rank == 0; --r)
    for_each_minor(comp, r, chart, [&](const MultiPoly& d) {
      if (d.is_zero()) return true;
      v.generic_rank = r;
      return false;
    });
  if (v.generic_rank < k) {
    v.answer = Freeness::no;
    return v;
  }
  for (const auto& p : probes) {
    if (static_cast<int>(p.size()) != m)
      throw InputError(errcode::shape, "probe point has wrong length");
    RatMat at = mat_zero(k, m);
    for (int a = 0; a < k; ++a)
      for (int i = 0; i < m; ++i) at[a][i] = comp[a][i].eval(p);
    if (mat_rank(at) < k) {
      v.answer = Freeness::no;
      v.drop_point = p;
      return v;
    }
  }
  for_each_minor(comp, k, chart, [&](const MultiPoly& d) {
    if (d.is_constant() && !d.is_zero()) {
      v.constant_minor = true;
      return false;
    }
    return true;
  });
  v.answer = v.constant_minor ? Freeness::yes : Freeness::unknown;
  return v;
}

}  // namespace ybp
