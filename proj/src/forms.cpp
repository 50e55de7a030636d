#include "ybp/forms.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "ybp/errors.hpp"

namespace ybp {

namespace {

// Sorts idx ascending, returning the permutation sign; 0 on a repeated index.
int sort_with_sign(IdxTuple& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  return sign;
}

void check_idx_range(const IdxTuple& idx, int dim) {
  for (int i : idx)
    if (i < 0 || i >= dim) throw PreconditionError("coordinate index out of range");
}

template <typename CompMap>
void accumulate(CompMap& comps, IdxTuple idx, MultiPoly c) {
  auto it = comps.find(idx);
  if (it == comps.end()) {
    if (!c.is_zero()) comps.emplace(std::move(idx), std::move(c));
    return;
  }
  it->second += c;
  if (it->second.is_zero()) comps.erase(it);
}

template <typename CompMap>
std::string tensor_str(const CompMap& comps, const Chart& chart, const char* symbol_prefix) {
  if (comps.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : comps) {
    if (!first) os << " + ";
    first = false;
    if (idx.empty()) {
      os << c.str();
      continue;
    }
    os << "(" << c.str() << ")*";
    for (std::size_t m = 0; m < idx.size(); ++m) {
      if (m) os << "^";
      os << symbol_prefix << chart.coord_name(idx[m]);
    }
  }
  return os.str();
}

}  // namespace

VectorField::VectorField(Chart chart) : chart_(std::move(chart)) {
  comps_.assign(chart_.dim(), chart_.zero());
}

VectorField::VectorField(Chart chart, std::vector<MultiPoly> comps)
    : chart_(std::move(chart)), comps_(std::move(comps)) {
  if (static_cast<int>(comps_.size()) != chart_.dim())
    throw PreconditionError("vector field needs one component per coordinate");
  for (const auto& c : comps_)
    if (!(c.vars() == *chart_.vars()))
      throw InputError(errcode::vars, "field component on wrong chart");
}

VectorField VectorField::coordinate(const Chart& chart, int i) {
  VectorField x(chart);
  x.comps_[i] = chart.constant(Rat(1));
  return x;
}

bool VectorField::is_zero() const {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

MultiPoly VectorField::apply(const MultiPoly& f) const {
  MultiPoly out = chart_.zero();
  for (int i = 0; i < chart_.dim(); ++i) {
    if (comps_[i].is_zero()) continue;
    out += comps_[i] * f.diff(i);
  }
  return out;
}

VectorField VectorField::operator-() const {
  VectorField out(chart_);
  for (int i = 0; i < chart_.dim(); ++i) out.comps_[i] = -comps_[i];
  return out;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  if (a.chart_ != b.chart_) throw PreconditionError("fields live on different charts");
  VectorField out(a.chart_);
  for (int i = 0; i < a.chart_.dim(); ++i) out.comps_[i] = a.comps_[i] + b.comps_[i];
  return out;
}

VectorField operator-(const VectorField& a, const VectorField& b) { return a + (-b); }

VectorField VectorField::scaled_by(const MultiPoly& f) const {
  VectorField out(chart_);
  for (int i = 0; i < chart_.dim(); ++i) out.comps_[i] = comps_[i] * f;
  return out;
}

std::string VectorField::str() const {
  KMultivector m = KMultivector::from_field(*this);
  return m.str();
}

KForm::KForm(Chart chart, int degree) : chart_(std::move(chart)), degree_(degree) {
  if (degree < 0) throw PreconditionError("form degree must be nonnegative");
}

KForm KForm::from_function(const Chart& chart, const MultiPoly& f) {
  KForm s(chart, 0);
  s.add_term({}, f);
  return s;
}

KForm KForm::d_coord(const Chart& chart, int i) {
  KForm s(chart, 1);
  s.add_term({i}, chart.constant(Rat(1)));
  return s;
}

KForm KForm::covector(const Chart& chart, std::vector<MultiPoly> comps) {
  if (static_cast<int>(comps.size()) != chart.dim())
    throw PreconditionError("covector needs one component per coordinate");
  KForm s(chart, 1);
  for (int i = 0; i < chart.dim(); ++i) s.add_term({i}, comps[i]);
  return s;
}

MultiPoly KForm::comp(IdxTuple idx) const {
  if (static_cast<int>(idx.size()) != degree_)
    throw PreconditionError("component tuple length must equal the degree");
  int sign = sort_with_sign(idx);
  if (sign == 0) return chart_.zero();
  auto it = comps_.find(idx);
  if (it == comps_.end()) return chart_.zero();
  return sign > 0 ? it->second : -it->second;
}

void KForm::add_term(IdxTuple idx, const MultiPoly& c) {
  if (static_cast<int>(idx.size()) != degree_)
    throw PreconditionError("term tuple length must equal the degree");
  check_idx_range(idx, chart_.dim());
  if (!(c.vars() == *chart_.vars()))
    throw InputError(errcode::vars, "coefficient on wrong chart");
  if (c.is_zero()) return;
  int sign = sort_with_sign(idx);
  if (sign == 0) return;
  accumulate(comps_, std::move(idx), sign > 0 ? c : -c);
}

KForm KForm::operator-() const {
  KForm out(chart_, degree_);
  for (const auto& [idx, c] : comps_) out.comps_.emplace(idx, -c);
  return out;
}

KForm& KForm::operator+=(const KForm& o) {
  if (chart_ != o.chart_) throw PreconditionError("forms live on different charts");
  if (degree_ != o.degree_) throw PreconditionError("cannot add forms of different degree");
  for (const auto& [idx, c] : o.comps_) accumulate(comps_, idx, c);
  return *this;
}

KForm& KForm::operator-=(const KForm& o) { return *this += -o; }

KForm KForm::scaled_by(const MultiPoly& f) const {
  KForm out(chart_, degree_);
  if (f.is_zero()) return out;
  for (const auto& [idx, c] : comps_) {
    MultiPoly p = c * f;
    if (!p.is_zero()) out.comps_.emplace(idx, std::move(p));
  }
  return out;
}

KForm KForm::scaled_by(const Rat& c) const {
  KForm out(chart_, degree_);
  if (c.is_zero()) return out;
  for (const auto& [idx, p] : comps_) out.comps_.emplace(idx, p.scaled(c));
  return out;
}

std::string KForm::str() const { return tensor_str(comps_, chart_, "d"); }

bool operator==(const KForm& a, const KForm& b) {
  return a.chart_ == b.chart_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
}

KMultivector::KMultivector(Chart chart, int degree) : chart_(std::move(chart)), degree_(degree) {
  if (degree < 0) throw PreconditionError("multivector degree must be nonnegative");
}

KMultivector KMultivector::from_field(const VectorField& x) {
  KMultivector v(x.chart(), 1);
  for (int i = 0; i < x.chart().dim(); ++i) v.add_term({i}, x.comp(i));
  return v;
}

MultiPoly KMultivector::comp(IdxTuple idx) const {
  if (static_cast<int>(idx.size()) != degree_)
    throw PreconditionError("component tuple length must equal the degree");
  int sign = sort_with_sign(idx);
  if (sign == 0) return chart_.zero();
  auto it = comps_.find(idx);
  if (it == comps_.end()) return chart_.zero();
  return sign > 0 ? it->second : -it->second;
}

void KMultivector::add_term(IdxTuple idx, const MultiPoly& c) {
  if (static_cast<int>(idx.size()) != degree_)
    throw PreconditionError("term tuple length must equal the degree");
  check_idx_range(idx, chart_.dim());
  if (!(c.vars() == *chart_.vars()))
    throw InputError(errcode::vars, "coefficient on wrong chart");
  if (c.is_zero()) return;
  int sign = sort_with_sign(idx);
  if (sign == 0) return;
  accumulate(comps_, std::move(idx), sign > 0 ? c : -c);
}

KMultivector& KMultivector::operator+=(const KMultivector& o) {
  if (chart_ != o.chart_) throw PreconditionError("multivectors live on different charts");
  if (degree_ != o.degree_)
    throw PreconditionError("cannot add multivectors of different degree");
  for (const auto& [idx, c] : o.comps_) accumulate(comps_, idx, c);
  return *this;
}

KMultivector KMultivector::scaled_by(const Rat& c) const {
  KMultivector out(chart_, degree_);
  if (c.is_zero()) return out;
  for (const auto& [idx, p] : comps_) out.comps_.emplace(idx, p.scaled(c));
  return out;
}

std::string KMultivector::str() const { return tensor_str(comps_, chart_, "d/d"); }

bool operator==(const KMultivector& a, const KMultivector& b) {
  return a.chart_ == b.chart_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
}

CoMetric::CoMetric(Chart chart, std::vector<std::vector<MultiPoly>> g)
    : chart_(std::move(chart)), g_(std::move(g)) {
  const int n = chart_.dim();
  if (static_cast<int>(g_.size()) != n)
    throw PreconditionError("co-metric must be square of chart dimension");
  for (const auto& row : g_) {
    if (static_cast<int>(row.size()) != n)
      throw PreconditionError("co-metric must be square of chart dimension");
    for (const auto& e : row)
      if (!(e.vars() == *chart_.vars()))
        throw InputError(errcode::vars, "co-metric entry on wrong chart");
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!(g_[i][j] == g_[j][i])) throw PreconditionError("co-metric must be symmetric");
}

MultiPoly CoMetric::inner(const KForm& alpha, const KForm& beta) const {
  if (alpha.degree() != 1 || beta.degree() != 1)
    throw PreconditionError("co-metric pairs 1-forms");
  MultiPoly out = chart_.zero();
  for (const auto& [ia, ca] : alpha.comps())
    for (const auto& [ib, cb] : beta.comps()) out += g_[ia[0]][ib[0]] * ca * cb;
  return out;
}

Rat CoMetric::det_at(const RatVec& point) const {
  const int n = chart_.dim();
  RatMat m = mat_zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = g_[i][j].eval(point);
  return mat_det(std::move(m));
}

VectorField vf_bracket(const VectorField& x, const VectorField& y) {
  if (x.chart() != y.chart()) throw PreconditionError("fields live on different charts");
  const Chart& chart = x.chart();
  std::vector<MultiPoly> comps;
  comps.reserve(chart.dim());
  for (int i = 0; i < chart.dim(); ++i) comps.push_back(x.apply(y.comp(i)) - y.apply(x.comp(i)));
  return VectorField(chart, std::move(comps));
}

KForm exterior_d(const KForm& s) {
  const Chart& chart = s.chart();
  KForm out(chart, s.degree() + 1);
  for (const auto& [idx, c] : s.comps())
    for (int i = 0; i < chart.dim(); ++i) {
      MultiPoly dc = c.diff(i);
      if (dc.is_zero()) continue;
      IdxTuple ext;
      ext.reserve(idx.size() + 1);
      ext.push_back(i);
      ext.insert(ext.end(), idx.begin(), idx.end());
      out.add_term(std::move(ext), dc);
    }
  return out;
}

KForm exterior_d(const Chart& chart, const MultiPoly& f) {
  return exterior_d(KForm::from_function(chart, f));
}

namespace {

template <typename T>
T wedge_impl(const T& a, const T& b) {
  if (a.chart() != b.chart()) throw PreconditionError("wedge factors live on different charts");
  T out(a.chart(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.comps())
    for (const auto& [ib, cb] : b.comps()) {
      IdxTuple idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      out.add_term(std::move(idx), ca * cb);
    }
  return out;
}

}  // namespace

KForm wedge(const KForm& a, const KForm& b) { return wedge_impl(a, b); }
KMultivector wedge(const KMultivector& a, const KMultivector& b) { return wedge_impl(a, b); }

KForm interior_product(const VectorField& x, const KForm& s) {
  if (x.chart() != s.chart()) throw PreconditionError("contraction across charts");
  if (s.degree() == 0) throw PreconditionError("cannot contract a degree-0 form");
  KForm out(s.chart(), s.degree() - 1);
  for (const auto& [idx, c] : s.comps())
    for (std::size_t m = 0; m < idx.size(); ++m) {
      const MultiPoly& xm = x.comp(idx[m]);
      if (xm.is_zero()) continue;
      IdxTuple rest;
      rest.reserve(idx.size() - 1);
      for (std::size_t t = 0; t < idx.size(); ++t)
        if (t != m) rest.push_back(idx[t]);
      MultiPoly term = c * xm;
      out.add_term(std::move(rest), m % 2 == 0 ? term : -term);
    }
  return out;
}

KForm interior_product(const KMultivector& v, const KForm& s) {
  if (v.chart() != s.chart()) throw PreconditionError("contraction across charts");
  if (v.degree() > s.degree())
    throw PreconditionError("contraction degree exceeds form degree");
  KForm out(s.chart(), s.degree() - v.degree());
  for (const auto& [idx, c] : v.comps()) {
    KForm cur = s;
    // Innermost factor first: i_{d/dx_{j1}} then i_{d/dx_{j2}}, ...
    for (int j : idx) cur = interior_product(VectorField::coordinate(s.chart(), j), cur);
    out += cur.scaled_by(c);
  }
  return out;
}

KForm lie_derivative(const VectorField& x, const KForm& s) {
  if (x.chart() != s.chart()) throw PreconditionError("derivative across charts");
  if (s.degree() == 0) {
    MultiPoly f = s.comps().empty() ? s.chart().zero() : s.comps().begin()->second;
    return KForm::from_function(s.chart(), x.apply(f));
  }
  return exterior_d(interior_product(x, s)) + interior_product(x, exterior_d(s));
}

std::vector<std::vector<MultiPoly>> lie_derivative_cometric(const VectorField& x,
                                                            const CoMetric& g) {
  if (x.chart() != g.chart()) throw PreconditionError("derivative across charts");
  const int n = g.chart().dim();
  std::vector<std::vector<MultiPoly>> out(n, std::vector<MultiPoly>(n, g.chart().zero()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MultiPoly acc = x.apply(g.comp(i, j));
      for (int l = 0; l < n; ++l) {
        acc -= g.comp(l, j) * x.comp(i).diff(l);
        acc -= g.comp(i, l) * x.comp(j).diff(l);
      }
      out[i][j] = acc;
    }
  return out;
}

MultiPoly pairing(const KForm& alpha, const VectorField& x) {
  if (alpha.chart() != x.chart()) throw PreconditionError("pairing across charts");
  if (alpha.degree() != 1) throw PreconditionError("pairing takes a 1-form");
  MultiPoly out = x.chart().zero();
  for (const auto& [idx, c] : alpha.comps()) out += c * x.comp(idx[0]);
  return out;
}

}  // namespace ybp
