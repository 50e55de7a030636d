#include "ybp/connection.hpp"

#include <utility>

#include "ybp/errors.hpp"

namespace ybp {

ContraConnection::ContraConnection(const ActionSetup& a, const AlgBivector& r)
    : setup_(a), pi_(induced_poisson_unverified(a, r)) {
  const int n = a.algebra().dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!r.comp(i, j).is_zero()) terms_.push_back({r.comp(i, j), i, j});
  image_basis_ = column_space_basis(r.matrix());
  for (const auto& s : image_basis_) image_fields_.push_back(a.field_of(s));
}

ContraConnection ContraConnection::build(const ActionSetup& a, const AlgBivector& r) {
  if (!a.algebra().jacobi().ok)
    throw PreconditionError("bracket table violates the Jacobi identity");
  if (!a.morphism().ok) throw PreconditionError("assignment is not a bracket morphism");
  if (!yang_baxter_bracket(a.algebra(), r).is_zero())
    throw PreconditionError("r does not solve the Yang-Baxter equation");
  return ContraConnection(a, r);
}

ContraConnection ContraConnection::build_unverified(const ActionSetup& a, const AlgBivector& r) {
  return ContraConnection(a, r);
}

KForm ContraConnection::derivative(const KForm& alpha, const KForm& sigma) const {
  if (alpha.degree() != 1) throw PreconditionError("derivative direction must be a 1-form");
  if (alpha.chart() != chart() || sigma.chart() != chart())
    throw PreconditionError("derivative across charts");
  KForm out(chart(), sigma.degree());
  for (const auto& t : terms_) {
    const VectorField& ui = setup_.field(t.i);
    const VectorField& uj = setup_.field(t.j);
    MultiPoly ai = pairing(alpha, ui);
    MultiPoly aj = pairing(alpha, uj);
    if (!ai.is_zero()) out += lie_derivative(uj, sigma).scaled_by(ai * t.coeff);
    if (!aj.is_zero()) out -= lie_derivative(ui, sigma).scaled_by(aj * t.coeff);
  }
  return out;
}

MultiPoly ContraConnection::derivative(const KForm& alpha, const MultiPoly& f) const {
  KForm d = derivative(alpha, KForm::from_function(chart(), f));
  return d.is_zero() ? chart().zero() : d.comps().begin()->second;
}

KForm ContraConnection::torsion(const KForm& alpha, const KForm& beta) const {
  KForm out = derivative(alpha, beta);
  out -= derivative(beta, alpha);
  out -= koszul_bracket(pi_, alpha, beta);
  return out;
}

KForm ContraConnection::curvature(const KForm& alpha, const KForm& beta,
                                  const KForm& gamma) const {
  KForm out = derivative(alpha, derivative(beta, gamma));
  out -= derivative(beta, derivative(alpha, gamma));
  out -= derivative(koszul_bracket(pi_, alpha, beta), gamma);
  return out;
}

ParallelVerdict is_parallel(const ContraConnection& c, const KForm& sigma, Freeness freeness) {
  ParallelVerdict v;
  if (freeness == Freeness::yes) {
    v.used_lie_criterion = true;
    for (std::size_t a = 0; a < c.image_fields().size(); ++a)
      if (!lie_derivative(c.image_fields()[a], sigma).is_zero()) {
        v.parallel = false;
        v.witness = static_cast<int>(a);
        return v;
      }
    return v;
  }
  for (int l = 0; l < c.chart().dim(); ++l)
    if (!c.derivative(KForm::d_coord(c.chart(), l), sigma).is_zero()) {
      v.parallel = false;
      v.witness = l;
      return v;
    }
  return v;
}

KForm metacurvature(const ContraConnection& c, const KForm& alpha, const KForm& beta,
                    const KForm& gamma, Freeness freeness) {
  if (alpha.degree() != 1) throw PreconditionError("metacurvature slots take 1-forms");
  if (!is_parallel(c, alpha, freeness).parallel)
    throw PreconditionError("metacurvature needs a parallel first argument");
  return -c.derivative(beta, c.derivative(gamma, exterior_d(alpha)));
}

KForm gbracket(const ContraConnection& c, const MultiPoly& f, const KForm& sigma) {
  return c.derivative(exterior_d(c.chart(), f), sigma);
}

KForm gbracket(const ContraConnection& c, const KForm& alpha, const KForm& beta,
               Freeness freeness) {
  if (alpha.degree() != 1 || beta.degree() != 1)
    throw PreconditionError("form bracket takes 1-forms");
  if (is_parallel(c, alpha, freeness).parallel)
    return -c.derivative(beta, exterior_d(alpha));
  if (is_parallel(c, beta, freeness).parallel)
    return -c.derivative(alpha, exterior_d(beta));
  throw PreconditionError("form bracket needs a parallel argument");
}

KillingVerdict killing_check(const ActionSetup& a, const CoMetric& g) {
  KillingVerdict v;
  for (int f = 0; f < a.algebra().dim(); ++f) {
    auto lg = lie_derivative_cometric(a.field(f), g);
    for (int i = 0; i < a.chart().dim(); ++i)
      for (int j = i; j < a.chart().dim(); ++j)
        if (!lg[i][j].is_zero()) {
          v.ok = false;
          v.field = f;
          v.entry = {i, j};
          v.residual = std::move(lg[i][j]);
          return v;
        }
  }
  return v;
}

namespace {

MultiPoly poly_matrix_det(const std::vector<std::vector<MultiPoly>>& m, const Chart& chart) {
  const int n = static_cast<int>(m.size());
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
    MultiPoly term = m[0][c] * poly_matrix_det(minor, chart);
    acc += c % 2 == 0 ? term : -term;
  }
  return acc;
}

}  // namespace

MetricContraConnection::MetricContraConnection(CoMetric g, PoissonBivector pi)
    : g_(std::move(g)), pi_(std::move(pi)), det_(poly_matrix_det(g_.matrix(), g_.chart())) {
  if (g_.chart() != pi_.chart()) throw PreconditionError("co-metric and tensor chart mismatch");
  if (det_.is_zero()) throw PreconditionError("co-metric is singular");
}

KForm MetricContraConnection::derivative(const KForm& alpha, const KForm& beta) const {
  const Chart& chart = g_.chart();
  if (alpha.degree() != 1 || beta.degree() != 1)
    throw PreconditionError("metric derivative takes 1-forms");
  const int n = chart.dim();
  VectorField xa = pi_.anchor(alpha);
  VectorField xb = pi_.anchor(beta);
  MultiPoly ab = g_.inner(alpha, beta);
  KForm ab_brk = koszul_bracket(pi_, alpha, beta);
  std::vector<MultiPoly> rhs;
  rhs.reserve(n);
  for (int e = 0; e < n; ++e) {
    KForm dxe = KForm::d_coord(chart, e);
    MultiPoly acc = xa.apply(g_.inner(beta, dxe));
    acc += xb.apply(g_.inner(alpha, dxe));
    acc -= pi_.anchor(dxe).apply(ab);
    acc += g_.inner(koszul_bracket(pi_, dxe, alpha), beta);
    acc += g_.inner(koszul_bracket(pi_, dxe, beta), alpha);
    acc += g_.inner(ab_brk, dxe);
    rhs.push_back(acc.scaled(Rat(1, 2)));
  }
  // Cramer on g * delta = rhs, with exact polynomial division; a coefficient
  // outside the polynomial ring is a refusal, not an approximation.
  KForm out(chart, 1);
  for (int c = 0; c < n; ++c) {
    std::vector<std::vector<MultiPoly>> num = g_.matrix();
    for (int e = 0; e < n; ++e) num[e][c] = rhs[e];
    auto q = poly_matrix_det(num, chart).divided_exactly_by(det_);
    if (!q)
      throw PreconditionError("metric derivative coefficient is not polynomial");
    out.add_term({c}, *q);
  }
  return out;
}

HawkinsVerdict hawkins_volume_check(const ActionSetup& a, const AlgBivector& r,
                                    const MultiPoly& volume_coeff, const RatVec& cert_point) {
  const Chart& chart = a.chart();
  if (!(volume_coeff.vars() == *chart.vars()))
    throw InputError(errcode::vars, "volume coefficient on wrong chart");
  SubspaceForm s = image_form(a.algebra(), r);
  HawkinsVerdict v;
  v.unimodular = unimodular_check(a.algebra(), s);
  v.volume_ok = !volume_coeff.eval(cert_point).is_zero();
  const int m = chart.dim();
  IdxTuple top(m);
  for (int i = 0; i < m; ++i) top[i] = i;
  KForm eps(chart, m);
  eps.add_term(top, volume_coeff);
  for (int b = 0; b < s.dim(); ++b) {
    KForm le = lie_derivative(a.field_of(s.basis()[b]), eps);
    if (!le.is_zero()) {
      v.invariant = false;
      v.invariance_witness = b;
      v.invariance_residual = std::move(le);
      break;
    }
  }
  PoissonBivector pi = induced_poisson_unverified(a, r);
  KForm residue = exterior_d(interior_product(pi.as_multivector(), eps));
  if (!residue.is_zero()) {
    v.conclusion = false;
    v.conclusion_residual = std::move(residue);
  }
  return v;
}

}  // namespace ybp
