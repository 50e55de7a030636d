#include "ybp/multipoly.hpp"

#include <algorithm>
#include <numeric>

#include "ybp/errors.hpp"

namespace ybp {

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
  unsigned da = std::accumulate(a.begin(), a.end(), 0u);
  unsigned db = std::accumulate(b.begin(), b.end(), 0u);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

VarListPtr MultiPoly::empty_vars() {
  static const VarListPtr e = std::make_shared<const VarList>();
  return e;
}

MultiPoly::MultiPoly(VarListPtr vars) : vars_(std::move(vars)) {
  if (!vars_) throw InputError(errcode::vars, "null variable list");
}

MultiPoly MultiPoly::constant(VarListPtr vars, const Rat& c) {
  MultiPoly p(std::move(vars));
  if (!c.is_zero()) p.terms_.emplace(Exponents(p.vars_->size(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(VarListPtr vars, const std::string& name) {
  MultiPoly p(std::move(vars));
  int idx = p.var_index(name);
  if (idx < 0) throw InputError(errcode::unknown_identifier, "unknown variable '" + name + "'");
  Exponents e(p.vars_->size(), 0);
  e[idx] = 1;
  p.terms_.emplace(std::move(e), Rat(1));
  return p;
}

MultiPoly MultiPoly::variable(VarListPtr vars, int index) {
  MultiPoly p(std::move(vars));
  if (index < 0 || index >= static_cast<int>(p.vars_->size()))
    throw InputError(errcode::vars, "variable index out of range");
  Exponents e(p.vars_->size(), 0);
  e[index] = 1;
  p.terms_.emplace(std::move(e), Rat(1));
  return p;
}

int MultiPoly::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars_->size(); ++i)
    if ((*vars_)[i] == name) return static_cast<int>(i);
  return -1;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Exponents& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
}

Rat MultiPoly::constant_value() const {
  Exponents zero(vars_->size(), 0);
  auto it = terms_.find(zero);
  return it == terms_.end() ? Rat(0) : it->second;
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  const Exponents& lead = terms_.rbegin()->first;
  return static_cast<int>(std::accumulate(lead.begin(), lead.end(), 0u));
}

void MultiPoly::check_same_vars(const MultiPoly& o) const {
  if (vars_ == o.vars_) return;
  if (*vars_ != *o.vars_)
    throw InputError(errcode::vars, "operands live over different variable lists");
}

void MultiPoly::add_term(const Exponents& e, const Rat& c) {
  if (c.is_zero()) return;
  if (e.size() != vars_->size()) throw InputError(errcode::vars, "exponent vector length mismatch");
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out(vars_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_same_vars(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_same_vars(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_same_vars(b);
  MultiPoly out(a.vars_);
  Exponents e(a.vars_->size());
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

MultiPoly MultiPoly::scaled(const Rat& c) const {
  MultiPoly out(vars_);
  if (c.is_zero()) return out;
  for (const auto& [e, coef] : terms_) out.terms_.emplace(e, coef * c);
  return out;
}

MultiPoly MultiPoly::diff(int var_index) const {
  if (var_index < 0 || var_index >= static_cast<int>(vars_->size()))
    throw InputError(errcode::vars, "derivative variable index out of range");
  MultiPoly out(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var_index] == 0) continue;
    Exponents d = e;
    d[var_index] -= 1;
    out.add_term(d, c * Rat(static_cast<long>(e[var_index])));
  }
  return out;
}

MultiPoly MultiPoly::diff(const std::string& var) const {
  int idx = var_index(var);
  if (idx < 0) throw InputError(errcode::unknown_identifier, "unknown variable '" + var + "'");
  return diff(idx);
}

Rat MultiPoly::eval(const std::vector<Rat>& point) const {
  if (point.size() != vars_->size())
    throw InputError(errcode::vars, "evaluation point has wrong arity");
  Rat total(0);
  for (const auto& [e, c] : terms_) {
    Rat term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) term *= point[i].pow(e[i]);
    total += term;
  }
  return total;
}

Rat MultiPoly::eval(const std::map<std::string, Rat>& point) const {
  std::vector<Rat> p(vars_->size());
  for (std::size_t i = 0; i < vars_->size(); ++i) {
    auto it = point.find((*vars_)[i]);
    if (it == point.end())
      throw InputError(errcode::vars, "evaluation point missing variable '" + (*vars_)[i] + "'");
    p[i] = it->second;
  }
  return eval(p);
}

std::optional<MultiPoly> MultiPoly::divided_exactly_by(const MultiPoly& d) const {
  check_same_vars(d);
  if (d.is_zero()) throw InputError(errcode::degenerate, "division by the zero polynomial");
  MultiPoly q(vars_);
  MultiPoly r = *this;
  const auto& dlead = *d.terms_.rbegin();
  while (!r.is_zero()) {
    const auto& rlead = *r.terms_.rbegin();
    Exponents e(vars_->size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (rlead.first[i] < dlead.first[i]) return std::nullopt;
      e[i] = rlead.first[i] - dlead.first[i];
    }
    // If the dividend is an exact multiple, cancelling leading terms must
    // succeed all the way down; the first non-divisible leading term ends it.
    Rat c = rlead.second / dlead.second;
    MultiPoly t(vars_);
    t.terms_.emplace(e, c);
    q += t;
    r -= t * d;
  }
  return q;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Rat& c = it->second;
    Rat mag = c.abs();
    std::string monom;
    for (std::size_t i = 0; i < it->first.size(); ++i) {
      unsigned p = it->first[i];
      if (!p) continue;
      if (!monom.empty()) monom += "*";
      monom += (*vars_)[i];
      if (p > 1) monom += "^" + std::to_string(p);
    }
    std::string term;
    if (monom.empty())
      term = mag.str();
    else if (mag == Rat(1))
      term = monom;
    else
      term = mag.str() + "*" + monom;
    if (first) {
      // A leading minus must stay inside a rational literal to keep the
      // rendering inside the expression grammar.
      if (c.sign() < 0) term = monom.empty() ? "-" + term : "-" + mag.str() + "*" + monom;
      out = term;
      first = false;
    } else {
      out += (c.sign() < 0 ? " - " : " + ") + term;
    }
  }
  return out;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  a.check_same_vars(b);
  return a.terms_ == b.terms_;
}

}  // namespace ybp
