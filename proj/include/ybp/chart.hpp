#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ybp/errors.hpp"
#include "ybp/multipoly.hpp"

namespace ybp {

/// A coordinate chart: an ordered list of coordinate names shared by every
/// polynomial, field, and form living on it. Charts compare by name list.
class Chart {
 public:
  explicit Chart(std::vector<std::string> coords)
      : vars_(std::make_shared<const std::vector<std::string>>(std::move(coords))) {
    if (vars_->empty()) throw InputError(errcode::vars, "chart needs at least one coordinate");
    for (std::size_t i = 0; i < vars_->size(); ++i)
      for (std::size_t j = i + 1; j < vars_->size(); ++j)
        if ((*vars_)[i] == (*vars_)[j])
          throw InputError(errcode::vars, "duplicate coordinate '" + (*vars_)[i] + "'");
  }

  int dim() const { return static_cast<int>(vars_->size()); }
  const VarListPtr& vars() const { return vars_; }
  const std::string& coord_name(int i) const { return (*vars_)[i]; }
  int coord_index(const std::string& name) const {
    for (int i = 0; i < dim(); ++i)
      if ((*vars_)[i] == name) return i;
    return -1;
  }

  MultiPoly zero() const { return MultiPoly(vars_); }
  MultiPoly constant(const Rat& c) const { return MultiPoly::constant(vars_, c); }
  MultiPoly coord(int i) const { return MultiPoly::variable(vars_, i); }

  friend bool operator==(const Chart& a, const Chart& b) {
    return a.vars_ == b.vars_ || *a.vars_ == *b.vars_;
  }
  friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }

 private:
  VarListPtr vars_;
};

}  // namespace ybp
