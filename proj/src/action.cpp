#include "ybp/action.hpp"

#include <utility>

#include "ybp/errors.hpp"

namespace ybp {

ActionSetup::ActionSetup(LieAlgebra algebra, Chart chart, std::vector<VectorField> fields)
    : algebra_(std::move(algebra)), chart_(std::move(chart)), fields_(std::move(fields)) {
  if (static_cast<int>(fields_.size()) != algebra_.dim())
    throw InputError(errcode::shape, "need one field per basis element");
  for (const auto& f : fields_)
    if (f.chart() != chart_) throw InputError(errcode::vars, "action field on wrong chart");
  const int n = algebra_.dim();
  for (int i = 0; i < n && morphism_.ok; ++i)
    for (int j = i + 1; j < n && morphism_.ok; ++j) {
      VectorField res = field_of(algebra_.bracket(i, j)) - vf_bracket(fields_[i], fields_[j]);
      if (!res.is_zero()) {
        morphism_.ok = false;
        morphism_.pair = {i, j};
        morphism_.residual = std::move(res);
      }
    }
}

VectorField ActionSetup::field_of(const RatVec& x) const {
  if (static_cast<int>(x.size()) != algebra_.dim())
    throw InputError(errcode::shape, "coefficient vector length differs from algebra");
  VectorField out(chart_);
  for (int i = 0; i < algebra_.dim(); ++i) {
    if (x[i].is_zero()) continue;
    out = out + fields_[i].scaled_by(chart_.constant(x[i]));
  }
  return out;
}

const ActionSetup::MorphismVerdict& morphism_check(const ActionSetup& a) { return a.morphism(); }

}  // namespace ybp
