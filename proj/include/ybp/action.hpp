#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ybp/chart.hpp"
#include "ybp/forms.hpp"
#include "ybp/lie_algebra.hpp"

namespace ybp {

/// A Lie algebra acting on a chart by polynomial vector fields, one field per
/// basis element. Whether the assignment is a bracket morphism is evaluated
/// eagerly and stored; callers that need a genuine action gate on it.
class ActionSetup {
 public:
  struct MorphismVerdict {
    bool ok = true;
    std::array<int, 2> pair{};              // first failing basis pair (i, j)
    std::optional<VectorField> residual;    // field([u_i,u_j]) - [field_i, field_j]
  };

  ActionSetup(LieAlgebra algebra, Chart chart, std::vector<VectorField> fields);

  const LieAlgebra& algebra() const { return algebra_; }
  const Chart& chart() const { return chart_; }
  const VectorField& field(int i) const { return fields_[i]; }
  /// Linear extension: the field of sum_i x_i u_i.
  VectorField field_of(const RatVec& x) const;
  const MorphismVerdict& morphism() const { return morphism_; }

 private:
  LieAlgebra algebra_;
  Chart chart_;
  std::vector<VectorField> fields_;
  MorphismVerdict morphism_;
};

const ActionSetup::MorphismVerdict& morphism_check(const ActionSetup& a);

}  // namespace ybp
