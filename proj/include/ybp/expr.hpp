#pragma once

#include <string>

#include "ybp/multipoly.hpp"

namespace ybp {

/// Parses the polynomial expression grammar:
///
///   expr     := term (('+' | '-') term)*
///   term     := factor ('*' factor)*
///   factor   := base ('^' nonneg-int)?
///   base     := rational | identifier | '(' expr ')'
///   rational := int ('/' positive-int)?
///
/// Whitespace is ignored; there is no implicit multiplication ("2x" and
/// "x y" are errors). Identifiers must appear in `vars`. Errors carry the
/// 0-based character position.
MultiPoly parse_poly(const std::string& text, VarListPtr vars);

}  // namespace ybp
