#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ybp {

/// Malformed or inconsistent input: schema violations, grammar errors,
/// shape mismatches, degenerate data. `code` is a stable machine-readable tag.
struct InputError : std::runtime_error {
  std::string code;
  InputError(std::string c, const std::string& msg)
      : std::runtime_error(msg), code(std::move(c)) {}
};

/// A mathematical precondition of an operation does not hold (e.g. a
/// connection derivative requested for a non-parallel form). Callers that
/// assemble reports turn this into a "refused" verdict instead of aborting.
struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace errcode {
inline constexpr const char* schema = "schema";
inline constexpr const char* expr = "expr";
inline constexpr const char* rational = "rational";
inline constexpr const char* unknown_identifier = "unknown_identifier";
inline constexpr const char* r_not_antisymmetric = "r_not_antisymmetric";
inline constexpr const char* vars = "vars";
inline constexpr const char* shape = "shape";
inline constexpr const char* degenerate = "degenerate";
}  // namespace errcode

}  // namespace ybp
