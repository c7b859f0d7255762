#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sdist {

enum class ErrorKind {
  parse,
  dimension_mismatch,
  duplicate_point,
  ambiguous_grouping,
  not_on_sphere,
  not_antipodal,
  parameter,
  unknown_name,
  overflow,
  degenerate,
  domain,
  invalid_sign,
  singular,
  no_solution,
  zero_division,
  non_integer,
  size_mismatch,
  shape,
  decomposition_failure,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure carries a kind so the CLI can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for input/usage problems (exit code 2), false for numerical ones (exit code 3).
  bool is_input_error() const noexcept;

 private:
  ErrorKind kind_;
};

}  // namespace sdist
