// Text form of Laurent polynomials and cyclotomic numbers.
//
//   poly     := term (('+'|'-') term)*
//   term     := coeff ('*' factor)* | factor ('*' factor)*
//   factor   := var ('^' int)?
//   var      := 'x' index
//   coeff    := rational | rational '*' 'zeta' conductor ('^' int)? | 'zeta' conductor ('^' int)?
//   rational := int ('/' posint)?
//
// Whitespace is insignificant. The parser also accepts a leading sign and
// factors in any order; the printer emits only the strict form.
#pragma once

#include "torusx/laurent.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace torusx {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Variables are x1..xn. Without `num_vars` the count is the largest index used.
LaurentPoly parse_poly(std::string_view text, std::optional<std::size_t> num_vars = std::nullopt);

/// A variable-free expression such as "1 - zeta6" or "2/3".
CycloNumber parse_cyclo(std::string_view text);

std::string to_string(const LaurentPoly& f);
/// Same layout with caller-chosen variable names (not re-parseable in general).
std::string to_string(const LaurentPoly& f, const std::vector<std::string>& names);
std::string to_string(const CycloNumber& c);

}  // namespace torusx
