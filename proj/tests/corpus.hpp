// Fixed test corpus: ten hypersurfaces with n <= 4 and at most 12 terms.
#pragma once

#include "torusx/text.hpp"

#include <optional>
#include <string>
#include <vector>

namespace corpus {

struct Entry {
  std::string text;
  std::optional<std::size_t> nvars;
  bool non_degenerate;  // hand-checked: exponent differences span Q^n
};

inline const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = {
      {"x1 + x2 - 1", std::nullopt, true},
      {"x1*x2 - 1", std::nullopt, false},
      {"x1 + x2 + x3 - 1", std::nullopt, true},
      {"x1 + 2*x2 + x3 - 1", std::nullopt, true},
      {"x1^2 + x1*x2 + x2^3 - 1", std::nullopt, true},
      {"x1*x2 - x3", std::nullopt, false},
      {"x1 + x2 + x3 + x4 - 1", std::nullopt, true},
      {"x1*x2*x3 + x1^2 + x2*x4 + x3*x4^-1 + x4 - 2", std::nullopt, true},
      {"x1 + x2 - 1", 3, false},
      {"zeta3*x1^-1 + x2^-1 + x1*x2 - 3", std::nullopt, true},
  };
  return e;
}

inline torusx::LaurentPoly poly(const Entry& e) { return torusx::parse_poly(e.text, e.nvars); }

}  // namespace corpus
