#include "torusx/text.hpp"

#include <cctype>
#include <sstream>

namespace torusx {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
      line_(line),
      column_(column) {}

namespace {

struct ParsedTerm {
  CycloNumber coeff{1};
  std::vector<std::pair<std::size_t, long>> vars;  // (index, exponent)
};

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  std::vector<ParsedTerm> parse() {
    std::vector<ParsedTerm> terms;
    skip_ws();
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      advance();
    }
    terms.push_back(term(negative));
    for (;;) {
      skip_ws();
      if (at_end()) break;
      char c = peek();
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      advance();
      terms.push_back(term(c == '-'));
    }
    return terms;
  }

 private:
  ParsedTerm term(bool negative) {
    ParsedTerm t;
    if (negative) t.coeff = CycloNumber(-1);
    factor(t);
    for (;;) {
      skip_ws();
      if (peek() != '*') break;
      advance();
      factor(t);
    }
    return t;
  }

  void factor(ParsedTerm& t) {
    skip_ws();
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = unsigned_int();
      Rational q(num);
      skip_ws();
      if (peek() == '/') {
        advance();
        skip_ws();
        auto [line, col] = position();
        Integer den = unsigned_int();
        if (den == 0) throw ParseError("zero denominator", line, col);
        q = make_rational(num, den);
      }
      t.coeff *= CycloNumber(q);
      return;
    }
    if (match_word("zeta")) {
      auto [line, col] = position();
      Integer m = unsigned_int();
      if (m == 0) throw ParseError("conductor must be positive", line, col);
      if (!m.fits_ulong_p() || m > 100000) throw ParseError("conductor too large", line, col);
      long k = 1;
      skip_ws();
      if (peek() == '^') {
        advance();
        k = signed_int();
      }
      t.coeff *= CycloNumber::root_of_unity(m.get_ui(), k);
      return;
    }
    if (c == 'x') {
      advance();
      auto [line, col] = position();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected variable index after 'x'");
      Integer idx = unsigned_int();
      if (idx == 0 || !idx.fits_ulong_p() || idx > 10000) throw ParseError("variable index out of range", line, col);
      long e = 1;
      skip_ws();
      if (peek() == '^') {
        advance();
        e = signed_int();
      }
      t.vars.emplace_back(idx.get_ui(), e);
      return;
    }
    if (at_end()) fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  long signed_int() {
    skip_ws();
    bool neg = false;
    if (peek() == '-' || peek() == '+') {
      neg = peek() == '-';
      advance();
    }
    skip_ws();
    auto [line, col] = position();
    Integer v = unsigned_int();
    if (!v.fits_slong_p()) throw ParseError("exponent too large", line, col);
    return neg ? -v.get_si() : v.get_si();
  }

  Integer unsigned_int() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      digits += peek();
      advance();
    }
    return Integer(digits);
  }

  bool match_word(std::string_view w) {
    if (s_.substr(pos_, w.size()) != w) return false;
    for (std::size_t i = 0; i < w.size(); ++i) advance();
    return true;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  std::pair<std::size_t, std::size_t> position() const { return {line_, col_}; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

std::string coefficient_text(const Rational& mag, unsigned long conductor, unsigned long k,
                             const std::string& monomial) {
  std::string zeta;
  if (k > 0) zeta = "zeta" + std::to_string(conductor) + (k > 1 ? "^" + std::to_string(k) : "");
  std::string out;
  auto join = [&](const std::string& part) {
    if (part.empty()) return;
    if (!out.empty()) out += "*";
    out += part;
  };
  if (mag != 1 || (zeta.empty() && monomial.empty())) join(to_string(mag));
  join(zeta);
  join(monomial);
  return out;
}

std::string render(const std::vector<std::pair<Rational, std::string>>& parts) {
  // parts: signed rational with the rest of the term already formatted
  std::string out;
  for (const auto& [q, body] : parts) {
    if (out.empty()) out += q < 0 ? "-" : "";
    else out += q < 0 ? " - " : " + ";
    out += body;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

LaurentPoly parse_poly(std::string_view text, std::optional<std::size_t> num_vars) {
  Parser p(text);
  auto terms = p.parse();
  std::size_t n = 0;
  for (const auto& t : terms)
    for (const auto& [i, e] : t.vars) n = std::max(n, i);
  if (num_vars) {
    if (n > *num_vars)
      throw ParseError("variable x" + std::to_string(n) + " exceeds the declared variable count", 1, 1);
    n = *num_vars;
  }
  LaurentPoly f(n);
  for (const auto& t : terms) {
    Exponent u(n, 0);
    for (const auto& [i, e] : t.vars) u[i - 1] += e;
    f.add_term(u, t.coeff);
  }
  return f;
}

CycloNumber parse_cyclo(std::string_view text) {
  LaurentPoly f = parse_poly(text, 0);
  if (f.is_zero()) return CycloNumber(0);
  return f.terms().begin()->second;
}

std::string to_string(const LaurentPoly& f) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < f.num_vars(); ++i) names.push_back("x" + std::to_string(i + 1));
  return to_string(f, names);
}

std::string to_string(const LaurentPoly& f, const std::vector<std::string>& names) {
  if (names.size() != f.num_vars()) throw std::invalid_argument("to_string: wrong number of variable names");
  std::vector<std::pair<Rational, std::string>> parts;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [u, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (u[i] != 1) mono += "^" + std::to_string(u[i]);
    }
    for (const auto& [q, k] : c.terms()) parts.emplace_back(q, coefficient_text(abs(q), c.conductor(), k, mono));
  }
  return render(parts);
}

std::string to_string(const CycloNumber& c) {
  std::vector<std::pair<Rational, std::string>> parts;
  for (const auto& [q, k] : c.terms()) parts.emplace_back(q, coefficient_text(abs(q), c.conductor(), k, ""));
  return render(parts);
}

}  // namespace torusx
