// Recursive-descent parser for polynomial expressions and endomorphism tuples.

#include <cctype>

#include "ddeg/errors.hpp"
#include "ddeg/polynomial.hpp"

namespace ddeg {

namespace {

class Parser {
 public:
  Parser(const std::string& s, bool univariate) : s_(s), uni_(univariate) {}

  // Parses one expression; stops before ',' or ')' at top level.
  Polynomial expression(std::size_t arity) {
    arity_ = arity;
    return expr();
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip();
    return pos_ >= s_.size();
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }
  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }

  // First pass: find the largest variable index without building polynomials.
  std::size_t scan_max_var() {
    std::size_t m = 0;
    for (std::size_t i = 0; i < s_.size(); ++i) {
      if (s_[i] != 'x') continue;
      std::size_t j = i + 1;
      std::size_t v = 0;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) v = v * 10 + (s_[j++] - '0');
      if (j == i + 1) v = 1;
      m = std::max(m, v);
    }
    return m;
  }

 private:
  Polynomial expr() {
    Polynomial acc(arity_);
    bool first = true;
    while (true) {
      char c = peek();
      int sign = 1;
      if (c == '+' || c == '-') {
        ++pos_;
        sign = c == '-' ? -1 : 1;
      } else if (!first) {
        break;
      }
      Polynomial t = term();
      acc = sign > 0 ? acc + t : acc - t;
      first = false;
    }
    return acc;
  }

  bool starts_factor(char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == 'x' || c == '(' || c == '.'; }

  Polynomial term() {
    Polynomial acc = unary();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = mul(acc, unary(), budget_);
      } else if (c == '/') {
        std::size_t at = pos_;
        ++pos_;
        Polynomial d = unary();
        if (!d.is_constant() || d.is_zero()) throw ParseError("division only by a non-zero constant", at);
        acc = mpq_class(1 / d.constant_term()) * acc;
      } else if (starts_factor(c)) {
        acc = mul(acc, unary(), budget_);
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial unary() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (peek() == '^') {
      ++pos_;
      skip();
      std::size_t start = pos_;
      unsigned long e = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        e = e * 10 + static_cast<unsigned long>(s_[pos_++] - '0');
        if (e > 0xFFFFFFFFUL) throw ParseError("exponent too large", start);
      }
      if (pos_ == start) throw ParseError("expected non-negative integer exponent", start);
      return pow(base, static_cast<unsigned>(e), budget_);
    }
    return base;
  }

  Polynomial atom() {
    char c = peek();
    std::size_t start = pos_;
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      expect(')');
      return p;
    }
    if (c == 'x') {
      ++pos_;
      std::size_t v = 0;
      bool digits = false;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        v = v * 10 + static_cast<std::size_t>(s_[pos_++] - '0');
        digits = true;
      }
      if (!digits) {
        if (!uni_) throw ParseError("variable must be written x1, x2, ...", start);
        v = 1;
      } else if (uni_ && v != 1) {
        throw ParseError("univariate input uses the single variable x", start);
      }
      if (v == 0) throw ParseError("variables are numbered from 1", start);
      if (v > arity_) throw ParseError("variable x" + std::to_string(v) + " exceeds arity " + std::to_string(arity_), start);
      return Polynomial::variable(arity_, v - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::string num;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) num += s_[pos_++];
      mpq_class val(num.empty() ? mpz_class(0) : mpz_class(num));
      if (pos_ < s_.size() && s_[pos_] == '.') {
        ++pos_;
        std::string frac;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) frac += s_[pos_++];
        if (frac.empty() && num.empty()) throw ParseError("malformed number", start);
        if (!frac.empty()) {
          mpz_class den;
          mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
          val += mpq_class(mpz_class(frac), den);
        }
      }
      val.canonicalize();
      return Polynomial::constant(arity_, val);
    }
    if (c == '\0') throw ParseError("unexpected end of input", pos_);
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  const std::string& s_;
  bool uni_;
  std::size_t pos_ = 0;
  std::size_t arity_ = 1;
  Budget budget_{};
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, std::size_t arity) {
  Parser p(text, false);
  std::size_t a = arity ? arity : std::max<std::size_t>(1, p.scan_max_var());
  Polynomial r = p.expression(a);
  if (!p.at_end()) throw ParseError("trailing input", p.pos());
  return r;
}

Endomorphism parse_endomorphism(const std::string& text) {
  Parser p(text, false);
  if (p.peek() != '(') throw ParseError("endomorphism must be a parenthesized list", p.pos());
  // count top-level components
  std::size_t depth = 0, n = 1;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 1) ++n;
  }
  p.expect('(');
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) p.expect(',');
    if (p.peek() == ',' || p.peek() == ')') throw ParseError("empty component", p.pos());
    comps.push_back(p.expression(n));
  }
  p.expect(')');
  if (!p.at_end()) throw ParseError("trailing input", p.pos());
  return Endomorphism(std::move(comps));
}

QPoly parse_univariate(const std::string& text) {
  Parser p(text, true);
  Polynomial r = p.expression(1);
  if (!p.at_end()) throw ParseError("trailing input", p.pos());
  std::vector<mpq_class> c;
  for (const auto& t : r.terms()) {
    std::size_t e = t.mono[0];
    if (c.size() <= e) c.resize(e + 1, mpq_class(0));
    c[e] += t.coeff;
  }
  return QPoly(std::move(c));
}

}  // namespace ddeg
