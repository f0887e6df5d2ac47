#include "expr_parser.hpp"

#include <cctype>
#include <string>

#include "cremona/error.hpp"

namespace cremona::detail {
namespace {

constexpr int kMaxExponent = 256;

void add_into(Terms& acc, const Terms& rhs, bool negate) {
  for (const auto& [mono, coeff] : rhs) {
    auto it = acc.find(mono);
    if (it == acc.end()) {
      acc.emplace(mono, negate ? -coeff : coeff);
      continue;
    }
    it->second += negate ? -coeff : coeff;
    if (it->second.is_zero()) acc.erase(it);
  }
}

Terms multiply(const Terms& a, const Terms& b) {
  Terms out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      const Exponents m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]};
      Terms single{{m, ca * cb}};
      add_into(out, single, false);
    }
  }
  return out;
}

Terms constant(const CycScalar& c) {
  if (c.is_zero()) return {};
  return {{Exponents{0, 0, 0}, c}};
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Terms run() {
    Terms value = expr();
    skip_space();
    if (pos_ != text_.size()) error("unexpected character");
    return value;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::Parse, what + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }

  std::string integer_literal() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) error("expected integer");
    return std::string(text_.substr(start, pos_ - start));
  }

  int small_integer() {
    const std::string digits = integer_literal();
    if (digits.size() > 6) error("integer too large");
    return std::stoi(digits);
  }

  Terms expr() {
    Terms acc = term();
    while (true) {
      if (accept('+')) {
        add_into(acc, term(), false);
      } else if (accept('-')) {
        add_into(acc, term(), true);
      } else {
        return acc;
      }
    }
  }

  Terms term() {
    Terms acc = unary();
    while (true) {
      if (accept('*')) {
        acc = multiply(acc, unary());
      } else if (accept('/')) {
        const Terms den = unary();
        if (den.empty()) error("division by zero");
        if (den.size() != 1 || den.begin()->first != Exponents{0, 0, 0}) {
          error("division by a non-constant");
        }
        const CycScalar inv = den.begin()->second.inverse();
        for (auto& [mono, coeff] : acc) coeff *= inv;
      } else {
        return acc;
      }
    }
  }

  Terms unary() {
    if (accept('-')) {
      Terms v = unary();
      for (auto& [mono, coeff] : v) coeff = -coeff;
      return v;
    }
    if (accept('+')) return unary();
    return power();
  }

  Terms power() {
    Terms base = atom();
    if (!accept('^')) return base;
    const int e = small_integer();
    if (e > kMaxExponent) error("exponent too large");
    Terms result = constant(CycScalar(1L));
    for (int i = 0; i < e; ++i) result = multiply(result, base);
    return result;
  }

  Terms atom() {
    skip_space();
    if (pos_ >= text_.size()) error("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return constant(CycScalar(Rational(mpz_class(integer_literal()))));
    }
    if (c == '(') {
      ++pos_;
      Terms v = expr();
      expect(')');
      return v;
    }
    if (text_.substr(pos_, 4) == "zeta") {
      pos_ += 4;
      expect('(');
      const int n = small_integer();
      expect(')');
      if (n < 1) error("zeta index must be positive");
      if (n > conductor_cap()) {
        fail(ErrorKind::Domain, "zeta(" + std::to_string(n) + ") exceeds conductor cap " +
                                    std::to_string(conductor_cap()));
      }
      return constant(CycScalar::root_of_unity(n));
    }
    if (c == 'x' || c == 'y' || c == 'z') {
      ++pos_;
      Exponents m{0, 0, 0};
      m[static_cast<std::size_t>(c - 'x')] = 1;
      return {{m, CycScalar(1L)}};
    }
    error("unexpected character");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Terms parse_expression(std::string_view text) { return Parser(text).run(); }

}  // namespace cremona::detail
