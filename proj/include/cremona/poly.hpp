#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cremona/scalar.hpp"

namespace cremona {

/// Exponents of x, y, z.
using Monomial = std::array<int, 3>;

/// Graded lexicographic order with x > y > z; the greatest monomial first.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = a[0] + a[1] + a[2];
    const int db = b[0] + b[1] + b[2];
    if (da != db) return da > db;
    return a > b;
  }
};

/// Homogeneous polynomial in x, y, z over cyclotomic scalars. The zero
/// polynomial keeps a nominal degree so that it can sit in a map triple.
class HomPoly {
 public:
  using TermMap = std::map<Monomial, CycScalar, MonomialOrder>;

  HomPoly() = default;
  static HomPoly zero(int degree);
  static HomPoly constant(const CycScalar& c);
  static HomPoly variable(int index);  // 0 = x, 1 = y, 2 = z
  static HomPoly monomial(const Monomial& m, const CycScalar& c);
  /// Parses the expression grammar; the result must be homogeneous.
  static HomPoly parse(std::string_view text);

  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const CycScalar& leading_coefficient() const { return terms_.begin()->second; }
  /// Coefficient of a monomial (zero when absent).
  CycScalar coefficient(const Monomial& m) const;
  /// Largest power of the given variable dividing every term.
  int valuation(int var) const;
  bool involves(int var) const;

  void add_term(const Monomial& m, const CycScalar& c);
  /// Overrides the nominal degree of a zero polynomial.
  void set_zero_degree(int degree);

  HomPoly& operator+=(const HomPoly& rhs);
  HomPoly& operator-=(const HomPoly& rhs);
  HomPoly& operator*=(const CycScalar& c);
  friend HomPoly operator+(HomPoly a, const HomPoly& b) { return a += b; }
  friend HomPoly operator-(HomPoly a, const HomPoly& b) { return a -= b; }
  friend HomPoly operator*(HomPoly a, const CycScalar& c) { return a *= c; }
  friend HomPoly operator*(const HomPoly& a, const HomPoly& b);
  HomPoly operator-() const;
  HomPoly pow(int e) const;

  /// Divides by var^k; every term must contain var^k.
  HomPoly shift_down(int var, int k) const;

  /// f(g0, g1, g2); all g must share one degree.
  HomPoly substitute(const std::array<HomPoly, 3>& g) const;
  CycScalar evaluate(const std::array<CycScalar, 3>& point) const;

  /// Scales so that the leading coefficient is 1 (no-op on zero).
  HomPoly monic() const;

  std::string to_string() const;

  friend bool operator==(const HomPoly& a, const HomPoly& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const HomPoly& a, const HomPoly& b) { return !(a == b); }

 private:
  int degree_ = 0;
  TermMap terms_;
};

/// Monic greatest common divisor of homogeneous polynomials. gcd(0, 0) = 0.
HomPoly gcd(const HomPoly& a, const HomPoly& b);
HomPoly gcd(const std::vector<HomPoly>& polys);

/// a / b when b divides a exactly, otherwise nullopt.
std::optional<HomPoly> exact_divide(const HomPoly& a, const HomPoly& b);

}  // namespace cremona
