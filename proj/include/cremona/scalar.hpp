#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cremona {

using Rational = mpq_class;

/// Largest conductor any arithmetic result may reach. Defaults to 120.
int conductor_cap();
void set_conductor_cap(int cap);

/// Euler totient and the integer coefficients of the n-th cyclotomic
/// polynomial, lowest degree first (length phi(n) + 1).
int euler_phi(int n);
const std::vector<long>& cyclotomic_polynomial(int n);

/// An exact element of Q(zeta_N), stored as a residue of Q[t] modulo the N-th
/// cyclotomic polynomial with t standing for zeta_N = exp(2 pi i / N).
///
/// The coefficient vector always has length phi(N), so two values over the
/// same conductor are equal iff their vectors are. Values over different
/// conductors are compared after lifting both to the lcm. Arithmetic results
/// live over the lcm of the operand conductors; canonical() moves a value to
/// the smallest conductor whose field contains it and is what serialization
/// uses.
class CycScalar {
 public:
  CycScalar();  // zero over conductor 1
  CycScalar(long value);  // NOLINT(google-explicit-constructor)
  CycScalar(const Rational& value);  // NOLINT(google-explicit-constructor)
  CycScalar(int conductor, std::vector<Rational> coeffs);

  /// zeta_n in canonical form; zeta_2 is -1 over conductor 1.
  static CycScalar root_of_unity(int n);

  int conductor() const { return conductor_; }
  std::span<const Rational> coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;  // lies in Q (checked canonically)

  /// Same element over conductor m; m must be a multiple of conductor().
  CycScalar lift(int m) const;
  /// Same element over the minimal conductor (never congruent to 2 mod 4).
  CycScalar canonical() const;

  CycScalar inverse() const;
  CycScalar pow(long exponent) const;

  CycScalar& operator+=(const CycScalar& rhs);
  CycScalar& operator-=(const CycScalar& rhs);
  CycScalar& operator*=(const CycScalar& rhs);
  CycScalar& operator/=(const CycScalar& rhs);

  friend CycScalar operator+(CycScalar lhs, const CycScalar& rhs) { return lhs += rhs; }
  friend CycScalar operator-(CycScalar lhs, const CycScalar& rhs) { return lhs -= rhs; }
  friend CycScalar operator*(CycScalar lhs, const CycScalar& rhs) { return lhs *= rhs; }
  friend CycScalar operator/(CycScalar lhs, const CycScalar& rhs) { return lhs /= rhs; }
  CycScalar operator-() const;

  friend bool operator==(const CycScalar& a, const CycScalar& b);
  friend bool operator!=(const CycScalar& a, const CycScalar& b) { return !(a == b); }

  /// Text form in the scalar grammar, e.g. "1/2*zeta(8)^3 - 1". Canonical:
  /// equal elements produce identical strings.
  std::string to_string() const;
  /// True when to_string() needs parentheses to be used as a factor.
  bool is_compound() const;

  static CycScalar parse(std::string_view text);

 private:
  int conductor_ = 1;
  std::vector<Rational> coeffs_;
};

}  // namespace cremona
