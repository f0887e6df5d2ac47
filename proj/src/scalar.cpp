#include "cremona/scalar.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "cremona/error.hpp"
#include "cremona/linalg.hpp"
#include "expr_parser.hpp"

namespace cremona {
namespace {

std::atomic<int> g_conductor_cap{120};

using IntPoly = std::vector<long>;

// Exact division of integer polynomials (divisor monic).
IntPoly divide_monic(IntPoly num, const IntPoly& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) return {0};
  IntPoly quot(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const long c = num[k];
    quot[k - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
  }
  return quot;
}

// Per-conductor tables: Phi_n and t^k mod Phi_n for 0 <= k < n.
struct CycloField {
  int n = 1;
  int phi = 1;
  IntPoly poly;
  std::vector<IntPoly> powers;
};

std::mutex g_field_mutex;
std::map<int, std::unique_ptr<CycloField>> g_fields;

const CycloField& field(int n);

IntPoly compute_cyclotomic(int n) {
  IntPoly p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) p = divide_monic(std::move(p), field(d).poly);
  }
  return p;
}

const CycloField& field(int n) {
  {
    std::lock_guard<std::mutex> lock(g_field_mutex);
    auto it = g_fields.find(n);
    if (it != g_fields.end()) return *it->second;
  }
  // Built outside the lock: compute_cyclotomic recurses into field().
  auto f = std::make_unique<CycloField>();
  f->n = n;
  f->poly = compute_cyclotomic(n);
  f->phi = static_cast<int>(f->poly.size()) - 1;
  IntPoly cur(static_cast<std::size_t>(f->phi), 0);
  cur[0] = 1;
  f->powers.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    f->powers.push_back(cur);
    // multiply by t, then reduce the t^phi coefficient
    IntPoly next(static_cast<std::size_t>(f->phi) + 1, 0);
    for (int j = 0; j < f->phi; ++j) next[static_cast<std::size_t>(j) + 1] = cur[static_cast<std::size_t>(j)];
    const long top = next[static_cast<std::size_t>(f->phi)];
    for (int j = 0; j < f->phi; ++j) next[static_cast<std::size_t>(j)] -= top * f->poly[static_cast<std::size_t>(j)];
    next.pop_back();
    cur = std::move(next);
  }
  std::lock_guard<std::mutex> lock(g_field_mutex);
  auto [it, inserted] = g_fields.emplace(n, std::move(f));
  return *it->second;
}

int checked_lcm(int a, int b) {
  const long long l = std::lcm(static_cast<long long>(a), static_cast<long long>(b));
  if (l > conductor_cap()) {
    fail(ErrorKind::Domain, "conductor " + std::to_string(l) + " exceeds cap " +
                                std::to_string(conductor_cap()));
  }
  return static_cast<int>(l);
}

// Reduce a coefficient vector of arbitrary length modulo Phi_n.
std::vector<Rational> reduce(std::vector<Rational> v, const CycloField& f) {
  const std::size_t phi = static_cast<std::size_t>(f.phi);
  for (std::size_t k = v.size(); k-- > phi;) {
    if (sgn(v[k]) == 0) continue;
    const Rational c = v[k];
    for (std::size_t j = 0; j < phi; ++j) {
      if (f.poly[j] != 0) v[k - phi + j] -= c * f.poly[j];
    }
  }
  v.resize(phi);
  return v;
}

// Dense univariate helpers over Q used by the inversion routine.
using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// Returns (q, r) with a = q*b + r.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim(a);
  QPoly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const Rational c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    trim(a);
  }
  trim(q);
  return {q, a};
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

QPoly sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

std::string rational_text(const Rational& q) {
  return q.get_str();
}

}  // namespace

int conductor_cap() { return g_conductor_cap.load(); }

void set_conductor_cap(int cap) {
  if (cap < 1) fail(ErrorKind::Usage, "conductor cap must be positive");
  g_conductor_cap.store(cap);
}

int euler_phi(int n) {
  if (n < 1) fail(ErrorKind::Domain, "euler_phi of non-positive integer");
  return field(n).phi;
}

const std::vector<long>& cyclotomic_polynomial(int n) {
  if (n < 1) fail(ErrorKind::Domain, "cyclotomic polynomial of non-positive index");
  return field(n).poly;
}

CycScalar::CycScalar() : conductor_(1), coeffs_{Rational(0)} {}

CycScalar::CycScalar(long value) : conductor_(1), coeffs_{Rational(value)} {}

CycScalar::CycScalar(const Rational& value) : conductor_(1), coeffs_{value} {
  coeffs_[0].canonicalize();
}

CycScalar::CycScalar(int conductor, std::vector<Rational> coeffs) : conductor_(conductor) {
  if (conductor < 1) fail(ErrorKind::Domain, "conductor must be positive");
  if (conductor > conductor_cap()) {
    fail(ErrorKind::Domain, "conductor " + std::to_string(conductor) + " exceeds cap " +
                                std::to_string(conductor_cap()));
  }
  for (auto& c : coeffs) c.canonicalize();
  coeffs_ = reduce(std::move(coeffs), field(conductor));
}

CycScalar CycScalar::root_of_unity(int n) {
  if (n < 1) fail(ErrorKind::Domain, "root_of_unity needs n >= 1");
  if (n == 1) return CycScalar(1L);
  const auto& f = field(n);
  std::vector<Rational> c(static_cast<std::size_t>(f.phi), Rational(0));
  if (f.phi == 1) {
    // n == 2: t = -1 after reduction modulo t + 1
    return CycScalar(n, {Rational(0), Rational(1)}).canonical();
  }
  c[1] = 1;
  return CycScalar(n, std::move(c)).canonical();
}

bool CycScalar::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

bool CycScalar::is_one() const {
  if (coeffs_.empty() || coeffs_[0] != 1) return false;
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

bool CycScalar::is_rational() const { return canonical().conductor() == 1; }

CycScalar CycScalar::lift(int m) const {
  if (m < 1 || m % conductor_ != 0) {
    fail(ErrorKind::Domain, "cannot lift conductor " + std::to_string(conductor_) + " to " +
                                std::to_string(m));
  }
  if (m == conductor_) return *this;
  if (m > conductor_cap()) {
    fail(ErrorKind::Domain, "conductor " + std::to_string(m) + " exceeds cap " +
                                std::to_string(conductor_cap()));
  }
  const auto& f = field(m);
  const int step = m / conductor_;
  std::vector<Rational> out(static_cast<std::size_t>(f.phi), Rational(0));
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (sgn(coeffs_[j]) == 0) continue;
    const auto& pw = f.powers[(j * static_cast<std::size_t>(step)) % static_cast<std::size_t>(m)];
    for (std::size_t k = 0; k < pw.size(); ++k) {
      if (pw[k] != 0) out[k] += coeffs_[j] * pw[k];
    }
  }
  CycScalar r;
  r.conductor_ = m;
  r.coeffs_ = std::move(out);
  return r;
}

CycScalar CycScalar::canonical() const {
  if (conductor_ == 1) return *this;
  const auto& big = field(conductor_);
  const std::size_t rows = static_cast<std::size_t>(big.phi);
  for (int d = 1; d < conductor_; ++d) {
    if (conductor_ % d != 0 || d % 4 == 2) continue;
    const auto& small = field(d);
    const std::size_t cols = static_cast<std::size_t>(small.phi);
    const int step = conductor_ / d;
    // Columns: zeta_d^j written over conductor N; augmented by this value.
    Matrix<Rational> system(rows, cols + 1);
    for (std::size_t j = 0; j < cols; ++j) {
      const auto& pw = big.powers[(j * static_cast<std::size_t>(step)) % static_cast<std::size_t>(conductor_)];
      for (std::size_t k = 0; k < rows; ++k) system(k, j) = pw[k];
    }
    for (std::size_t k = 0; k < rows; ++k) system(k, cols) = coeffs_[k];
    auto sol = solve_augmented(system);
    if (!sol) continue;
    CycScalar r;
    r.conductor_ = d;
    r.coeffs_ = std::move(*sol);
    return r;
  }
  return *this;
}

CycScalar CycScalar::inverse() const {
  if (is_zero()) fail(ErrorKind::Domain, "inverse of zero");
  if (conductor_ == 1) return CycScalar(Rational(1) / coeffs_[0]);
  const auto& f = field(conductor_);
  // Extended Euclid: track s with s*a == r (mod Phi).
  QPoly r0(f.poly.begin(), f.poly.end());
  QPoly r1(coeffs_.begin(), coeffs_.end());
  trim(r1);
  QPoly s0;
  QPoly s1{Rational(1)};
  while (r1.size() > 1) {
    auto [q, rem] = divmod(r0, r1);
    QPoly s2 = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant since Phi is irreducible.
  const Rational c = r1[0];
  for (auto& v : s1) v /= c;
  return CycScalar(conductor_, std::move(s1));
}

CycScalar CycScalar::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  CycScalar result(1L);
  CycScalar base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

CycScalar& CycScalar::operator+=(const CycScalar& rhs) {
  if (conductor_ == rhs.conductor_) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
  }
  const int m = checked_lcm(conductor_, rhs.conductor_);
  *this = lift(m);
  const CycScalar other = rhs.lift(m);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& rhs) { return *this += -rhs; }

CycScalar& CycScalar::operator*=(const CycScalar& rhs) {
  if (conductor_ == 1 && rhs.conductor_ == 1) {
    coeffs_[0] *= rhs.coeffs_[0];
    return *this;
  }
  const int m = checked_lcm(conductor_, rhs.conductor_);
  const CycScalar a = lift(m);
  const CycScalar b = rhs.lift(m);
  const auto& f = field(m);
  std::vector<Rational> prod(2 * a.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (sgn(b.coeffs_[j]) == 0) continue;
      prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  conductor_ = m;
  coeffs_ = reduce(std::move(prod), f);
  return *this;
}

CycScalar& CycScalar::operator/=(const CycScalar& rhs) { return *this *= rhs.inverse(); }

CycScalar CycScalar::operator-() const {
  CycScalar r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

bool operator==(const CycScalar& a, const CycScalar& b) {
  if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
  const long long m = std::lcm(static_cast<long long>(a.conductor_), static_cast<long long>(b.conductor_));
  if (m > conductor_cap()) return a.canonical().to_string() == b.canonical().to_string();
  return a.lift(static_cast<int>(m)).coeffs_ == b.lift(static_cast<int>(m)).coeffs_;
}

std::string CycScalar::to_string() const {
  const CycScalar c = canonical();
  std::ostringstream out;
  bool first = true;
  for (std::size_t j = 0; j < c.coeffs_.size(); ++j) {
    Rational q = c.coeffs_[j];
    if (sgn(q) == 0) continue;
    const bool negative = sgn(q) < 0;
    if (negative) q = -q;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (j == 0) {
      out << rational_text(q);
      continue;
    }
    if (q != 1) out << rational_text(q) << '*';
    out << "zeta(" << c.conductor_ << ')';
    if (j > 1) out << '^' << j;
  }
  if (first) return "0";
  return out.str();
}

bool CycScalar::is_compound() const {
  const CycScalar c = canonical();
  int terms = 0;
  for (const auto& q : c.coeffs_) {
    if (sgn(q) != 0) ++terms;
  }
  return terms > 1;
}

CycScalar CycScalar::parse(std::string_view text) {
  const auto terms = detail::parse_expression(text);
  CycScalar value;
  for (const auto& [mono, coeff] : terms) {
    if (mono != detail::Exponents{0, 0, 0}) {
      fail(ErrorKind::Parse, "scalar expression contains a variable: " + std::string(text));
    }
    value = coeff;
  }
  return value;
}

}  // namespace cremona
