#include "cremona/poly.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "cremona/error.hpp"
#include "expr_parser.hpp"
#include "modular.hpp"

namespace cremona {
namespace {

int total(const Monomial& m) { return m[0] + m[1] + m[2]; }

// ---- univariate polynomials over the scalar field (index = exponent) ----
using UPoly = std::vector<CycScalar>;

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly umul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
  }
  trim(r);
  return r;
}

// Remainder of a modulo b (b nonzero).
UPoly urem(UPoly a, const UPoly& b) {
  trim(a);
  const CycScalar lead_inv = b.back().inverse();
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const CycScalar c = a.back() * lead_inv;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!b[j].is_zero()) a[shift + j] -= c * b[j];
    }
    a.pop_back();
    trim(a);
  }
  return a;
}

// Exact quotient a / b; caller guarantees divisibility.
UPoly uquo(UPoly a, const UPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {};
  UPoly q(a.size() - b.size() + 1);
  const CycScalar lead_inv = b.back().inverse();
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const CycScalar c = a.back() * lead_inv;
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!b[j].is_zero()) a[shift + j] -= c * b[j];
    }
    a.pop_back();
    trim(a);
  }
  trim(q);
  return q;
}

UPoly umonic(UPoly p) {
  trim(p);
  if (p.empty()) return p;
  const CycScalar inv = p.back().inverse();
  for (auto& c : p) c *= inv;
  return p;
}

UPoly ugcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = urem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return umonic(a);
}

// ---- bivariate polynomials: coefficient of x^i is a univariate in y ----
using BPoly = std::vector<UPoly>;

void btrim(BPoly& p) {
  for (auto& c : p) trim(c);
  while (!p.empty() && p.back().empty()) p.pop_back();
}

UPoly content(const BPoly& p) {
  UPoly g;
  for (const auto& c : p) {
    if (c.empty()) continue;
    g = g.empty() ? umonic(c) : ugcd(g, c);
    if (g.size() == 1) break;
  }
  return g;
}

BPoly primitive_part(const BPoly& p) {
  const UPoly c = content(p);
  BPoly out;
  out.reserve(p.size());
  for (const auto& coeff : p) out.push_back(coeff.empty() ? UPoly{} : uquo(coeff, c));
  btrim(out);
  return out;
}

// Pseudo-remainder of a by b with respect to x.
BPoly prem(BPoly a, const BPoly& b) {
  const UPoly& lb = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const UPoly la = a.back();
    for (auto& c : a) c = umul(c, lb);
    for (std::size_t j = 0; j < b.size(); ++j) {
      const UPoly t = umul(la, b[j]);
      UPoly& target = a[shift + j];
      if (target.size() < t.size()) target.resize(t.size());
      for (std::size_t k = 0; k < t.size(); ++k) target[k] -= t[k];
    }
    btrim(a);
  }
  return a;
}

BPoly bgcd(BPoly a, BPoly b) {
  btrim(a);
  btrim(b);
  if (a.empty()) return primitive_part(b);
  if (b.empty()) return primitive_part(a);
  const UPoly c = ugcd(content(a), content(b));
  a = primitive_part(a);
  b = primitive_part(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty() && b.size() > 1) {
    BPoly r = prem(a, b);
    a = std::move(b);
    b = r.empty() ? BPoly{} : primitive_part(r);
  }
  // b constant in x and nonzero: a and b are coprime in x.
  if (!b.empty()) a = BPoly{UPoly{CycScalar(1L)}};
  BPoly out;
  for (const auto& coeff : a) out.push_back(umul(coeff, c));
  btrim(out);
  return out;
}

// Dehomogenize at z = 1 (the polynomial must not be divisible by z).
BPoly dehomogenize(const HomPoly& p) {
  BPoly out;
  for (const auto& [m, c] : p.terms()) {
    const auto i = static_cast<std::size_t>(m[0]);
    const auto j = static_cast<std::size_t>(m[1]);
    if (out.size() <= i) out.resize(i + 1);
    if (out[i].size() <= j) out[i].resize(j + 1);
    out[i][j] += c;
  }
  btrim(out);
  return out;
}

HomPoly homogenize(const BPoly& p) {
  int deg = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p[i].size(); ++j) {
      if (!p[i][j].is_zero()) deg = std::max(deg, static_cast<int>(i + j));
    }
  }
  HomPoly out = HomPoly::zero(deg);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p[i].size(); ++j) {
      if (p[i][j].is_zero()) continue;
      const int a = static_cast<int>(i);
      const int b = static_cast<int>(j);
      out.add_term({a, b, deg - a - b}, p[i][j]);
    }
  }
  return out;
}

std::string monomial_text(const Monomial& m) {
  std::string out;
  static constexpr char kVars[] = {'x', 'y', 'z'};
  for (int v = 0; v < 3; ++v) {
    if (m[static_cast<std::size_t>(v)] == 0) continue;
    if (!out.empty()) out += '*';
    out += kVars[v];
    if (m[static_cast<std::size_t>(v)] > 1) out += '^' + std::to_string(m[static_cast<std::size_t>(v)]);
  }
  return out;
}

}  // namespace

HomPoly HomPoly::zero(int degree) {
  if (degree < 0) fail(ErrorKind::Malformed, "negative polynomial degree");
  HomPoly p;
  p.degree_ = degree;
  return p;
}

HomPoly HomPoly::constant(const CycScalar& c) { return monomial({0, 0, 0}, c); }

HomPoly HomPoly::variable(int index) {
  Monomial m{0, 0, 0};
  m.at(static_cast<std::size_t>(index)) = 1;
  return monomial(m, CycScalar(1L));
}

HomPoly HomPoly::monomial(const Monomial& m, const CycScalar& c) {
  HomPoly p = zero(total(m));
  p.add_term(m, c);
  return p;
}

HomPoly HomPoly::parse(std::string_view text) {
  const auto terms = detail::parse_expression(text);
  if (terms.empty()) return zero(0);
  const int deg = total(terms.begin()->first);
  HomPoly p = zero(deg);
  for (const auto& [m, c] : terms) {
    if (total(m) != deg) fail(ErrorKind::Parse, "polynomial is not homogeneous: " + std::string(text));
    p.add_term(m, c);
  }
  return p;
}

CycScalar HomPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? CycScalar() : it->second;
}

int HomPoly::valuation(int var) const {
  if (terms_.empty()) return 0;
  int v = degree_;
  for (const auto& [m, c] : terms_) v = std::min(v, m[static_cast<std::size_t>(var)]);
  return v;
}

bool HomPoly::involves(int var) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [var](const auto& t) { return t.first[static_cast<std::size_t>(var)] > 0; });
}

void HomPoly::add_term(const Monomial& m, const CycScalar& c) {
  if (std::any_of(m.begin(), m.end(), [](int e) { return e < 0; })) {
    fail(ErrorKind::Malformed, "negative exponent");
  }
  if (terms_.empty() && total(m) != degree_) degree_ = total(m);
  if (total(m) != degree_) fail(ErrorKind::Malformed, "term degree differs from polynomial degree");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void HomPoly::set_zero_degree(int degree) {
  if (!terms_.empty()) fail(ErrorKind::Malformed, "cannot re-degree a nonzero polynomial");
  degree_ = degree;
}

HomPoly& HomPoly::operator+=(const HomPoly& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) {
    *this = rhs;
    return *this;
  }
  if (rhs.degree_ != degree_) fail(ErrorKind::Malformed, "adding polynomials of different degree");
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

HomPoly& HomPoly::operator-=(const HomPoly& rhs) { return *this += -rhs; }

HomPoly& HomPoly::operator*=(const CycScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

HomPoly operator*(const HomPoly& a, const HomPoly& b) {
  HomPoly out = HomPoly::zero(a.degree_ + b.degree_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      out.add_term({ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}, ca * cb);
    }
  }
  return out;
}

HomPoly HomPoly::operator-() const {
  HomPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

HomPoly HomPoly::pow(int e) const {
  if (e < 0) fail(ErrorKind::Domain, "negative polynomial power");
  HomPoly result = constant(CycScalar(1L));
  HomPoly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

HomPoly HomPoly::shift_down(int var, int k) const {
  HomPoly out = zero(degree_ - k);
  for (const auto& [m, c] : terms_) {
    Monomial n = m;
    n[static_cast<std::size_t>(var)] -= k;
    out.add_term(n, c);
  }
  return out;
}

HomPoly HomPoly::substitute(const std::array<HomPoly, 3>& g) const {
  const int gd = g[0].degree();
  if (g[1].degree() != gd || g[2].degree() != gd) {
    fail(ErrorKind::Malformed, "substituted polynomials differ in degree");
  }
  std::array<std::vector<HomPoly>, 3> powers;
  for (std::size_t v = 0; v < 3; ++v) {
    int need = 0;
    for (const auto& [m, c] : terms_) need = std::max(need, m[v]);
    powers[v].push_back(constant(CycScalar(1L)));
    for (int e = 1; e <= need; ++e) powers[v].push_back(powers[v].back() * g[v]);
  }
  HomPoly out = zero(degree_ * gd);
  for (const auto& [m, c] : terms_) {
    HomPoly t = powers[0][static_cast<std::size_t>(m[0])] * powers[1][static_cast<std::size_t>(m[1])];
    t = t * powers[2][static_cast<std::size_t>(m[2])];
    out += t * c;
  }
  if (out.is_zero()) out.set_zero_degree(degree_ * gd);
  return out;
}

CycScalar HomPoly::evaluate(const std::array<CycScalar, 3>& point) const {
  CycScalar sum;
  for (const auto& [m, c] : terms_) {
    CycScalar t = c;
    for (std::size_t v = 0; v < 3; ++v) {
      if (m[v] > 0) t *= point[v].pow(m[v]);
    }
    sum += t;
  }
  return sum;
}

HomPoly HomPoly::monic() const {
  if (is_zero() || leading_coefficient().is_one()) return *this;
  return *this * leading_coefficient().inverse();
}

std::string HomPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string coeff = c.to_string();
    bool negative = false;
    if (c.is_compound()) {
      coeff = "(" + coeff + ")";
    } else if (coeff.front() == '-') {
      negative = true;
      coeff.erase(0, 1);
    }
    const std::string mono = monomial_text(m);
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (mono.empty()) {
      out << coeff;
    } else if (coeff == "1") {
      out << mono;
    } else {
      out << coeff << '*' << mono;
    }
  }
  return out.str();
}

HomPoly gcd(const HomPoly& a, const HomPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (detail::certainly_coprime({a, b})) return HomPoly::constant(CycScalar(1L));
  const int ka = a.valuation(2);
  const int kb = b.valuation(2);
  const int k = std::min(ka, kb);
  const BPoly g = bgcd(dehomogenize(a.shift_down(2, ka)), dehomogenize(b.shift_down(2, kb)));
  HomPoly out = homogenize(g);
  if (k > 0) out = out * HomPoly::monomial({0, 0, k}, CycScalar(1L));
  return out.monic();
}

HomPoly gcd(const std::vector<HomPoly>& polys) {
  if (detail::certainly_coprime(polys)) return HomPoly::constant(CycScalar(1L));
  HomPoly g;
  bool have = false;
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    g = have ? gcd(g, p) : p.monic();
    have = true;
    if (g.degree() == 0) break;
  }
  return g;
}

std::optional<HomPoly> exact_divide(const HomPoly& a, const HomPoly& b) {
  if (b.is_zero()) fail(ErrorKind::Domain, "division by the zero polynomial");
  if (a.is_zero()) return HomPoly::zero(std::max(0, a.degree() - b.degree()));
  if (a.degree() < b.degree()) return std::nullopt;
  HomPoly rem = a;
  HomPoly quot = HomPoly::zero(a.degree() - b.degree());
  const Monomial& lb = b.leading_monomial();
  const CycScalar lc_inv = b.leading_coefficient().inverse();
  while (!rem.is_zero()) {
    const Monomial& lr = rem.leading_monomial();
    const Monomial q{lr[0] - lb[0], lr[1] - lb[1], lr[2] - lb[2]};
    if (q[0] < 0 || q[1] < 0 || q[2] < 0) return std::nullopt;
    const HomPoly t = HomPoly::monomial(q, rem.leading_coefficient() * lc_inv);
    quot += t;
    rem -= t * b;
  }
  return quot;
}

}  // namespace cremona
