#include "modular.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>

namespace cremona::detail {
namespace {

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;  // index = exponent

// Operands stay below 2^31, so the product fits in 64 bits.
u64 mulmod(u64 a, u64 b, u64 p) { return (a % p) * (b % p) % p; }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

struct PrimeData {
  u64 p;
  u64 root;  // primitive N-th root of unity mod p
};

// Primes p = 1 (mod n) just below 2^31, with a primitive n-th root.
std::vector<PrimeData> primes_for(int n) {
  static std::mutex mutex;
  static std::map<int, std::vector<PrimeData>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<PrimeData> out;
  const u64 step = static_cast<u64>(n);
  const auto factors = prime_factors(step);
  for (u64 p = 1 + step * ((u64{1} << 31) / step); out.size() < 4 && p > step; p -= step) {
    if (p >= (u64{1} << 31) || !is_prime(p)) continue;
    for (u64 a = 2; a < p; ++a) {
      const u64 w = powmod(a, (p - 1) / step, p);
      bool primitive = true;
      for (u64 q : factors) {
        if (powmod(w, step / q, p) == 1) primitive = false;
      }
      if (primitive) {
        out.push_back({p, w});
        break;
      }
    }
  }
  cache.emplace(n, out);
  return out;
}

std::optional<u64> reduce_rational(const Rational& q, u64 p) {
  const mpz_class pz(static_cast<unsigned long>(p));
  const mpz_class den = q.get_den() % pz;
  if (den == 0) return std::nullopt;
  mpz_class num = q.get_num() % pz;
  if (num < 0) num += pz;
  return mulmod(num.get_ui(), invmod(den.get_ui(), p), p);
}

std::optional<u64> reduce_scalar(const CycScalar& s, int n, const PrimeData& pd) {
  // zeta_c maps to root^(n/c)
  const u64 zc = powmod(pd.root, static_cast<u64>(n / s.conductor()), pd.p);
  u64 acc = 0;
  u64 power = 1;
  for (const auto& c : s.coeffs()) {
    if (sgn(c) != 0) {
      auto v = reduce_rational(c, pd.p);
      if (!v) return std::nullopt;
      acc = (acc + mulmod(*v, power, pd.p)) % pd.p;
    }
    power = mulmod(power, zc, pd.p);
  }
  return acc;
}

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly mul(const ModPoly& a, const ModPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  return r;
}

ModPoly gcd(ModPoly a, ModPoly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const u64 inv = invmod(b.back(), p);
    while (a.size() >= b.size()) {
      const u64 c = mulmod(a.back(), inv, p);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) {
        a[shift + j] = (a[shift + j] + p - mulmod(c, b[j], p)) % p;
      }
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

}  // namespace

bool certainly_coprime(const std::vector<HomPoly>& polys) {
  std::vector<const HomPoly*> nonzero;
  int n = 1;
  for (const auto& f : polys) {
    if (f.is_zero()) continue;
    if (f.degree() == 0) return true;
    nonzero.push_back(&f);
    for (const auto& [m, c] : f.terms()) n = std::lcm(n, c.conductor());
  }
  if (nonzero.size() < 2) return false;

  std::mt19937_64 rng(0x5eed);
  for (const auto& pd : primes_for(n)) {
    const u64 p = pd.p;
    for (int attempt = 0; attempt < 2; ++attempt) {
      // line x = t, y = a t + b, z = c t + d
      std::uniform_int_distribution<u64> dist(1, p - 1);
      const u64 a = dist(rng), b = dist(rng), c = dist(rng), d = dist(rng);
      ModPoly g;
      bool ok = true;
      for (const HomPoly* f : nonzero) {
        const auto deg = static_cast<std::size_t>(f->degree());
        std::vector<ModPoly> ypow{{1}}, zpow{{1}};
        for (std::size_t e = 1; e <= deg; ++e) {
          ypow.push_back(mul(ypow.back(), {b, a}, p));
          zpow.push_back(mul(zpow.back(), {d, c}, p));
        }
        ModPoly r(deg + 1, 0);
        for (const auto& [m, coeff] : f->terms()) {
          auto v = reduce_scalar(coeff, n, pd);
          if (!v) {
            ok = false;
            break;
          }
          ModPoly t = mul(ypow[static_cast<std::size_t>(m[1])], zpow[static_cast<std::size_t>(m[2])], p);
          const auto shift = static_cast<std::size_t>(m[0]);
          for (std::size_t k = 0; k < t.size(); ++k) {
            r[k + shift] = (r[k + shift] + mulmod(*v, t[k], p)) % p;
          }
        }
        // degree must survive the restriction and reduction
        if (!ok || r.back() == 0) {
          ok = false;
          break;
        }
        g = g.empty() ? r : gcd(g, r, p);
        if (g.size() == 1) return true;
      }
      if (!ok) continue;
      if (g.size() != 1) return false;
    }
  }
  return false;
}

}  // namespace cremona::detail
