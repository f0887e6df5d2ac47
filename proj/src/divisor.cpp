#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <string>

#include "cremona/error.hpp"
#include "cremona/piclattice.hpp"

namespace cremona {
namespace {

void require_same_rank(const DivisorClass& a, const DivisorClass& b) {
  if (a.rank() != b.rank()) {
    fail(ErrorKind::RankMismatch,
         "classes of rank " + std::to_string(a.rank()) + " and " + std::to_string(b.rank()));
  }
}

std::string coefficient_prefix(int k, bool leading) {
  std::string out;
  if (k < 0) {
    out = "-";
  } else if (!leading) {
    out = "+";
  }
  const int mag = std::abs(k);
  if (mag != 1) out += std::to_string(mag);
  return out;
}

// Vector of (-e) for positive degree and e for degree zero, compared
// lexicographically descending.
std::vector<int> order_key(const DivisorClass& c) {
  std::vector<int> key = c.e();
  if (c.ell() != 0) {
    for (auto& v : key) v = -v;
  }
  return key;
}

}  // namespace

DivisorClass DivisorClass::line(int r) { return DivisorClass(1, std::vector<int>(static_cast<std::size_t>(r), 0)); }

DivisorClass DivisorClass::exceptional(int r, int i) {
  if (i < 1 || i > r) fail(ErrorKind::InvalidClass, "exceptional index out of range: E" + std::to_string(i));
  std::vector<int> e(static_cast<std::size_t>(r), 0);
  e[static_cast<std::size_t>(i - 1)] = 1;
  return DivisorClass(0, std::move(e));
}

DivisorClass DivisorClass::canonical(int r) {
  return DivisorClass(-3, std::vector<int>(static_cast<std::size_t>(r), 1));
}

DivisorClass DivisorClass::from_vector(const std::vector<int>& v) {
  if (v.empty()) fail(ErrorKind::InvalidClass, "empty class vector");
  return DivisorClass(v[0], std::vector<int>(v.begin() + 1, v.end()));
}

std::vector<int> DivisorClass::to_vector() const {
  std::vector<int> v{ell_};
  v.insert(v.end(), e_.begin(), e_.end());
  return v;
}

DivisorClass DivisorClass::parse(std::string_view text, int r) {
  DivisorClass acc(0, std::vector<int>(static_cast<std::size_t>(r), 0));
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto bad = [&](const std::string& why) -> DivisorClass {
    fail(ErrorKind::Parse, why + " in class expression \"" + std::string(text) + "\"");
  };
  auto read_digits = [&] {
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    return std::string(text.substr(start, pos - start));
  };
  skip();
  if (pos == text.size()) return bad("empty expression");
  if (text.substr(pos) == "0") return acc;
  bool first = true;
  while (true) {
    skip();
    if (pos == text.size()) break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      return bad("expected '+' or '-'");
    }
    first = false;
    const std::string coeff_digits = read_digits();
    const int coeff = sign * (coeff_digits.empty() ? 1 : std::stoi(coeff_digits));
    if (pos < text.size() && text[pos] == '*') ++pos;
    if (pos == text.size()) return bad("missing symbol");
    const char sym = text[pos++];
    DivisorClass term;
    if (sym == 'L') {
      term = line(r);
    } else if (sym == 'K') {
      term = canonical(r);
    } else if (sym == 'E') {
      const std::string idx = read_digits();
      if (idx.empty()) return bad("missing index after E");
      term = exceptional(r, std::stoi(idx));
    } else if (sym == 'D') {
      if (pos + 2 > text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])) ||
          !std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
        return bad("D needs two point indices");
      }
      const int i = text[pos] - '0';
      const int j = text[pos + 1] - '0';
      pos += 2;
      if (i == j) return bad("D needs two distinct indices");
      term = line(r) - exceptional(r, i) - exceptional(r, j);
    } else {
      return bad(std::string("unknown symbol '") + sym + "'");
    }
    acc += coeff * term;
  }
  return acc;
}

std::string DivisorClass::label() const {
  int negatives = 0;
  int nonzero = 0;
  for (int v : e_) {
    if (v != 0) ++nonzero;
    if (v == -1) ++negatives;
  }
  if (ell_ == 1 && nonzero == 2 && negatives == 2) {
    std::string out = "D";
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (e_[i] != 0) out += std::to_string(i + 1);
    }
    if (e_.size() < 10) return out;
  }
  std::string out;
  if (ell_ != 0) out = coefficient_prefix(ell_, true) + "L";
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] == 0) continue;
    out += coefficient_prefix(e_[i], out.empty()) + "E" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& rhs) {
  require_same_rank(*this, rhs);
  ell_ += rhs.ell_;
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += rhs.e_[i];
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& rhs) { return *this += -rhs; }

DivisorClass operator*(int k, DivisorClass a) {
  a.ell_ *= k;
  for (auto& v : a.e_) v *= k;
  return a;
}

bool class_less(const DivisorClass& a, const DivisorClass& b) {
  if (a.ell() != b.ell()) return a.ell() < b.ell();
  return order_key(a) > order_key(b);
}

int intersect(const DivisorClass& a, const DivisorClass& b) {
  require_same_rank(a, b);
  int v = a.ell() * b.ell();
  for (std::size_t i = 0; i < a.e().size(); ++i) v -= a.e()[i] * b.e()[i];
  return v;
}

int self_intersection(const DivisorClass& c) { return intersect(c, c); }

int arithmetic_genus(const DivisorClass& c) {
  const int v = intersect(c, c + DivisorClass::canonical(c.rank()));
  if (v % 2 != 0) fail(ErrorKind::InvalidClass, "odd C.(C+K) for class " + c.label());
  return v / 2 + 1;
}

namespace {

// All a in Z_{>=0}^r with sum a = s1 and sum a^2 = s2.
void enumerate_multiplicities(int r, int s1, int s2, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  const int idx = static_cast<int>(cur.size());
  if (idx == r) {
    if (s1 == 0 && s2 == 0) out.push_back(cur);
    return;
  }
  const int left = r - idx;
  // Remaining entries must satisfy s1^2 <= left * s2 and s1 <= s2.
  if (s1 < 0 || s2 < 0 || s1 > s2 || s1 * s1 > left * s2) return;
  for (int a = 0; a * a <= s2 && a <= s1; ++a) {
    cur.push_back(a);
    enumerate_multiplicities(r, s1 - a, s2 - a * a, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<DivisorClass> negative_candidates_unchecked(int r, int min_self) {
  if (r < 1 || r > 8) fail(ErrorKind::Unsupported, "rank " + std::to_string(r) + " outside 1..8");
  std::vector<DivisorClass> out;
  // Degree zero: sum e^2 + sum e = 2 with -sum e^2 = C^2 in [min_self, -1].
  {
    std::vector<int> e(static_cast<std::size_t>(r), -2);
    while (true) {
      int s2 = 0;
      int s1 = 0;
      for (int v : e) {
        s2 += v * v;
        s1 += v;
      }
      if (s2 + s1 == 2 && -s2 >= min_self && -s2 <= -1) out.emplace_back(0, e);
      std::size_t k = 0;
      while (k < e.size() && e[k] == 1) e[k++] = -2;
      if (k == e.size()) break;
      ++e[k];
    }
  }
  // Degree m > 0, t = -C^2: sum a^2 = m^2 + t, sum a = 3m + t - 2.
  for (int t = 1; t <= -min_self; ++t) {
    for (int m = 1; m <= 64; ++m) {
      const long s1 = 3L * m + t - 2;
      const long s2 = static_cast<long>(m) * m + t;
      if (s1 * s1 > r * s2) continue;  // Cauchy-Schwarz
      std::vector<int> cur;
      std::vector<std::vector<int>> found;
      enumerate_multiplicities(r, static_cast<int>(s1), static_cast<int>(s2), cur, found);
      for (auto& a : found) {
        for (auto& v : a) v = -v;
        out.emplace_back(m, std::move(a));
      }
    }
  }
  std::sort(out.begin(), out.end(), class_less);
  return out;
}

std::vector<DivisorClass> negative_candidates(int r, int min_self) {
  if (min_self > -1 || min_self < -3) {
    fail(ErrorKind::Usage, "min_self must be -1, -2 or -3");
  }
  return negative_candidates_unchecked(r, min_self);
}

}  // namespace cremona
