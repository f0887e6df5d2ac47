#include <algorithm>
#include <mutex>
#include <set>

#include "cremona/error.hpp"
#include "cremona/linalg.hpp"
#include "cremona/piclattice.hpp"

namespace cremona {

struct SurfaceModel::Cache {
  std::once_flag once;
  std::vector<DivisorClass> curves;
};

namespace {

constexpr int kMaxCurveRank = 5;

CycScalar dot(const std::array<CycScalar, 3>& a, const std::array<CycScalar, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

std::array<CycScalar, 3> cross(const std::array<CycScalar, 3>& a, const std::array<CycScalar, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

bool is_zero_vec(const std::array<CycScalar, 3>& v) {
  return v[0].is_zero() && v[1].is_zero() && v[2].is_zero();
}

// Monomials of degree m in a fixed order.
std::vector<Monomial> monomials(int m) {
  std::vector<Monomial> out;
  for (int i = m; i >= 0; --i) {
    for (int j = m - i; j >= 0; --j) out.push_back({i, j, m - i - j});
  }
  return out;
}

CycScalar monomial_value(const Monomial& mono, const std::array<CycScalar, 3>& p) {
  CycScalar v(1L);
  for (std::size_t k = 0; k < 3; ++k) {
    if (mono[k] > 0) v *= p[k].pow(mono[k]);
  }
  return v;
}

// Derivative of the monomial at p in direction q.
CycScalar monomial_derivative(const Monomial& mono, const std::array<CycScalar, 3>& p,
                              const std::array<CycScalar, 3>& q) {
  CycScalar sum;
  for (std::size_t v = 0; v < 3; ++v) {
    if (mono[v] == 0 || q[v].is_zero()) continue;
    Monomial lower = mono;
    --lower[v];
    sum += CycScalar(static_cast<long>(mono[v])) * monomial_value(lower, p) * q[v];
  }
  return sum;
}

// A point on the line through p (other than p) for the direction line l.
std::array<CycScalar, 3> second_point(const std::array<CycScalar, 3>& p, const std::array<CycScalar, 3>& l) {
  for (std::size_t k = 0; k < 3; ++k) {
    std::array<CycScalar, 3> unit{};
    unit[k] = CycScalar(1L);
    auto q = cross(l, unit);
    if (!is_zero_vec(q) && !is_zero_vec(cross(q, p))) return q;
  }
  fail(ErrorKind::Malformed, "degenerate direction line");
}

CycScalar conic_determinant(const std::vector<CycScalar>& c) {
  // order: x^2, xy, xz, y^2, yz, z^2
  const CycScalar half(Rational(1, 2));
  const CycScalar a = c[0], b = c[1] * half, d = c[2] * half;
  const CycScalar e = c[3], f = c[4] * half, g = c[5];
  return a * (e * g - f * f) - b * (b * g - f * d) + d * (b * f - e * d);
}

}  // namespace

SurfaceModel::SurfaceModel(std::vector<BlowupPoint> points)
    : rank_(static_cast<int>(points.size())), has_coordinates_(true), points_(std::move(points)),
      cache_(std::make_shared<Cache>()) {
  if (rank_ > 8) fail(ErrorKind::Unsupported, "more than 8 blown-up points");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& pt = points_[i];
    if (pt.is_proper()) {
      for (std::size_t j = 0; j < i; ++j) {
        if (points_[j].is_proper() && *points_[j].proper == *pt.proper) {
          fail(ErrorKind::Malformed, "points " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                                         " coincide");
        }
      }
      continue;
    }
    if (pt.parent < 0 || pt.parent >= rank_ || !points_[static_cast<std::size_t>(pt.parent)].is_proper()) {
      fail(ErrorKind::Malformed, "infinitely near point " + std::to_string(i + 1) + " needs a proper parent");
    }
    if (is_zero_vec(pt.line)) fail(ErrorKind::Malformed, "zero direction line");
    if (!dot(pt.line, points_[static_cast<std::size_t>(pt.parent)].proper->coords()).is_zero()) {
      fail(ErrorKind::Malformed, "direction line of point " + std::to_string(i + 1) + " misses its parent");
    }
    for (std::size_t j = 0; j < i; ++j) {
      const auto& other = points_[j];
      if (!other.is_proper() && other.parent == pt.parent && is_zero_vec(cross(other.line, pt.line))) {
        fail(ErrorKind::Malformed, "repeated infinitely near point");
      }
    }
  }
}

SurfaceModel SurfaceModel::lattice_only(int r) {
  if (r < 0 || r > 8) fail(ErrorKind::Unsupported, "lattice rank out of range");
  SurfaceModel m;
  m.rank_ = r;
  m.has_coordinates_ = false;
  m.cache_ = std::make_shared<Cache>();
  return m;
}

std::vector<int> SurfaceModel::children_of(int i) const {
  std::vector<int> out;
  for (std::size_t j = 0; j < points_.size(); ++j) {
    if (!points_[j].is_proper() && points_[j].parent == i) out.push_back(static_cast<int>(j));
  }
  return out;
}

bool SurfaceModel::is_irreducible_curve(const DivisorClass& c) const {
  if (!has_coordinates_) fail(ErrorKind::Unsupported, "model has no point coordinates");
  if (c.rank() != rank_) fail(ErrorKind::RankMismatch, "class rank differs from model rank");
  const int m = c.ell();
  if (m < 0) return false;
  if (m == 0) {
    int top = -1;
    for (int i = 0; i < rank_; ++i) {
      const int v = c.e()[static_cast<std::size_t>(i)];
      if (v == 1) {
        if (top >= 0) return false;
        top = i;
      } else if (v != 0 && v != -1) {
        return false;
      }
    }
    if (top < 0) return false;
    std::vector<int> expected(static_cast<std::size_t>(rank_), 0);
    expected[static_cast<std::size_t>(top)] = 1;
    if (points_[static_cast<std::size_t>(top)].is_proper()) {
      for (int j : children_of(top)) expected[static_cast<std::size_t>(j)] = -1;
    }
    return expected == c.e();
  }
  if (m > 2) fail(ErrorKind::Unsupported, "effectiveness is decided only up to degree 2: " + c.label());
  for (int i = 1; i <= rank_; ++i) {
    const int a = c.multiplicity(i);
    if (a < 0 || a > 1) return false;  // lines and smooth conics have no singular points
    const auto& pt = points_[static_cast<std::size_t>(i - 1)];
    if (a == 1 && !pt.is_proper() && c.multiplicity(pt.parent + 1) != 1) return false;
  }

  const auto monos = monomials(m);
  std::vector<std::vector<CycScalar>> rows;
  for (int i = 0; i < rank_; ++i) {
    const auto& pt = points_[static_cast<std::size_t>(i)];
    if (c.multiplicity(i + 1) == 0) continue;
    std::vector<CycScalar> row;
    if (pt.is_proper()) {
      for (const auto& mono : monos) row.push_back(monomial_value(mono, pt.proper->coords()));
    } else {
      const auto& parent = points_[static_cast<std::size_t>(pt.parent)].proper->coords();
      const auto q = second_point(parent, pt.line);
      for (const auto& mono : monos) row.push_back(monomial_derivative(mono, parent, q));
    }
    rows.push_back(std::move(row));
  }
  Matrix<CycScalar> system(rows.size(), monos.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t k = 0; k < monos.size(); ++k) system(r, k) = rows[r][k];
  }
  const auto kernel = nullspace(system);
  if (kernel.size() != 1) return false;
  const auto& coeffs = kernel.front();
  if (m == 2 && conic_determinant(coeffs).is_zero()) return false;

  // Multiplicities must be exactly those of the class.
  auto value_at = [&](const std::array<CycScalar, 3>& p) {
    CycScalar v;
    for (std::size_t k = 0; k < monos.size(); ++k) v += coeffs[k] * monomial_value(monos[k], p);
    return v;
  };
  for (int i = 0; i < rank_; ++i) {
    if (c.multiplicity(i + 1) != 0) continue;
    const auto& pt = points_[static_cast<std::size_t>(i)];
    if (pt.is_proper()) {
      if (value_at(pt.proper->coords()).is_zero()) return false;
      continue;
    }
    const auto& parent = points_[static_cast<std::size_t>(pt.parent)].proper->coords();
    if (!value_at(parent).is_zero()) continue;
    const auto q = second_point(parent, pt.line);
    CycScalar deriv;
    for (std::size_t k = 0; k < monos.size(); ++k) deriv += coeffs[k] * monomial_derivative(monos[k], parent, q);
    if (deriv.is_zero()) return false;
  }
  return true;
}

const std::vector<DivisorClass>& SurfaceModel::negative_curves() const {
  if (!has_coordinates_) fail(ErrorKind::Unsupported, "model has no point coordinates");
  if (rank_ > kMaxCurveRank || rank_ < 1) {
    fail(ErrorKind::Unsupported, "curve enumeration supports ranks 1.." + std::to_string(kMaxCurveRank));
  }
  std::call_once(cache_->once, [this] {
    // An irreducible curve here has self-intersection at least -(r+1).
    for (const auto& c : negative_candidates_unchecked(rank_, -(rank_ + 1))) {
      if (is_irreducible_curve(c)) cache_->curves.push_back(c);
    }
  });
  return cache_->curves;
}

std::vector<std::string> SurfaceModel::curve_labels() const {
  std::vector<std::string> out;
  for (const auto& c : negative_curves()) out.push_back(c.label());
  return out;
}

std::optional<std::size_t> SurfaceModel::curve_index(const DivisorClass& c) const {
  const auto& curves = negative_curves();
  auto it = std::find(curves.begin(), curves.end(), c);
  if (it == curves.end()) return std::nullopt;
  return static_cast<std::size_t>(it - curves.begin());
}

namespace {

// f^2 = 0, f.K = -2, degree >= 1, multiplicities >= 0.
std::vector<DivisorClass> fiber_candidates(int r) {
  std::vector<DivisorClass> out;
  for (int m = 1; m <= 64; ++m) {
    const long s1 = 3L * m - 2;
    const long s2 = static_cast<long>(m) * m;
    if (s1 * s1 > r * s2) continue;
    std::vector<int> cur(static_cast<std::size_t>(r), 0);
    // odometer over a_i in [0, m]
    while (true) {
      long a1 = 0, a2 = 0;
      for (int v : cur) {
        a1 += v;
        a2 += static_cast<long>(v) * v;
      }
      if (a1 == s1 && a2 == s2) {
        std::vector<int> e(cur.size());
        std::transform(cur.begin(), cur.end(), e.begin(), [](int v) { return -v; });
        out.emplace_back(m, std::move(e));
      }
      std::size_t k = 0;
      while (k < cur.size() && cur[k] == m) cur[k++] = 0;
      if (k == cur.size()) break;
      ++cur[k];
    }
  }
  std::sort(out.begin(), out.end(), class_less);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> fiber_pairs(const SurfaceModel& model, const DivisorClass& f) {
  const auto& curves = model.negative_curves();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (self_intersection(curves[i]) != -1) continue;
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      if (self_intersection(curves[j]) != -1) continue;
      if (intersect(curves[i], curves[j]) == 1 && curves[i] + curves[j] == f) pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

}  // namespace

std::vector<ConicBundle> conic_bundle_structures(const SurfaceModel& model) {
  if (model.rank() < 2 || model.rank() > kMaxCurveRank) {
    fail(ErrorKind::Unsupported, "conic bundle search supports ranks 2.." + std::to_string(kMaxCurveRank));
  }
  const int needed = 8 - model.degree();
  std::vector<ConicBundle> out;
  for (const auto& f : fiber_candidates(model.rank())) {
    auto pairs = fiber_pairs(model, f);
    if (static_cast<int>(pairs.size()) == needed) out.push_back(ConicBundle{f, std::move(pairs)});
  }
  return out;
}

ConicBundle conic_bundle_for(const SurfaceModel& model, const DivisorClass& fiber) {
  if (fiber.rank() != model.rank()) fail(ErrorKind::RankMismatch, "fiber class rank differs from model");
  if (self_intersection(fiber) != 0 || intersect(fiber, model.canonical()) != -2) {
    fail(ErrorKind::InvalidClass, fiber.label() + " is not a conic class");
  }
  auto pairs = fiber_pairs(model, fiber);
  if (static_cast<int>(pairs.size()) != 8 - model.degree()) {
    fail(ErrorKind::InvalidClass, fiber.label() + " is not a conic bundle structure of the model");
  }
  return ConicBundle{fiber, std::move(pairs)};
}

std::vector<DivisorClass> enumerate_sections(const SurfaceModel& model, const ConicBundle& cb, int n) {
  if (n < 1 || n > 4) fail(ErrorKind::Usage, "section self-intersection must be -1..-4");
  const auto& curves = model.negative_curves();
  for (const auto& [i, j] : cb.singular_fibers) {
    if (i >= curves.size() || j >= curves.size() || curves[i] + curves[j] != cb.fiber) {
      fail(ErrorKind::InvalidClass, "conic bundle does not match the model");
    }
  }
  const DivisorClass* s = nullptr;
  for (const auto& c : curves) {
    if (intersect(c, cb.fiber) != 1) continue;
    if (s == nullptr || self_intersection(c) < self_intersection(*s)) s = &c;
  }
  if (s == nullptr) fail(ErrorKind::InvalidClass, "conic bundle has no section among the negative curves");
  const int n0 = -self_intersection(*s);

  std::vector<DivisorClass> missed;  // component of each fiber disjoint from s
  for (const auto& [i, j] : cb.singular_fibers) {
    missed.push_back(intersect(*s, curves[i]) == 0 ? curves[i] : curves[j]);
  }
  std::vector<DivisorClass> out;
  const std::size_t k = missed.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    const int size = __builtin_popcountll(mask);
    const int twice_b = size + n0 - n;
    if (twice_b % 2 != 0) continue;
    DivisorClass t = *s + (twice_b / 2) * cb.fiber;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::size_t{1} << i)) t -= missed[i];
    }
    if (self_intersection(t) != -n || arithmetic_genus(t) != 0 || intersect(t, cb.fiber) != 1) continue;
    // Irreducible: meets every other negative curve non-negatively.
    const bool irreducible = std::all_of(curves.begin(), curves.end(), [&](const DivisorClass& c) {
      return c == t || intersect(t, c) >= 0;
    });
    if (irreducible) out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(), class_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SectionBound section_bound(const SurfaceModel& model, const ConicBundle& cb, int n) {
  SectionBound b;
  b.n = n;
  b.count = enumerate_sections(model, cb, n).size();
  b.fibers = cb.singular_fibers.size();
  b.holds = b.count < 2 || b.fibers >= static_cast<std::size_t>(2 * n);
  b.tight = b.fibers == static_cast<std::size_t>(2 * n);
  return b;
}

}  // namespace cremona
