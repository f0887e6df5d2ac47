#include "cremona/birmap.hpp"

#include <algorithm>

#include "cremona/error.hpp"
#include "group_closure.hpp"

namespace cremona {
namespace {

// Divides all entries by the first nonzero one (in scan order).
template <class Container>
void normalize_leading(Container& polys) {
  for (auto& p : polys) {
    if (p.is_zero()) continue;
    const CycScalar inv = p.leading_coefficient().inverse();
    if (!inv.is_one()) {
      for (auto& q : polys) q *= inv;
    }
    return;
  }
}

}  // namespace

ProjPoint::ProjPoint(std::array<CycScalar, 3> coords) : coords_(std::move(coords)) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (coords_[i].is_zero()) continue;
    const CycScalar inv = coords_[i].inverse();
    for (auto& c : coords_) c = (c * inv).canonical();
    return;
  }
  fail(ErrorKind::Malformed, "projective point with all coordinates zero");
}

ProjPoint ProjPoint::parse(const std::array<std::string, 3>& coords) {
  return ProjPoint({CycScalar::parse(coords[0]), CycScalar::parse(coords[1]), CycScalar::parse(coords[2])});
}

std::array<std::string, 3> ProjPoint::coord_strings() const {
  return {coords_[0].to_string(), coords_[1].to_string(), coords_[2].to_string()};
}

std::string ProjPoint::to_string() const {
  const auto s = coord_strings();
  return "(" + s[0] + " : " + s[1] + " : " + s[2] + ")";
}

ProjMap::ProjMap(std::array<HomPoly, 3> components) {
  int deg = -1;
  for (const auto& c : components) {
    if (c.is_zero()) continue;
    if (deg >= 0 && c.degree() != deg) fail(ErrorKind::Malformed, "map components differ in degree");
    deg = c.degree();
  }
  if (deg < 0) fail(ErrorKind::Malformed, "map with all components zero");
  const HomPoly g = gcd(std::vector<HomPoly>(components.begin(), components.end()));
  if (g.degree() > 0) {
    for (auto& c : components) {
      if (c.is_zero()) continue;
      auto q = exact_divide(c, g);
      if (!q) fail(ErrorKind::Malformed, "gcd does not divide a component");
      c = std::move(*q);
    }
    deg -= g.degree();
  }
  if (deg < 1) fail(ErrorKind::Malformed, "map reduces to a constant");
  for (auto& c : components) {
    if (c.is_zero()) c.set_zero_degree(deg);
  }
  normalize_leading(components);
  for (auto& c : components) {
    HomPoly canon = HomPoly::zero(deg);
    for (const auto& [m, v] : c.terms()) canon.add_term(m, v.canonical());
    c = std::move(canon);
  }
  degree_ = deg;
  components_ = std::move(components);
}

ProjMap ProjMap::identity() {
  return ProjMap({HomPoly::variable(0), HomPoly::variable(1), HomPoly::variable(2)});
}

ProjMap ProjMap::parse(const std::array<std::string, 3>& components) {
  return ProjMap({HomPoly::parse(components[0]), HomPoly::parse(components[1]), HomPoly::parse(components[2])});
}

std::array<std::string, 3> ProjMap::component_strings() const {
  return {components_[0].to_string(), components_[1].to_string(), components_[2].to_string()};
}

std::string ProjMap::to_string() const {
  const auto s = component_strings();
  return "(" + s[0] + " : " + s[1] + " : " + s[2] + ")";
}

ProjMap compose(const ProjMap& f, const ProjMap& g) {
  std::array<HomPoly, 3> out;
  for (std::size_t i = 0; i < 3; ++i) out[i] = f.components()[i].substitute(g.components());
  if (out[0].is_zero() && out[1].is_zero() && out[2].is_zero()) {
    fail(ErrorKind::Malformed, "composition is identically zero");
  }
  return ProjMap(std::move(out));
}

std::vector<int> degree_sequence(const ProjMap& f, int n) {
  if (n < 1) fail(ErrorKind::Usage, "degree_sequence needs n >= 1");
  std::vector<int> out;
  ProjMap cur = f;
  out.push_back(cur.degree());
  for (int m = 2; m <= n; ++m) {
    cur = compose(f, cur);
    out.push_back(cur.degree());
  }
  return out;
}

bool projective_eq(const ProjMap& f, const ProjMap& g) { return f == g; }

std::optional<ProjPoint> evaluate(const ProjMap& f, const ProjPoint& p) {
  std::array<CycScalar, 3> v;
  for (std::size_t i = 0; i < 3; ++i) v[i] = f.components()[i].evaluate(p.coords());
  if (v[0].is_zero() && v[1].is_zero() && v[2].is_zero()) return std::nullopt;
  return ProjPoint(std::move(v));
}

PencilMap make_pencil_map(HomPoly p, HomPoly q) {
  if (p.is_zero() && q.is_zero()) fail(ErrorKind::Malformed, "pencil map with both forms zero");
  if (p.involves(0) || q.involves(0)) fail(ErrorKind::Malformed, "pencil forms must not involve x");
  const HomPoly g = gcd(p, q);
  if (g.degree() > 0) {
    if (!p.is_zero()) p = *exact_divide(p, g);
    if (!q.is_zero()) q = *exact_divide(q, g);
  }
  const int deg = p.is_zero() ? q.degree() : p.degree();
  if (p.is_zero()) p.set_zero_degree(deg);
  if (q.is_zero()) q.set_zero_degree(deg);
  std::array<HomPoly, 2> pq{std::move(p), std::move(q)};
  normalize_leading(pq);
  return PencilMap{std::move(pq[0]), std::move(pq[1])};
}

std::string PencilMap::to_string() const { return "(" + p.to_string() + " : " + q.to_string() + ")"; }

bool PencilMap::is_identity() const {
  return p == HomPoly::variable(1) && q == HomPoly::variable(2);
}

std::optional<PencilMap> pencil_action(const ProjMap& f) {
  const auto& c = f.components();
  if (c[1].is_zero() || c[2].is_zero()) return std::nullopt;
  const HomPoly g = gcd(c[1], c[2]);
  const HomPoly p = *exact_divide(c[1], g);
  const HomPoly q = *exact_divide(c[2], g);
  if (p.involves(0) || q.involves(0)) return std::nullopt;
  if (p.degree() == 0) return std::nullopt;
  return make_pencil_map(p, q);
}

PencilMap compose(const PencilMap& a, const PencilMap& b) {
  const std::array<HomPoly, 3> sub{HomPoly::zero(b.p.degree()), b.p, b.q};
  return make_pencil_map(a.p.substitute(sub), a.q.substitute(sub));
}

OrbitCertificate orbit_avoids(const ProjMap& f, const std::vector<ProjPoint>& starts,
                              const std::vector<ProjPoint>& avoid, int n) {
  if (n < 1) fail(ErrorKind::Usage, "orbit_avoids needs n >= 1");
  OrbitCertificate cert;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    std::vector<ProjPoint> orbit{starts[i]};
    for (int m = 0; m <= n; ++m) {
      if (m > 0) {
        auto next = evaluate(f, orbit.back());
        if (!next) {
          cert.avoids = false;
          cert.failure = OrbitFailure{OrbitFailure::Kind::Indeterminate, i, m, 0};
          break;
        }
        orbit.push_back(std::move(*next));
      }
      auto hit = std::find(avoid.begin(), avoid.end(), orbit.back());
      if (hit != avoid.end()) {
        cert.avoids = false;
        cert.failure = OrbitFailure{OrbitFailure::Kind::HitsAvoidSet, i, m,
                                    static_cast<std::size_t>(hit - avoid.begin())};
        break;
      }
    }
    cert.orbits.push_back(std::move(orbit));
    if (!cert.avoids) break;
  }
  return cert;
}

MapGroup closure(const std::vector<ProjMap>& generators, std::size_t cap) {
  return detail::close_group(
      generators, ProjMap::identity(), cap, [](const ProjMap& a, const ProjMap& b) { return compose(a, b); },
      [](const ProjMap& m) { return m.to_string(); },
      [](const ProjMap& a, const auto&, const ProjMap& b, const auto&) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.to_string() < b.to_string();
      });
}

}  // namespace cremona
