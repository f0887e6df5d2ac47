#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "cremona/error.hpp"
#include "cremona/piclattice.hpp"

using namespace cremona;

namespace {

ProjPoint P(long a, long b, long c) { return ProjPoint(std::array<CycScalar, 3>{CycScalar(a), CycScalar(b), CycScalar(c)}); }

SurfaceModel proper_model(const std::vector<ProjPoint>& pts) {
  std::vector<BlowupPoint> bp;
  for (const auto& p : pts) bp.push_back(BlowupPoint::at(p));
  return SurfaceModel(bp);
}

std::vector<std::string> sorted_labels(const std::vector<DivisorClass>& cs) {
  std::vector<std::string> out;
  for (const auto& c : cs) out.push_back(c.label());
  std::sort(out.begin(), out.end());
  return out;
}

using Triple = std::array<long, 3>;

long det3(const Triple& a, const Triple& b, const Triple& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

// Negative curves of a blow-up of at most five distinct points with
// integer coordinates, from collinearity alone.
std::vector<DivisorClass> collinearity_oracle(const std::vector<Triple>& pts) {
  const int r = static_cast<int>(pts.size());
  std::vector<DivisorClass> out;
  for (int i = 1; i <= r; ++i) out.push_back(DivisorClass::exceptional(r, i));
  std::set<std::vector<int>> lines;
  bool three_collinear = false;
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      std::vector<int> on{i, j};
      for (int k = 0; k < r; ++k) {
        if (k != i && k != j && det3(pts[i], pts[j], pts[k]) == 0) on.push_back(k);
      }
      std::sort(on.begin(), on.end());
      if (on.size() >= 3) three_collinear = true;
      lines.insert(on);
    }
  }
  for (const auto& on : lines) {
    DivisorClass c = DivisorClass::line(r);
    for (int k : on) c -= DivisorClass::exceptional(r, k + 1);
    out.push_back(c);
  }
  if (r == 5 && !three_collinear) {
    DivisorClass c = 2 * DivisorClass::line(r);
    for (int k = 1; k <= 5; ++k) c -= DivisorClass::exceptional(r, k);
    out.push_back(c);
  }
  return out;
}

const SurfaceModel& s6() {
  static const SurfaceModel m = proper_model({P(1, 0, 0), P(0, 1, 0), P(0, 0, 1)});
  return m;
}
const SurfaceModel& dp4() {
  static const SurfaceModel m = proper_model({P(1, 0, 0), P(0, 1, 0), P(0, 0, 1), P(1, 1, 1), P(2, 3, 5)});
  return m;
}

}  // namespace

TEST(Classes, ParseLabelRoundTrip) {
  for (const char* s : {"E1", "E1-E5", "D12", "L-E2-E3-E4", "2L-E1-E2-E3-E4-E5"}) {
    EXPECT_EQ(DivisorClass::parse(s, 5).label(), s);
  }
  EXPECT_EQ(DivisorClass::parse("-K", 5), -DivisorClass::canonical(5));
  EXPECT_EQ(DivisorClass::parse("D23", 4), DivisorClass::from_vector({1, 0, -1, -1, 0}));
  EXPECT_THROW(DivisorClass::parse("E6", 5), Error);
  EXPECT_THROW(DivisorClass::parse("L-", 5), Error);
}

TEST(Classes, IntersectionForm) {
  for (int r = 0; r <= 8; ++r) {
    const auto K = DivisorClass::canonical(r);
    EXPECT_EQ(intersect(K, K), 9 - r);
    EXPECT_EQ(self_intersection(DivisorClass::line(r)), 1);
    for (int i = 1; i <= r; ++i) {
      EXPECT_EQ(self_intersection(DivisorClass::exceptional(r, i)), -1);
      EXPECT_EQ(arithmetic_genus(DivisorClass::exceptional(r, i)), 0);
      EXPECT_EQ(intersect(DivisorClass::line(r), DivisorClass::exceptional(r, i)), 0);
    }
  }
  EXPECT_EQ(arithmetic_genus(DivisorClass::parse("3L", 0)), 1);
  EXPECT_EQ(arithmetic_genus(DivisorClass::parse("-K", 8)), 1);
}

TEST(Classes, NegativeCandidatesMatchBruteForce) {
  for (int r = 1; r <= 4; ++r) {
    for (int min_self = -3; min_self <= -1; ++min_self) {
      std::set<std::vector<int>> oracle;
      std::vector<int> v(static_cast<std::size_t>(r + 1), -3);
      v[0] = 0;
      while (true) {
        const DivisorClass c = DivisorClass::from_vector(v);
        const int s = self_intersection(c);
        const bool mult_ok = c.ell() == 0 || std::all_of(c.e().begin(), c.e().end(), [](int e) { return e <= 0; });
        if (s >= min_self && s <= -1 && arithmetic_genus(c) == 0 && mult_ok) oracle.insert(v);
        std::size_t k = 0;
        for (; k < v.size() && v[k] == 3; ++k) v[k] = (k == 0 ? 0 : -3);
        if (k == v.size()) break;
        ++v[k];
      }
      std::set<std::vector<int>> got;
      for (const auto& c : negative_candidates(r, min_self)) got.insert(c.to_vector());
      EXPECT_EQ(got, oracle) << "r=" << r << " min_self=" << min_self;
    }
  }
}

TEST(Classes, ExceptionalClassCounts) {
  const std::vector<std::size_t> expected{0, 1, 3, 6, 10, 16, 27, 56, 240};
  for (int r = 1; r <= 8; ++r) {
    EXPECT_EQ(negative_candidates(r, -1).size(), expected[static_cast<std::size_t>(r)]) << r;
  }
}

TEST(Surface, CoordinatePointsGiveHexagon) {
  EXPECT_EQ(s6().curve_labels(), (std::vector<std::string>{"E1", "E2", "E3", "D12", "D13", "D23"}));
  EXPECT_EQ(dp4().negative_curves().size(), 16u);
}

TEST(Surface, CollinearityOracleOnRandomPoints) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coord(-2, 2);
  std::uniform_int_distribution<int> count(2, 5);
  for (int trial = 0; trial < 60; ++trial) {
    const int r = count(rng);
    std::vector<ProjPoint> pts;
    std::vector<Triple> ints;
    while (static_cast<int>(pts.size()) < r) {
      const long a = coord(rng), b = coord(rng), c = coord(rng);
      if (a == 0 && b == 0 && c == 0) continue;
      const ProjPoint p = P(a, b, c);
      if (std::find(pts.begin(), pts.end(), p) != pts.end()) continue;
      pts.push_back(p);
      ints.push_back({a, b, c});
    }
    const SurfaceModel m = proper_model(pts);
    EXPECT_EQ(sorted_labels(m.negative_curves()), sorted_labels(collinearity_oracle(ints))) << "trial " << trial;
  }
}

TEST(Surface, NegativeCurvesMeetNonNegatively) {
  std::vector<BlowupPoint> pts{BlowupPoint::at(P(1, 0, 0)), BlowupPoint::at(P(0, 1, 0)), BlowupPoint::at(P(0, 0, 1)),
                               BlowupPoint::at(P(0, 1, 1)),
                               BlowupPoint::near(0, {CycScalar(0L), CycScalar(1L), CycScalar(1L)})};
  const SurfaceModel m(pts);
  const auto& cs = m.negative_curves();
  ASSERT_FALSE(cs.empty());
  bool has_minus_two = false;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    EXPECT_LT(self_intersection(cs[i]), 0);
    EXPECT_EQ(arithmetic_genus(cs[i]), 0);
    EXPECT_TRUE(m.is_irreducible_curve(cs[i]));
    has_minus_two = has_minus_two || self_intersection(cs[i]) == -2;
    for (std::size_t j = i + 1; j < cs.size(); ++j) EXPECT_GE(intersect(cs[i], cs[j]), 0);
  }
  EXPECT_TRUE(has_minus_two);
  EXPECT_TRUE(m.curve_index(DivisorClass::parse("E1-E5", 5)).has_value());
  EXPECT_FALSE(m.is_irreducible_curve(DivisorClass::parse("E1", 5)));
}

TEST(Surface, LatticeOnlyRejectsCurveQueries) {
  const SurfaceModel m = SurfaceModel::lattice_only(6);
  EXPECT_EQ(m.rank(), 6);
  EXPECT_FALSE(m.has_coordinates());
  EXPECT_THROW((void)m.negative_curves(), Error);
}

TEST(Bundles, StructureOfSingularFibers) {
  for (const SurfaceModel* m : {&s6(), &dp4()}) {
    const auto bundles = conic_bundle_structures(*m);
    EXPECT_EQ(bundles.size(), m == &s6() ? 3u : 10u);
    const auto K = m->canonical();
    for (const auto& cb : bundles) {
      EXPECT_EQ(self_intersection(cb.fiber), 0);
      EXPECT_EQ(intersect(cb.fiber, K), -2);
      EXPECT_EQ(cb.singular_fibers.size(), static_cast<std::size_t>(m->rank() - 1));
      for (const auto& [i, j] : cb.singular_fibers) {
        const auto& a = m->negative_curves()[i];
        const auto& b = m->negative_curves()[j];
        EXPECT_EQ(a + b, cb.fiber);
        EXPECT_EQ(intersect(a, b), 1);
      }
      const auto again = conic_bundle_for(*m, cb.fiber);
      EXPECT_EQ(again.singular_fibers, cb.singular_fibers);
    }
  }
  EXPECT_THROW((void)conic_bundle_for(s6(), DivisorClass::parse("L", 3)), Error);
}

TEST(Bundles, Sections) {
  const auto cb = conic_bundle_for(s6(), DivisorClass::parse("L-E1", 3));
  EXPECT_EQ(sorted_labels(enumerate_sections(s6(), cb, 1)), (std::vector<std::string>{"D23", "E1"}));
  const auto b = section_bound(s6(), cb, 1);
  EXPECT_EQ(b.count, 2u);
  EXPECT_EQ(b.fibers, 2u);
  EXPECT_TRUE(b.holds);
  EXPECT_TRUE(b.tight);
  for (const auto& bundle : conic_bundle_structures(dp4())) {
    for (int n = 1; n <= 3; ++n) {
      for (const auto& t : enumerate_sections(dp4(), bundle, n)) {
        EXPECT_EQ(self_intersection(t), -n);
        EXPECT_EQ(intersect(t, bundle.fiber), 1);
        EXPECT_EQ(arithmetic_genus(t), 0);
      }
      EXPECT_TRUE(section_bound(dp4(), bundle, n).holds);
    }
  }
}
