// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cremona/action.hpp"
#include "cremona/error.hpp"
#include "cremona/json_io.hpp"
#include "cremona/verifier.hpp"

using namespace cremona;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      pass = false;
      detail << what;
    }
  }
};

std::vector<std::string> labels(const std::vector<DivisorClass>& cs) {
  std::vector<std::string> out;
  for (const auto& c : cs) out.push_back(c.label());
  return out;
}

std::set<std::string> label_set(const std::vector<DivisorClass>& cs) {
  const auto l = labels(cs);
  return {l.begin(), l.end()};
}

std::vector<std::string> fibers(const SurfaceModel& m) {
  std::vector<std::string> out;
  for (const auto& cb : conic_bundle_structures(m)) out.push_back(cb.fiber.label());
  return out;
}

Outcome negative_curves_s4hat(const Registry& reg) {
  Outcome o;
  const auto& m = reg.scenario("s4hat").require_model();
  const std::set<std::string> expected{"E1-E5", "E2", "E3", "E4", "E5", "D12", "D13", "D14", "D15", "L-E2-E3-E4"};
  o.require(label_set(m.negative_curves()) == expected, "curve set differs");
  std::set<std::string> minus_two;
  for (const auto& c : m.negative_curves()) {
    if (self_intersection(c) == -2) minus_two.insert(c.label());
  }
  o.require(minus_two == std::set<std::string>{"E1-E5", "L-E2-E3-E4"}, "(-2)-curves differ");
  o.detail << m.negative_curves().size() << " curves, (-2): E1-E5, L-E2-E3-E4";
  return o;
}

Outcome bundle_counts(const Registry& reg) {
  Outcome o;
  const auto s6 = fibers(reg.scenario("s6").require_model());
  const auto dp4 = fibers(reg.scenario("dp4").require_model());
  const auto s4 = fibers(reg.scenario("s4hat").require_model());
  o.require(s6 == std::vector<std::string>{"L-E1", "L-E2", "L-E3"}, "S6 fibers");
  const std::set<std::string> dp4_expected{"L-E1", "L-E2", "L-E3", "L-E4", "L-E5", "2L-E2-E3-E4-E5", "2L-E1-E3-E4-E5",
                                           "2L-E1-E2-E4-E5", "2L-E1-E2-E3-E5", "2L-E1-E2-E3-E4"};
  o.require(dp4.size() == 10 && std::set<std::string>(dp4.begin(), dp4.end()) == dp4_expected, "dP4 fibers");
  o.require(s4 == std::vector<std::string>{"L-E1"}, "S4-hat fibers");
  o.detail << "S6 " << s6.size() << ", dP4 " << dp4.size() << ", S4-hat " << s4.size();
  return o;
}

Outcome cs24_relations(const Registry& reg) {
  Outcome o;
  const auto& sc = reg.scenario("s4hat");
  const ProjMap minus_x = ProjMap::parse({"-x", "y", "z"});
  o.require(compose(sc.map("h1"), sc.map("h1")) == minus_x, "h1^2");
  o.require(compose(sc.map("h2"), sc.map("h2")) == minus_x, "h2^2");
  o.require(closure({sc.map("h1"), sc.map("h2")}).order() == 8, "order of <h1,h2>");
  const auto& fam = reg.scenario("cs24-family");
  for (int n = 1; n <= 3; ++n) {
    const std::string h = "h_n" + std::to_string(n);
    const Json q = apply_op(fam, "pencil_quotient", Json{{"generators", {"g1", "g2", h}}});
    o.require(q["order"] == 8 * n, "family order for n=" + std::to_string(n));
    o.require(q["image_order"] == 4 && q["kernel_order"] == 2 * n && q["homomorphism"] == true,
              "pencil quotient for n=" + std::to_string(n));
    o.detail << (n > 1 ? ", " : "") << "n=" << n << ": |G|=" << q["order"].get<int>() << " image " << q["image_order"].get<int>();
  }
  return o;
}

Outcome cs24_lattice(const Registry& reg) {
  Outcome o;
  const auto& sc = reg.scenario("s4hat");
  const auto& m = sc.require_model();
  const auto& g1 = sc.isometry("g1");
  const auto& g2 = sc.isometry("g2");
  const ConicBundle cb = conic_bundle_for(m, DivisorClass::parse("L-E1", m.rank()));
  const auto tw = twisted_fibers(g1, cb, m);
  std::set<std::string> twisted;
  for (std::size_t i : tw) {
    const auto& [a, b] = cb.singular_fibers[i];
    twisted.insert(m.negative_curves()[a].label() + "+" + m.negative_curves()[b].label());
  }
  o.require(twisted == std::set<std::string>{"E2+D12", "E3+D13"}, "twisted fibers of g1");
  const ActionGroup g = closure({g1, g2});
  o.require(is_pair_minimal(g, m).minimal, "pair minimality");
  o.require(is_triple_minimal(g, cb, m), "triple minimality");
  const Json inv = apply_op(sc, "involution_twists", Json{{"maps", {"h1", "h2"}}, {"lattice", {"g1", "g2"}}, {"fiber", "L-E1"}});
  o.require(inv["involutions"] == 3 && inv["twisting"] == 0, "involutions twisting a fiber");
  o.detail << "g1 twists {E2,D12},{E3,D13}; minimal pair and triple; " << inv["involutions"].get<int>()
           << " involutions, none twisting";
  return o;
}

Outcome lefschetz(const Registry& reg) {
  Outcome o;
  const auto& dp4 = reg.scenario("dp4");
  const auto tau = lefschetz_check(dp4.isometry("tau"), dp4.fixed_loci.at("four_points"));
  o.require(tau.trace == 2 && tau.holds, "dP4 involution");
  const auto& dp3 = reg.scenario("dp3");
  const auto& three = dp3.isometry("three_cycles");
  o.require(static_cast<int>(three.rows().size()) == 7, "rank-7 lattice");
  const auto t = lefschetz_check(three, dp3.fixed_loci.at("three_points"));
  o.require(t.trace == 1 && t.euler == 3 && t.holds, "trace 1 with 3 fixed points");
  for (int r = 0; r <= 8; ++r) {
    const auto id = lefschetz_check(LatticeIsometry::identity(r), FixedLocus{0, {}, 3 + r});
    o.require(id.holds, "identity at r=" + std::to_string(r));
  }
  o.detail << "dP4 trace " << tau.trace << " vs 4 points; dP3 trace " << t.trace << " vs 3 points; identity r=0..8";
  return o;
}

Outcome orbit_divisibility(const Registry& reg) {
  Outcome o;
  const std::vector<std::pair<std::string, std::string>> cases{{"s6", "hexagon"}, {"s5", "order5"}};
  for (const auto& [scenario, iso] : cases) {
    const auto& sc = reg.scenario(scenario);
    const auto& m = sc.require_model();
    const ActionGroup g = closure({sc.isometry(iso)});
    const auto rep = orbits(g, m);
    o.require(rep.invariant_rank == 1, scenario + " invariant rank");
    for (const auto& orb : rep.orbits) {
      o.require(orb.members.size() % static_cast<std::size_t>(9 - m.rank()) == 0, scenario + " orbit size");
      o.require(orb.multiple_of_k.has_value(), scenario + " orbit sum");
    }
    o.detail << (scenario == "s6" ? "" : ", ") << scenario << ": " << rep.orbits.size() << " orbit(s)";
  }
  return o;
}

Outcome obstruction(const Registry&) {
  Outcome o;
  const int r = 5;
  std::vector<DivisorClass> src;
  std::vector<DivisorClass> dst;
  const DivisorClass K = DivisorClass::canonical(r);
  for (int i = 1; i <= r; ++i) {
    const DivisorClass c = DivisorClass::line(r) - DivisorClass::exceptional(r, i);
    src.push_back(c);
    dst.push_back(-K - c);
  }
  src.push_back(K);
  dst.push_back(K);
  try {
    (void)extend_linearly(src, dst);
    o.require(false, "extension unexpectedly succeeded");
  } catch (const Error& e) {
    o.require(e.kind() == ErrorKind::NonIntegral, std::string("wrong error ") + std::string(to_string(e.kind())));
    o.detail << to_string(e.kind());
  }
  return o;
}

Outcome characters(const Registry&) {
  Outcome o;
  using Pred = std::function<bool(const std::vector<int>&)>;
  struct Case {
    int n;
    std::map<int, int> bounds;
    Pred constraint;
  };
  // profiles list multiplicities of eigenvalue orders d | n, ascending d
  const std::vector<Case> cases{
      {2, {{1, -1}}, [](const std::vector<int>& m) { return m[0] >= 4; }},
      {3, {{1, -1}}, [](const std::vector<int>& m) { return m[0] >= 3 && m[1] <= 3; }},
      {4, {{1, -1}, {2, -1}}, [](const std::vector<int>& m) { return m[0] >= m[1] - 1 && m[0] + m[1] >= 4; }},
  };
  for (const auto& c : cases) {
    const auto got = character_admissibility(c.n, 9, c.bounds);
    std::set<std::vector<int>> expected;
    // all eigenvalue profiles of rank 9 with eigenvalue 1 present and order exactly n
    const std::vector<int> phi = c.n == 2 ? std::vector<int>{1, 1} : c.n == 3 ? std::vector<int>{1, 2} : std::vector<int>{1, 1, 2};
    std::vector<int> m(phi.size(), 0);
    while (true) {
      int dim = 0;
      for (std::size_t i = 0; i < m.size(); ++i) dim += m[i] * phi[i];
      if (dim == 9 && m[0] >= 1 && m.back() >= 1 && c.constraint(m)) expected.insert(m);
      std::size_t k = 0;
      while (k < m.size() && m[k] == 9) m[k++] = 0;
      if (k == m.size()) break;
      ++m[k];
    }
    const std::set<std::vector<int>> actual(got.profiles.begin(), got.profiles.end());
    o.require(actual == expected, "order " + std::to_string(c.n));
    o.detail << (c.n == 2 ? "" : ", ") << "order " << c.n << ": " << actual.size() << " profiles";
  }
  return o;
}

Outcome sections(const Registry& reg) {
  Outcome o;
  const auto& m = reg.scenario("s4hat").require_model();
  const ConicBundle cb = conic_bundle_for(m, DivisorClass::parse("L-E1", m.rank()));
  const auto secs = label_set(enumerate_sections(m, cb, 2));
  o.require(secs.count("E1-E5") == 1 && secs.count("L-E2-E3-E4") == 1, "(-2)-sections");
  const auto b = section_bound(m, cb, 2);
  o.require(b.holds && b.tight && b.fibers == 4 && b.n == 2, "bound r >= 2n tight");
  o.detail << secs.size() << " (-2)-sections, r=" << b.fibers << ", n=" << b.n;
  return o;
}

Outcome degree_growth(const Registry& reg) {
  Outcome o;
  const auto& sc = reg.scenario("degree-growth");
  const ProjMap phi = compose(sc.map("sigma"), sc.map("tau"));
  const auto degs = degree_sequence(phi, 4);
  o.require(degs == std::vector<int>{2, 4, 8, 16}, "degree sequence");
  const auto cert = orbit_avoids(phi, sc.point_sets.at("coordinate_points"), sc.point_sets.at("base_points"), 4);
  o.require(cert.avoids, "orbit avoidance");
  // frozen orbit: phi cycles (1:0:0) -> (0:1:0) -> (0:0:1)
  const Json frozen = Json::parse(R"([["1","0","0"],["0","1","0"],["0","0","1"],["1","0","0"],["0","1","0"]])");
  Json orbit0 = Json::array();
  for (const auto& p : cert.orbits.at(0)) orbit0.push_back(to_json(p));
  o.require(orbit0 == frozen, "frozen orbit");
  o.detail << "degrees 2,4,8,16; 3 orbits avoid base points for 4 steps";
  return o;
}

ProjMap random_map(std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> deg(1, 2);
  while (true) {
    const int d = deg(rng);
    std::array<HomPoly, 3> comps;
    for (auto& f : comps) {
      f = HomPoly::zero(d);
      for (int i = d; i >= 0; --i)
        for (int j = d - i; j >= 0; --j)
          if (const int c = coef(rng); c != 0) f.add_term({i, j, d - i - j}, CycScalar(static_cast<long>(c)));
    }
    try {
      return ProjMap(comps);
    } catch (const Error&) {
    }
  }
}

LatticeIsometry reflection(const DivisorClass& a) {
  const int r = a.rank();
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(r + 1), std::vector<int>(static_cast<std::size_t>(r + 1)));
  for (int j = 0; j <= r; ++j) {
    std::vector<int> e(static_cast<std::size_t>(r + 1), 0);
    e[static_cast<std::size_t>(j)] = 1;
    const DivisorClass x = DivisorClass::from_vector(e);
    const auto img = (x + intersect(x, a) * a).to_vector();
    for (int i = 0; i <= r; ++i) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = img[static_cast<std::size_t>(i)];
  }
  return LatticeIsometry(rows);
}

Outcome properties(const Registry& reg) {
  Outcome o;
  std::mt19937 rng(20240611);
  int assoc = 0;
  for (int t = 0; t < 100; ++t) {
    const ProjMap f = random_map(rng), g = random_map(rng), h = random_map(rng);
    if (compose(compose(f, g), h) == compose(f, compose(g, h))) ++assoc;
  }
  o.require(assoc == 100, "associativity");

  int iso_ok = 0;
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (int r = 3; r <= 8; ++r) {
    std::vector<LatticeIsometry> gens;
    for (int i = 1; i < r; ++i) gens.push_back(reflection(DivisorClass::exceptional(r, i) - DivisorClass::exceptional(r, i + 1)));
    gens.push_back(reflection(DivisorClass::parse("L-E1-E2-E3", r)));
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    for (int t = 0; t < 10; ++t) {
      LatticeIsometry m = LatticeIsometry::identity(r);
      for (int k = 0; k < 6; ++k) m = gens[pick(rng)] * m;
      std::vector<int> va(static_cast<std::size_t>(r + 1)), vb(static_cast<std::size_t>(r + 1));
      for (auto& x : va) x = coeff(rng);
      for (auto& x : vb) x = coeff(rng);
      const auto a = DivisorClass::from_vector(va), b = DivisorClass::from_vector(vb);
      const auto K = DivisorClass::canonical(r);
      if (intersect(m.apply(a), m.apply(b)) == intersect(a, b) && m.apply(K) == K) ++iso_ok;
      else o.require(false, "isometry invariants at r=" + std::to_string(r));
    }
  }

  int brute_ok = 0;
  for (int r = 1; r <= 4; ++r) {
    std::set<std::vector<int>> oracle;
    std::vector<int> v(static_cast<std::size_t>(r + 1), -3);
    v[0] = 0;
    while (true) {
      const DivisorClass c = DivisorClass::from_vector(v);
      const int s = self_intersection(c);
      const bool mult = c.ell() == 0 || std::all_of(c.e().begin(), c.e().end(), [](int e) { return e <= 0; });
      if (s >= -3 && s <= -1 && arithmetic_genus(c) == 0 && mult) oracle.insert(v);
      std::size_t k = 0;
      for (; k < v.size() && v[k] == 3; ++k) v[k] = (k == 0 ? 0 : -3);
      if (k == v.size()) break;
      ++v[k];
    }
    std::set<std::vector<int>> got;
    for (const auto& c : negative_candidates(r, -3)) got.insert(c.to_vector());
    if (got == oracle) ++brute_ok;
    else o.require(false, "negative candidates at r=" + std::to_string(r));
  }

  int round_trips = 0;
  for (const auto& name : {"s6", "s5", "s4hat", "dp4"}) {
    const auto& sc = reg.scenario(name);
    const auto& m = sc.require_model();
    if (model_from_json(to_json(m)).curve_labels() == m.curve_labels()) ++round_trips;
    for (const auto& c : m.negative_curves()) {
      if (class_from_json(to_json(c), m.rank()) == c) ++round_trips;
    }
    for (const auto& [key, f] : sc.maps) {
      if (map_from_json(to_json(f)) == f) ++round_trips;
    }
    for (const auto& [key, iso] : sc.isometries) {
      if (isometry_from_json(to_json(iso), &m) == iso) ++round_trips;
    }
  }
  int expected_trips = 0;
  for (const auto& name : {"s6", "s5", "s4hat", "dp4"}) {
    const auto& sc = reg.scenario(name);
    expected_trips += 1 + static_cast<int>(sc.require_model().negative_curves().size() + sc.maps.size() + sc.isometries.size());
  }
  o.require(round_trips == expected_trips, "serialization round trip");
  o.detail << assoc << " associativity triples, " << iso_ok << " Weyl products, " << brute_ok << " brute-force ranks, "
           << round_trips << " round trips";
  return o;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const Registry reg = Registry::load(default_fixture_root());
  const std::vector<std::pair<std::string, std::function<Outcome(const Registry&)>>> criteria{
      {"s4hat-negative-curves", negative_curves_s4hat},
      {"conic-bundle-counts", bundle_counts},
      {"cs24-relations", cs24_relations},
      {"cs24-lattice", cs24_lattice},
      {"lefschetz", lefschetz},
      {"orbit-divisibility", orbit_divisibility},
      {"obstruction", obstruction},
      {"character-admissibility", characters},
      {"section-enumeration", sections},
      {"degree-growth", degree_growth},
      {"property-suites", properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& [name, run] = criteria[i];
    bool pass = false;
    std::string detail;
    try {
      Outcome o = run(reg);
      pass = o.pass;
      detail = o.detail.str();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!pass) ++failed;
    std::printf("%s %2zu %s: %s\n", pass ? "PASS" : "FAIL", i + 1, name.c_str(), detail.c_str());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%zu/%zu criteria passed in %.2f s\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size(), secs);
  return failed == 0 && secs < 60.0 ? 0 : 1;
}
