#include <functional>
#include <set>
#include <unordered_map>

#include "cremona/error.hpp"
#include "cremona/verifier.hpp"

namespace cremona {
namespace {

[[noreturn]] void usage(const std::string& what) { fail(ErrorKind::Usage, what); }

const Json& arg(const Json& args, const char* key) {
  if (!args.is_object() || !args.contains(key)) usage(std::string("missing argument \"") + key + "\"");
  return args.at(key);
}

int int_arg(const Json& args, const char* key) {
  const Json& v = arg(args, key);
  if (!v.is_number_integer()) usage(std::string("argument \"") + key + "\" must be an integer");
  return v.get<int>();
}

int int_arg(const Json& args, const char* key, int fallback) {
  return args.is_object() && args.contains(key) ? int_arg(args, key) : fallback;
}

ProjMap map_power(const ProjMap& f, int k) {
  if (k < 0) usage("negative map power");
  ProjMap out = ProjMap::identity();
  for (int i = 0; i < k; ++i) out = compose(f, out);
  return out;
}

// Name, [f0, f1, f2], {"components": [..]}, {"compose": [f, g, ...]} (last applied first) or {"power": [f, k]}.
ProjMap resolve_map(const Scenario& sc, const Json& e) {
  if (e.is_string()) return sc.map(e.get<std::string>());
  if (e.is_array() || (e.is_object() && e.contains("components"))) return map_from_json(e);
  if (e.is_object() && e.contains("compose")) {
    const Json& parts = e.at("compose");
    if (!parts.is_array() || parts.empty()) usage("compose needs a nonempty list");
    ProjMap out = resolve_map(sc, parts.back());
    for (std::size_t i = parts.size() - 1; i-- > 0;) out = compose(resolve_map(sc, parts[i]), out);
    return out;
  }
  if (e.is_object() && e.contains("power")) {
    const Json& p = e.at("power");
    if (!p.is_array() || p.size() != 2 || !p[1].is_number_integer()) usage("power needs [map, k]");
    return map_power(resolve_map(sc, p[0]), p[1].get<int>());
  }
  usage("unrecognised map expression " + e.dump());
}

std::vector<ProjMap> resolve_maps(const Scenario& sc, const Json& list) {
  if (!list.is_array()) usage("expected a list of maps");
  std::vector<ProjMap> out;
  for (const auto& e : list) out.push_back(resolve_map(sc, e));
  return out;
}

const SurfaceModel* model_ptr(const Scenario& sc) { return sc.model ? &*sc.model : nullptr; }

int lattice_rank(const Scenario& sc) { return sc.require_model().rank(); }

// Name, literal isometry JSON, {"product": [a, b, ...]} (last applied first),
// {"power": [a, k]} or "identity".
LatticeIsometry resolve_isometry(const Scenario& sc, const Json& e) {
  if (e.is_string()) {
    if (e.get<std::string>() == "identity") return LatticeIsometry::identity(lattice_rank(sc));
    return sc.isometry(e.get<std::string>());
  }
  if (e.is_object() && (e.contains("matrix") || e.contains("curve_perm"))) return isometry_from_json(e, model_ptr(sc));
  if (e.is_object() && e.contains("product")) {
    const Json& parts = e.at("product");
    if (!parts.is_array() || parts.empty()) usage("product needs a nonempty list");
    LatticeIsometry out = resolve_isometry(sc, parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) out = out * resolve_isometry(sc, parts[i]);
    return out;
  }
  if (e.is_object() && e.contains("power")) {
    const Json& p = e.at("power");
    if (!p.is_array() || p.size() != 2 || !p[1].is_number_integer()) usage("power needs [isometry, k]");
    return resolve_isometry(sc, p[0]).pow(p[1].get<int>());
  }
  usage("unrecognised isometry expression " + e.dump());
}

std::vector<LatticeIsometry> resolve_isometries(const Scenario& sc, const Json& list) {
  if (!list.is_array()) usage("expected a list of isometries");
  std::vector<LatticeIsometry> out;
  for (const auto& e : list) out.push_back(resolve_isometry(sc, e));
  return out;
}

DivisorClass resolve_class(const Scenario& sc, const Json& j) { return class_from_json(j, lattice_rank(sc)); }

std::vector<ProjPoint> resolve_points(const Scenario& sc, const Json& j) {
  if (j.is_string()) {
    auto it = sc.point_sets.find(j.get<std::string>());
    if (it == sc.point_sets.end()) usage("unknown point set \"" + j.get<std::string>() + "\"");
    return it->second;
  }
  return points_from_json(j);
}

FixedLocus resolve_fixed(const Scenario& sc, const Json& j) {
  if (j.is_string()) {
    auto it = sc.fixed_loci.find(j.get<std::string>());
    if (it == sc.fixed_loci.end()) usage("unknown fixed locus \"" + j.get<std::string>() + "\"");
    return it->second;
  }
  return fixed_locus_from_json(j);
}

std::size_t cap_arg(const Json& args) {
  const int cap = int_arg(args, "cap", static_cast<int>(kDefaultClosureCap));
  if (cap < 1) usage("cap must be positive");
  return static_cast<std::size_t>(cap);
}

Json labels(const std::vector<DivisorClass>& classes) {
  Json out = Json::array();
  for (const auto& c : classes) out.push_back(c.label());
  return out;
}

Json order_histogram(const std::vector<int>& orders) {
  std::map<int, int> counts;
  for (int o : orders) ++counts[o];
  Json out = Json::array();
  for (const auto& [o, n] : counts) out.push_back(Json::array({o, n}));
  return out;
}

Json fiber_pairs(const ConicBundle& cb, const SurfaceModel& model, const std::vector<std::size_t>& which) {
  Json out = Json::array();
  for (auto i : which) {
    const auto& [a, b] = cb.singular_fibers[i];
    out.push_back(Json::array({model.negative_curves()[a].label(), model.negative_curves()[b].label()}));
  }
  return out;
}

using Op = std::function<Json(const Scenario&, const Json&)>;

Json op_scalar(const Scenario&, const Json& a) {
  const Json& e = arg(a, "expr");
  if (!e.is_string()) usage("expr must be a string");
  return CycScalar::parse(e.get<std::string>()).to_string();
}

Json op_map(const Scenario& sc, const Json& a) { return to_json(resolve_map(sc, arg(a, "map"))); }

Json op_projective_eq(const Scenario& sc, const Json& a) {
  return projective_eq(resolve_map(sc, arg(a, "f")), resolve_map(sc, arg(a, "g")));
}

Json op_degree_sequence(const Scenario& sc, const Json& a) {
  return degree_sequence(resolve_map(sc, arg(a, "map")), int_arg(a, "n"));
}

Json op_evaluate(const Scenario& sc, const Json& a) {
  const auto p = evaluate(resolve_map(sc, arg(a, "map")), point_from_json(arg(a, "point")));
  return p ? to_json(*p) : Json(nullptr);
}

Json op_pencil_action(const Scenario& sc, const Json& a) {
  const auto p = pencil_action(resolve_map(sc, arg(a, "map")));
  return p ? Json(p->to_string()) : Json(nullptr);
}

Json op_map_group(const Scenario& sc, const Json& a) {
  const auto g = closure(resolve_maps(sc, arg(a, "generators")), cap_arg(a));
  return Json{{"order", g.order()}, {"abelian", g.is_abelian()}, {"element_orders", order_histogram(g.orders)}};
}

Json op_pencil_quotient(const Scenario& sc, const Json& a) {
  const auto g = closure(resolve_maps(sc, arg(a, "generators")), cap_arg(a));
  std::vector<std::optional<PencilMap>> images;
  bool preserved = true;
  for (const auto& f : g.elements) {
    images.push_back(pencil_action(f));
    preserved = preserved && images.back().has_value();
  }
  if (!preserved) return Json{{"order", g.order()}, {"preserved", false}};
  std::size_t kernel = 0;
  std::set<std::string> distinct;
  for (const auto& p : images) {
    if (p->is_identity()) ++kernel;
    distinct.insert(p->to_string());
  }
  bool hom = true;
  for (std::size_t i = 0; i < g.order() && hom; ++i) {
    for (std::size_t j = 0; j < g.order() && hom; ++j) {
      hom = *images[g.table[i][j]] == compose(*images[i], *images[j]);
    }
  }
  return Json{{"order", g.order()},     {"preserved", true},           {"kernel_order", kernel},
              {"image_order", distinct.size()}, {"homomorphism", hom}};
}

Json op_orbit_avoids(const Scenario& sc, const Json& a) {
  const auto cert = orbit_avoids(resolve_map(sc, arg(a, "map")), resolve_points(sc, arg(a, "starts")),
                                 resolve_points(sc, arg(a, "avoid")), int_arg(a, "n"));
  Json orbits = Json::array();
  for (const auto& orbit : cert.orbits) {
    Json o = Json::array();
    for (const auto& p : orbit) o.push_back(to_json(p));
    orbits.push_back(o);
  }
  Json failure = nullptr;
  if (cert.failure) {
    const auto& f = *cert.failure;
    failure = Json{{"kind", f.kind == OrbitFailure::Kind::HitsAvoidSet ? "hits-avoid-set" : "indeterminate"},
                   {"start", f.point_index},
                   {"step", f.step}};
    if (f.kind == OrbitFailure::Kind::HitsAvoidSet) failure["avoid"] = f.avoid_index;
  }
  return Json{{"avoids", cert.avoids}, {"orbits", orbits}, {"failure", failure}};
}

Json op_negative_curves(const Scenario& sc, const Json& a) {
  const auto& model = sc.require_model();
  std::vector<DivisorClass> out;
  for (const auto& c : model.negative_curves()) {
    if (a.is_object() && a.contains("self_intersection") && self_intersection(c) != int_arg(a, "self_intersection")) {
      continue;
    }
    out.push_back(c);
  }
  return labels(out);
}

Json op_negative_candidates(const Scenario&, const Json& a) {
  return labels(negative_candidates(int_arg(a, "rank"), int_arg(a, "min_self")));
}

Json op_conic_bundles(const Scenario& sc, const Json&) {
  const auto& model = sc.require_model();
  const auto all = conic_bundle_structures(model);
  Json fibers = Json::array();
  Json structures = Json::array();
  for (const auto& cb : all) {
    fibers.push_back(cb.fiber.label());
    structures.push_back(to_json(cb, model));
  }
  return Json{{"count", all.size()}, {"fibers", fibers}, {"structures", structures}};
}

Json op_sections(const Scenario& sc, const Json& a) {
  const auto& model = sc.require_model();
  const auto cb = conic_bundle_for(model, resolve_class(sc, arg(a, "fiber")));
  return labels(enumerate_sections(model, cb, int_arg(a, "n")));
}

Json op_section_bound(const Scenario& sc, const Json& a) {
  const auto& model = sc.require_model();
  const auto b = section_bound(model, conic_bundle_for(model, resolve_class(sc, arg(a, "fiber"))), int_arg(a, "n"));
  return Json{{"n", b.n}, {"count", b.count}, {"fibers", b.fibers}, {"holds", b.holds}, {"tight", b.tight}};
}

Json op_intersect(const Scenario& sc, const Json& a) {
  return intersect(resolve_class(sc, arg(a, "a")), resolve_class(sc, arg(a, "b")));
}

Json op_isometry(const Scenario& sc, const Json& a) {
  const auto m = resolve_isometry(sc, arg(a, "isometry"));
  const auto g = closure({m}, cap_arg(a));
  Json out{{"valid", true}, {"trace", m.trace()}, {"order", g.order()}, {"matrix", m.rows()}};
  if (sc.model && sc.model->has_coordinates()) {
    const auto perm = curve_permutation(m, *sc.model);
    Json images = Json::array();
    for (auto i : perm) images.push_back(sc.model->negative_curves()[i].label());
    out["curve_images"] = images;
  }
  return out;
}

Json op_extend(const Scenario& sc, const Json& a) {
  std::vector<DivisorClass> src;
  std::vector<DivisorClass> dst;
  for (const auto& c : arg(a, "sources")) src.push_back(resolve_class(sc, c));
  for (const auto& c : arg(a, "targets")) dst.push_back(resolve_class(sc, c));
  return to_json(extend_linearly(src, dst));
}

Json op_lattice_group(const Scenario& sc, const Json& a) {
  const auto g = closure(resolve_isometries(sc, arg(a, "generators")), cap_arg(a));
  long trace_sum = 0;
  for (const auto& m : g.elements) trace_sum += m.trace();
  return Json{{"order", g.order()},
              {"abelian", g.is_abelian()},
              {"invariant_rank", invariant_rank(g)},
              {"trace_sum", trace_sum},
              {"element_orders", order_histogram(g.orders)}};
}

Json op_orbits(const Scenario& sc, const Json& a) {
  const auto& model = sc.require_model();
  const auto rep = orbits(closure(resolve_isometries(sc, arg(a, "generators")), cap_arg(a)), model);
  Json list = Json::array();
  for (const auto& o : rep.orbits) {
    list.push_back(Json{{"curves", labels_json(model, o.members)},
                        {"size", o.members.size()},
                        {"sum", o.sum.label()},
                        {"size_divisible", o.size_divisible},
                        {"multiple_of_k", o.multiple_of_k ? Json(*o.multiple_of_k) : Json(nullptr)}});
  }
  return Json{{"invariant_rank", rep.invariant_rank},
              {"rank_one_checks", rep.rank_one_checks},
              {"holds", rep.holds},
              {"orbits", list}};
}

Json op_pair_minimal(const Scenario& sc, const Json& a) {
  const auto& model = sc.require_model();
  const auto rep = is_pair_minimal(closure(resolve_isometries(sc, arg(a, "generators")), cap_arg(a)), model);
  return Json{{"minimal", rep.minimal}, {"witness", labels_json(model, rep.witness)}};
}

Json op_twisted_fibers(const Scenario& sc, const Json& a) {
  const auto& model = sc.require_model();
  const auto cb = conic_bundle_for(model, resolve_class(sc, arg(a, "fiber")));
  return fiber_pairs(cb, model, twisted_fibers(resolve_isometry(sc, arg(a, "isometry")), cb, model));
}

Json op_triple_minimal(const Scenario& sc, const Json& a) {
  const auto& model = sc.require_model();
  const auto cb = conic_bundle_for(model, resolve_class(sc, arg(a, "fiber")));
  return is_triple_minimal(closure(resolve_isometries(sc, arg(a, "generators")), cap_arg(a)), cb, model);
}

Json op_involution_twists(const Scenario& sc, const Json& a) {
  const auto& model = sc.require_model();
  const auto cb = conic_bundle_for(model, resolve_class(sc, arg(a, "fiber")));
  const auto maps = resolve_maps(sc, arg(a, "maps"));
  const auto lattice = resolve_isometries(sc, arg(a, "lattice"));
  if (maps.size() != lattice.size()) usage("maps and lattice need the same number of generators");
  const auto g = closure(maps, cap_arg(a));
  std::size_t involutions = 0;
  std::size_t twisting = 0;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (g.orders[i] != 2) continue;
    ++involutions;
    if (!twisted_fibers(evaluate_word(lattice, g.words[i]), cb, model).empty()) ++twisting;
  }
  return Json{{"involutions", involutions}, {"twisting", twisting}};
}

Json op_lefschetz(const Scenario& sc, const Json& a) {
  const auto rep = lefschetz_check(resolve_isometry(sc, arg(a, "isometry")), resolve_fixed(sc, arg(a, "fixed")), cap_arg(a));
  return Json{{"trace", rep.trace}, {"euler", rep.euler}, {"order", rep.order}, {"holds", rep.holds}};
}

Json op_twist_parity(const Scenario& sc, const Json& a) {
  const auto& model = sc.require_model();
  const auto cb = conic_bundle_for(model, resolve_class(sc, arg(a, "fiber")));
  const auto rep = twist_parity_check(resolve_isometry(sc, arg(a, "isometry")), cb, model, int_arg(a, "n"));
  return Json{{"case", rep.case_number}, {"n", rep.n}, {"two_k", rep.two_k}, {"r", rep.r}, {"holds", rep.holds}};
}

std::map<int, int> bounds_arg(const Json& a) {
  std::map<int, int> bounds;
  if (!a.is_object() || !a.contains("bounds")) return bounds;
  const Json& b = a.at("bounds");
  if (!b.is_object()) usage("bounds must map exponents to integers");
  for (const auto& [k, v] : b.items()) {
    int e = 0;
    try {
      e = std::stoi(k);
    } catch (const std::exception&) {
      usage("bound exponent \"" + k + "\" is not an integer");
    }
    if (!v.is_number_integer()) usage("bound values must be integers");
    bounds[e] = v.get<int>();
  }
  return bounds;
}

Json op_characters(const Scenario&, const Json& a) {
  const auto res = character_admissibility(int_arg(a, "order"), int_arg(a, "rank"), bounds_arg(a));
  return Json{{"divisors", res.divisors}, {"profiles", res.profiles}, {"count", res.profiles.size()}};
}

const std::unordered_map<std::string, Op>& op_table() {
  static const std::unordered_map<std::string, Op> table{
      {"scalar", op_scalar},
      {"map", op_map},
      {"projective_eq", op_projective_eq},
      {"degree_sequence", op_degree_sequence},
      {"evaluate", op_evaluate},
      {"pencil_action", op_pencil_action},
      {"map_group", op_map_group},
      {"pencil_quotient", op_pencil_quotient},
      {"orbit_avoids", op_orbit_avoids},
      {"negative_curves", op_negative_curves},
      {"negative_candidates", op_negative_candidates},
      {"conic_bundles", op_conic_bundles},
      {"sections", op_sections},
      {"section_bound", op_section_bound},
      {"intersect", op_intersect},
      {"isometry", op_isometry},
      {"extend", op_extend},
      {"lattice_group", op_lattice_group},
      {"orbits", op_orbits},
      {"pair_minimal", op_pair_minimal},
      {"twisted_fibers", op_twisted_fibers},
      {"triple_minimal", op_triple_minimal},
      {"involution_twists", op_involution_twists},
      {"lefschetz", op_lefschetz},
      {"twist_parity", op_twist_parity},
      {"characters", op_characters},
  };
  return table;
}

}  // namespace

Json apply_op(const Scenario& scenario, const std::string& op, const Json& args) {
  const auto& table = op_table();
  auto it = table.find(op);
  if (it == table.end()) usage("unknown operation \"" + op + "\"");
  return it->second(scenario, args);
}

Json evaluate_op(const Scenario& scenario, const std::string& op, const Json& args) {
  try {
    return apply_op(scenario, op, args);
  } catch (const Error& e) {
    return Json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
  } catch (const std::exception& e) {
    return Json{{"error", "internal"}, {"message", e.what()}};
  }
}

}  // namespace cremona
