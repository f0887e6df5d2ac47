#include "cremona/json_io.hpp"

#include <algorithm>

#include "cremona/error.hpp"

namespace cremona {
namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::Parse, what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::array<std::string, 3> triple_strings(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) bad(std::string(what) + " needs exactly three entries");
  std::array<std::string, 3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    const Json& v = j[i];
    if (v.is_string()) {
      out[i] = v.get<std::string>();
    } else if (v.is_number_integer()) {
      out[i] = std::to_string(v.get<long long>());
    } else {
      bad(std::string(what) + " entries must be strings or integers");
    }
  }
  return out;
}

std::array<CycScalar, 3> scalar_triple(const Json& j, const char* what) {
  const auto s = triple_strings(j, what);
  return {CycScalar::parse(s[0]), CycScalar::parse(s[1]), CycScalar::parse(s[2])};
}

std::vector<std::vector<int>> int_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) bad("matrix must be a nonempty array of rows");
  std::vector<std::vector<int>> rows;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != j.size()) bad("matrix must be square");
    std::vector<int> r;
    for (const auto& v : row) r.push_back(as_int(v, "matrix entry"));
    rows.push_back(std::move(r));
  }
  return rows;
}

std::size_t basis_position(const std::string& label, std::size_t n) {
  if (label == "L") return 0;
  if (label.size() >= 2 && label[0] == 'E') {
    try {
      const std::size_t i = std::stoul(label.substr(1));
      if (i >= 1 && i < n && std::to_string(i) == label.substr(1)) return i;
    } catch (const std::exception&) {
    }
  }
  bad("unknown basis label \"" + label + "\"");
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

CycScalar scalar_from_json(const Json& j) {
  if (j.is_number_integer()) return CycScalar(static_cast<long>(j.get<long long>()));
  return CycScalar::parse(as_string(j, "scalar"));
}

Json to_json(const CycScalar& s) { return s.to_string(); }

ProjPoint point_from_json(const Json& j) {
  if (j.is_object()) return ProjPoint(scalar_triple(member(j, "coords"), "point"));
  return ProjPoint(scalar_triple(j, "point"));
}

Json to_json(const ProjPoint& p) {
  const auto s = p.coord_strings();
  return Json::array({s[0], s[1], s[2]});
}

std::vector<ProjPoint> points_from_json(const Json& j) {
  if (!j.is_array()) bad("point list must be an array");
  std::vector<ProjPoint> out;
  for (const auto& p : j) out.push_back(point_from_json(p));
  return out;
}

ProjMap map_from_json(const Json& j) {
  const Json& c = j.is_object() ? member(j, "components") : j;
  return ProjMap::parse(triple_strings(c, "map"));
}

Json to_json(const ProjMap& f) {
  const auto s = f.component_strings();
  return Json::array({s[0], s[1], s[2]});
}

SurfaceModel model_from_json(const Json& j) {
  if (!j.is_object()) bad("model must be an object");
  if (!j.contains("points")) return SurfaceModel::lattice_only(as_int(member(j, "rank"), "rank"));
  const Json& pts = j.at("points");
  if (!pts.is_array()) bad("model points must be an array");
  std::vector<BlowupPoint> points;
  for (const auto& p : pts) {
    if (p.is_object() && p.contains("proper")) {
      points.push_back(BlowupPoint::at(point_from_json(p.at("proper"))));
    } else if (p.is_object() && p.contains("near")) {
      const Json& n = p.at("near");
      points.push_back(BlowupPoint::near(as_int(member(n, "parent"), "parent"), scalar_triple(member(n, "line"), "line")));
    } else {
      bad("model point needs \"proper\" or \"near\"");
    }
  }
  if (j.contains("rank") && as_int(j.at("rank"), "rank") != static_cast<int>(points.size())) {
    fail(ErrorKind::Malformed, "model rank does not match the number of points");
  }
  return SurfaceModel(std::move(points));
}

Json to_json(const SurfaceModel& model) {
  if (!model.has_coordinates()) return Json{{"rank", model.rank()}};
  Json pts = Json::array();
  for (const auto& p : model.points()) {
    if (p.is_proper()) {
      pts.push_back(Json{{"proper", to_json(*p.proper)}});
    } else {
      pts.push_back(Json{{"near",
                          Json{{"parent", p.parent},
                               {"line", Json::array({p.line[0].to_string(), p.line[1].to_string(),
                                                     p.line[2].to_string()})}}}});
    }
  }
  return Json{{"points", pts}};
}

DivisorClass class_from_json(const Json& j, int r) {
  if (j.is_string()) return DivisorClass::parse(j.get<std::string>(), r);
  if (j.is_array()) {
    std::vector<int> v;
    for (const auto& x : j) v.push_back(as_int(x, "class entry"));
    if (static_cast<int>(v.size()) != r + 1) fail(ErrorKind::RankMismatch, "class vector has the wrong length");
    return DivisorClass::from_vector(v);
  }
  const int ell = as_int(member(j, "ell"), "ell");
  std::vector<int> e;
  for (const auto& x : member(j, "e")) e.push_back(as_int(x, "class entry"));
  if (static_cast<int>(e.size()) != r) fail(ErrorKind::RankMismatch, "class has the wrong number of E entries");
  return DivisorClass(ell, std::move(e));
}

Json to_json(const DivisorClass& c) { return Json{{"label", c.label()}, {"ell", c.ell()}, {"e", c.e()}}; }

LatticeIsometry isometry_from_json(const Json& j, const SurfaceModel* model) {
  if (j.is_object() && j.contains("curve_perm")) {
    if (model == nullptr || !model->has_coordinates()) bad("curve_perm needs a model with coordinates");
    std::vector<std::vector<std::string>> cycles;
    for (const auto& cyc : j.at("curve_perm")) {
      if (!cyc.is_array()) bad("curve_perm entries must be label arrays");
      std::vector<std::string> c;
      for (const auto& l : cyc) c.push_back(as_string(l, "curve label"));
      cycles.push_back(std::move(c));
    }
    return from_curve_cycles(*model, cycles);
  }
  auto rows = int_matrix(member(j, "matrix"));
  if (j.contains("basis")) {
    const Json& basis = j.at("basis");
    const std::size_t n = rows.size();
    if (!basis.is_array() || basis.size() != n) bad("basis must name every row");
    std::vector<std::size_t> pos;
    for (const auto& b : basis) pos.push_back(basis_position(as_string(b, "basis label"), n));
    auto sorted = pos;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) bad("basis labels repeat");
    std::vector<std::vector<int>> reordered(n, std::vector<int>(n, 0));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) reordered[pos[a]][pos[b]] = rows[a][b];
    }
    rows = std::move(reordered);
  }
  if (model != nullptr && static_cast<int>(rows.size()) != model->rank() + 1) {
    fail(ErrorKind::RankMismatch, "matrix size does not match the model rank");
  }
  return LatticeIsometry(std::move(rows));
}

Json to_json(const LatticeIsometry& m) { return Json{{"matrix", m.rows()}}; }

FixedLocus fixed_locus_from_json(const Json& j) {
  if (!j.is_object()) bad("fixed locus must be an object");
  FixedLocus fix;
  if (j.contains("isolated_points")) fix.isolated_points = as_int(j.at("isolated_points"), "isolated_points");
  if (j.contains("curve_genera")) {
    for (const auto& g : j.at("curve_genera")) fix.curve_genera.push_back(as_int(g, "curve genus"));
  }
  if (j.contains("euler")) fix.euler_override = as_int(j.at("euler"), "euler");
  return fix;
}

Json labels_json(const SurfaceModel& model, const std::vector<std::size_t>& indices) {
  Json out = Json::array();
  for (auto i : indices) out.push_back(model.negative_curves().at(i).label());
  return out;
}

Json to_json(const ConicBundle& cb, const SurfaceModel& model) {
  Json fibers = Json::array();
  for (const auto& [a, b] : cb.singular_fibers) {
    fibers.push_back(Json::array({model.negative_curves()[a].label(), model.negative_curves()[b].label()}));
  }
  return Json{{"fiber", cb.fiber.label()}, {"singular_fibers", fibers}};
}

}  // namespace cremona
