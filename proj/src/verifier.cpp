#include "cremona/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "cremona/error.hpp"

#ifndef CREMONA_FIXTURE_DIR
#define CREMONA_FIXTURE_DIR "fixtures"
#endif

namespace cremona {
namespace fs = std::filesystem;

namespace {

std::optional<Json> read_json_file(const fs::path& path) {
  if (!fs::exists(path)) return std::nullopt;
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Usage, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_json(buf.str());
  } catch (const Error& e) {
    fail(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

Provenance provenance_from(const std::string& s, const std::string& where) {
  if (s == "published") return Provenance::Published;
  if (s == "trivial") return Provenance::Trivial;
  if (s == "derived") return Provenance::Derived;
  fail(ErrorKind::Parse, where + ": unknown provenance \"" + s + "\"");
}

std::string string_field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_string()) {
    fail(ErrorKind::Parse, where + ": missing string field \"" + key + "\"");
  }
  return j.at(key).get<std::string>();
}

CheckResult run_check(const Registry& registry, const Check& check) {
  CheckResult r;
  r.id = check.id;
  r.expected = check.expected;
  r.provenance = check.provenance;
  r.citation = check.citation;
  r.actual = evaluate_op(registry.scenario(check.scenario), check.op, check.args);
  r.pass = json_matches(check.expected, r.actual);
  return r;
}

void sort_results(std::vector<CheckResult>& checks) {
  std::sort(checks.begin(), checks.end(), [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
}

}  // namespace

const SurfaceModel& Scenario::require_model() const {
  if (!model) fail(ErrorKind::Usage, "scenario \"" + name + "\" has no model");
  return *model;
}

const ProjMap& Scenario::map(const std::string& key) const {
  auto it = maps.find(key);
  if (it == maps.end()) fail(ErrorKind::Usage, "scenario \"" + name + "\" has no map \"" + key + "\"");
  return it->second;
}

const LatticeIsometry& Scenario::isometry(const std::string& key) const {
  auto it = isometries.find(key);
  if (it == isometries.end()) fail(ErrorKind::Usage, "scenario \"" + name + "\" has no isometry \"" + key + "\"");
  return it->second;
}

Scenario load_scenario(const fs::path& dir) {
  Scenario sc;
  sc.name = dir.filename().string();
  if (auto m = read_json_file(dir / "model.json")) sc.model = model_from_json(*m);
  if (auto m = read_json_file(dir / "maps.json")) {
    if (m->contains("maps")) {
      for (const auto& [k, v] : m->at("maps").items()) sc.maps.emplace(k, map_from_json(v));
    }
    if (m->contains("points")) {
      for (const auto& [k, v] : m->at("points").items()) sc.point_sets.emplace(k, points_from_json(v));
    }
  }
  if (auto m = read_json_file(dir / "isometries.json")) {
    const SurfaceModel* model = sc.model ? &*sc.model : nullptr;
    if (m->contains("isometries")) {
      for (const auto& [k, v] : m->at("isometries").items()) sc.isometries.emplace(k, isometry_from_json(v, model));
    }
    if (m->contains("fixed_loci")) {
      for (const auto& [k, v] : m->at("fixed_loci").items()) sc.fixed_loci.emplace(k, fixed_locus_from_json(v));
    }
  }
  return sc;
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Published: return "published";
    case Provenance::Trivial: return "trivial";
    case Provenance::Derived: return "derived";
  }
  return "trivial";
}

Registry Registry::load(const fs::path& root) {
  if (!fs::is_directory(root)) fail(ErrorKind::Usage, "fixture root " + root.string() + " is not a directory");
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory() && fs::exists(entry.path() / "expected.json")) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  Registry reg;
  for (const auto& dir : dirs) {
    Scenario sc = load_scenario(dir);
    const std::string where = (dir / "expected.json").string();
    const Json expected = *read_json_file(dir / "expected.json");
    if (!expected.contains("lemmas") || !expected.at("lemmas").is_array()) {
      fail(ErrorKind::Parse, where + ": expected a \"lemmas\" array");
    }
    for (const auto& lj : expected.at("lemmas")) {
      const std::string id = string_field(lj, "id", where);
      Lemma& lemma = reg.lemmas_[id];
      lemma.id = id;
      if (lj.contains("summary")) lemma.summary = string_field(lj, "summary", where);
      if (!lj.contains("checks") || !lj.at("checks").is_array()) fail(ErrorKind::Parse, where + ": lemma " + id + " has no checks");
      for (const auto& cj : lj.at("checks")) {
        Check c;
        c.id = id + "/" + string_field(cj, "id", where);
        c.scenario = sc.name;
        c.op = string_field(cj, "op", where);
        c.args = cj.contains("args") ? cj.at("args") : Json::object();
        if (!cj.contains("expect")) fail(ErrorKind::Parse, where + ": check " + c.id + " has no \"expect\"");
        c.expected = cj.at("expect");
        c.provenance = provenance_from(string_field(cj, "provenance", where), where);
        if (cj.contains("citation")) c.citation = string_field(cj, "citation", where);
        if (c.provenance == Provenance::Published && c.citation.empty()) {
          fail(ErrorKind::Parse, where + ": published check " + c.id + " needs a citation");
        }
        for (const auto& other : lemma.checks) {
          if (other.id == c.id) fail(ErrorKind::Parse, where + ": duplicate check id " + c.id);
        }
        lemma.checks.push_back(std::move(c));
      }
    }
    reg.scenarios_.emplace(sc.name, std::move(sc));
  }
  if (reg.lemmas_.empty()) reg.warnings_.push_back("no lemmas registered under " + root.string());
  return reg;
}

std::vector<std::string> Registry::lemma_ids() const {
  std::vector<std::string> ids;
  for (const auto& [id, _] : lemmas_) ids.push_back(id);
  return ids;
}

const Lemma& Registry::lemma(const std::string& id) const {
  auto it = lemmas_.find(id);
  if (it == lemmas_.end()) fail(ErrorKind::Usage, "unknown lemma \"" + id + "\"");
  return it->second;
}

const Scenario& Registry::scenario(const std::string& name) const {
  auto it = scenarios_.find(name);
  if (it == scenarios_.end()) fail(ErrorKind::Usage, "unknown scenario \"" + name + "\"");
  return it->second;
}

fs::path default_fixture_root() {
  if (const char* env = std::getenv("CREMONA_FIXTURES"); env != nullptr && *env != '\0') return env;
  return CREMONA_FIXTURE_DIR;
}

bool json_matches(const Json& expected, const Json& actual) {
  if (expected.is_object()) {
    if (!actual.is_object()) return false;
    for (const auto& [k, v] : expected.items()) {
      if (!actual.contains(k) || !json_matches(v, actual.at(k))) return false;
    }
    return true;
  }
  if (expected.is_array()) {
    if (!actual.is_array() || actual.size() != expected.size()) return false;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (!json_matches(expected[i], actual[i])) return false;
    }
    return true;
  }
  return expected == actual;
}

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

Json Report::to_json() const {
  Json list = Json::array();
  std::size_t passed = 0;
  for (const auto& c : checks) {
    if (c.pass) ++passed;
    Json j{{"id", c.id},
           {"verdict", c.pass ? "pass" : "fail"},
           {"expected", c.expected},
           {"actual", c.actual},
           {"provenance", std::string(cremona::to_string(c.provenance))}};
    if (!c.citation.empty()) j["citation"] = c.citation;
    list.push_back(std::move(j));
  }
  return Json{{"name", name},
              {"pass", pass()},
              {"passed", passed},
              {"failed", checks.size() - passed},
              {"checks", list},
              {"warnings", warnings}};
}

std::string Report::to_text() const {
  std::ostringstream out;
  std::size_t passed = 0;
  for (const auto& c : checks) {
    if (c.pass) ++passed;
    out << (c.pass ? "PASS " : "FAIL ") << c.id << "\n";
    if (!c.pass) {
      out << "     expected: " << c.expected.dump() << "\n";
      out << "     actual:   " << c.actual.dump() << "\n";
    }
  }
  for (const auto& w : warnings) out << "warning: " << w << "\n";
  out << name << ": " << passed << "/" << checks.size() << " checks passed\n";
  return out.str();
}

Report run_lemma(const Registry& registry, const std::string& id) {
  const Lemma& lemma = registry.lemma(id);
  Report rep;
  rep.name = id;
  for (const auto& c : lemma.checks) rep.checks.push_back(run_check(registry, c));
  sort_results(rep.checks);
  return rep;
}

Report run_all(const Registry& registry, unsigned threads) {
  std::vector<const Check*> checks;
  for (const auto& id : registry.lemma_ids()) {
    for (const auto& c : registry.lemma(id).checks) checks.push_back(&c);
  }
  std::vector<CheckResult> results(checks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < checks.size(); i = next++) results[i] = run_check(registry, *checks[i]);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(checks.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  Report rep;
  rep.name = "all";
  rep.checks = std::move(results);
  sort_results(rep.checks);
  rep.warnings = registry.warnings();
  return rep;
}

Json list_lemmas(const Registry& registry) {
  Json out = Json::array();
  for (const auto& id : registry.lemma_ids()) {
    const Lemma& l = registry.lemma(id);
    out.push_back(Json{{"id", id}, {"summary", l.summary}, {"checks", l.checks.size()}});
  }
  return out;
}

}  // namespace cremona
