#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cremona/json_io.hpp"

namespace cremona {

/// Named data of one fixture directory.
struct Scenario {
  std::string name;
  std::optional<SurfaceModel> model;
  std::map<std::string, ProjMap> maps;
  std::map<std::string, std::vector<ProjPoint>> point_sets;
  std::map<std::string, LatticeIsometry> isometries;
  std::map<std::string, FixedLocus> fixed_loci;

  const SurfaceModel& require_model() const;
  const ProjMap& map(const std::string& name) const;
  const LatticeIsometry& isometry(const std::string& name) const;
};

/// Reads model.json, maps.json and isometries.json (each optional) from dir.
Scenario load_scenario(const std::filesystem::path& dir);

enum class Provenance { Published, Trivial, Derived };
std::string_view to_string(Provenance p);

struct Check {
  std::string id;        // "<lemma>/<check>"
  std::string scenario;
  std::string op;
  Json args;
  Json expected;
  Provenance provenance = Provenance::Trivial;
  std::string citation;  // required for published values
};

struct Lemma {
  std::string id;
  std::string summary;
  std::vector<Check> checks;
};

class Registry {
 public:
  /// Every subdirectory of root holding an expected.json is a scenario.
  static Registry load(const std::filesystem::path& root);

  std::vector<std::string> lemma_ids() const;  // sorted
  const Lemma& lemma(const std::string& id) const;  // Usage error when unknown
  const Scenario& scenario(const std::string& name) const;
  bool empty() const { return lemmas_.empty(); }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::map<std::string, Scenario> scenarios_;
  std::map<std::string, Lemma> lemmas_;
  std::vector<std::string> warnings_;
};

/// CREMONA_FIXTURES when set, otherwise the fixture directory of the source tree.
std::filesystem::path default_fixture_root();

struct CheckResult {
  std::string id;
  bool pass = false;
  Json expected;
  Json actual;
  Provenance provenance = Provenance::Trivial;
  std::string citation;
};

struct Report {
  std::string name;
  std::vector<CheckResult> checks;  // sorted by id
  std::vector<std::string> warnings;
  bool pass() const;
  Json to_json() const;
  std::string to_text() const;
};

/// Runs one named operation against a scenario; raises Error on failure.
Json apply_op(const Scenario& scenario, const std::string& op, const Json& args);
/// As apply_op, but errors come back as
/// {"error": kind, "message": text}.
Json evaluate_op(const Scenario& scenario, const std::string& op, const Json& args);
/// Objects in expected constrain only the keys they list; everything else compares exactly.
bool json_matches(const Json& expected, const Json& actual);

Report run_lemma(const Registry& registry, const std::string& id);
/// Runs every lemma on up to threads workers; the report does not depend on threads.
Report run_all(const Registry& registry, unsigned threads = 1);
/// [{"id": ..., "summary": ..., "checks": n}] sorted by id.
Json list_lemmas(const Registry& registry);

}  // namespace cremona
