#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include <unistd.h>

#include "cremona/commands.hpp"
#include "cremona/verifier.hpp"

using namespace cremona;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = CREMONA_FIXTURE_DIR;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("cremona-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

Json read_json(const fs::path& p) {
  std::ifstream in(p);
  return Json::parse(in);
}

void write_json(const fs::path& p, const Json& j) {
  std::ofstream out(p);
  out << j.dump(1);
}

std::vector<std::string> failing_ids(const Report& r) {
  std::vector<std::string> out;
  for (const auto& c : r.checks) {
    if (!c.pass) out.push_back(c.id);
  }
  return out;
}

}  // namespace

TEST(Verifier, EveryRegisteredLemmaPasses) {
  const Registry reg = Registry::load(kFixtures);
  EXPECT_GE(reg.lemma_ids().size(), 20u);
  const Report r = run_all(reg, 1);
  EXPECT_TRUE(r.pass()) << r.to_text();
  EXPECT_TRUE(failing_ids(r).empty());
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Verifier, ReportDoesNotDependOnThreads) {
  const Registry reg = Registry::load(kFixtures);
  const Json one = run_all(reg, 1).to_json();
  for (unsigned t : {2u, 4u, 8u}) EXPECT_EQ(run_all(reg, t).to_json(), one) << t;
}

TEST(Verifier, ChecksAreSortedAndPrefixed) {
  const Registry reg = Registry::load(kFixtures);
  const Report r = run_lemma(reg, "s6-sections");
  ASSERT_FALSE(r.checks.empty());
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    EXPECT_EQ(r.checks[i].id.rfind("s6-sections/", 0), 0u);
    if (i > 0) {
      EXPECT_LT(r.checks[i - 1].id, r.checks[i].id);
    }
  }
}

TEST(Verifier, CorruptedValueIsReportedByItsId) {
  TempDir tmp("mutation");
  fs::copy(kFixtures, tmp.path, fs::copy_options::recursive);
  const fs::path file = tmp.path / "s6" / "expected.json";
  Json j = read_json(file);
  bool changed = false;
  for (auto& lemma : j["lemmas"]) {
    if (lemma["id"] != "s6-sections") continue;
    for (auto& check : lemma["checks"]) {
      if (check["id"] == "bound-n1") {
        check["expect"]["count"] = 3;
        changed = true;
      }
    }
  }
  ASSERT_TRUE(changed);
  write_json(file, j);
  const Registry reg = Registry::load(tmp.path);
  const Report r = run_all(reg, 3);
  EXPECT_FALSE(r.pass());
  EXPECT_EQ(failing_ids(r), std::vector<std::string>{"s6-sections/bound-n1"});
  const auto res = run_command("all", nullptr, Json{{"fixtures", tmp.path.string()}, {"threads", 2}});
  EXPECT_EQ(res.exit_code, 1);
  EXPECT_NE(res.text.find("FAIL s6-sections/bound-n1"), std::string::npos) << res.text;
}

TEST(Verifier, ExpectedErrorsAreChecks) {
  const Registry reg = Registry::load(kFixtures);
  const Report r = run_lemma(reg, "dp4-obstruction");
  EXPECT_TRUE(r.pass());
  bool saw_error = false;
  for (const auto& c : r.checks) saw_error = saw_error || (c.actual.is_object() && c.actual.contains("error"));
  EXPECT_TRUE(saw_error);
}

TEST(Verifier, EmptyRegistryWarnsAndPasses) {
  TempDir tmp("empty");
  const Registry reg = Registry::load(tmp.path);
  EXPECT_TRUE(reg.empty());
  ASSERT_EQ(reg.warnings().size(), 1u);
  EXPECT_NE(reg.warnings()[0].find("no lemmas registered"), std::string::npos);
  const Report r = run_all(reg, 2);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.warnings, reg.warnings());
}

TEST(Verifier, LoadRejectsBadProvenance) {
  TempDir tmp("provenance");
  fs::create_directories(tmp.path / "x");
  write_json(tmp.path / "x" / "expected.json",
             Json::parse(R"({"lemmas": [{"id": "a", "summary": "s", "checks": [
               {"id": "c", "op": "scalar", "args": {"expr": "1"}, "expect": "1", "provenance": "published"}]}]})"));
  EXPECT_THROW(Registry::load(tmp.path), Error);
  write_json(tmp.path / "x" / "expected.json",
             Json::parse(R"({"lemmas": [{"id": "a", "summary": "s", "checks": [
               {"id": "c", "op": "scalar", "args": {"expr": "1"}, "expect": "1", "provenance": "folklore"}]}]})"));
  EXPECT_THROW(Registry::load(tmp.path), Error);
}

TEST(Verifier, PublishedCitationsAreIndexed) {
  std::set<std::string> index;
  std::ifstream in(kFixtures / "CITATIONS.txt");
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) index.insert(line);
  }
  std::set<std::string> used;
  const Registry reg = Registry::load(kFixtures);
  for (const auto& id : reg.lemma_ids()) {
    for (const auto& c : reg.lemma(id).checks) {
      if (c.provenance != Provenance::Published) continue;
      EXPECT_FALSE(c.citation.empty()) << c.id;
      used.insert(c.citation);
    }
  }
  EXPECT_EQ(used, index);
}

TEST(Verifier, JsonMatching) {
  EXPECT_TRUE(json_matches(Json::parse(R"({"a": 1})"), Json::parse(R"({"a": 1, "b": 2})")));
  EXPECT_FALSE(json_matches(Json::parse(R"({"a": 1, "c": 0})"), Json::parse(R"({"a": 1, "b": 2})")));
  EXPECT_FALSE(json_matches(Json::parse("[1, 2]"), Json::parse("[1, 2, 3]")));
  EXPECT_TRUE(json_matches(Json::parse(R"([{"x": 1}])"), Json::parse(R"([{"x": 1, "y": 2}])")));
  EXPECT_FALSE(json_matches(Json(1), Json(1.0 + 1e-12)));
}

TEST(Verifier, FixtureRootFromEnvironment) {
  ::setenv("CREMONA_FIXTURES", "/nonexistent/cremona", 1);
  EXPECT_EQ(default_fixture_root(), fs::path("/nonexistent/cremona"));
  ::unsetenv("CREMONA_FIXTURES");
  EXPECT_EQ(default_fixture_root(), kFixtures);
}

TEST(Commands, ExitCodes) {
  const Json fx{{"fixtures", kFixtures.string()}};
  EXPECT_EQ(run_command("lemma", nullptr, Json{{"fixtures", kFixtures.string()}, {"id", "s6-sections"}}).exit_code, 0);
  const auto unknown = run_command("lemma", nullptr, Json{{"fixtures", kFixtures.string()}, {"id", "nope"}});
  EXPECT_EQ(unknown.exit_code, 2);
  EXPECT_EQ(unknown.output["error"], "usage");
  EXPECT_EQ(run_command("frobnicate", nullptr, nullptr).exit_code, 2);
  EXPECT_EQ(run_command("compose", Json::parse(R"({"f": ["x", "y"], "g": ["x", "y", "z"]})"), nullptr).exit_code, 2);

  const Json s6 = Json::parse(R"({"model": {"points": [{"proper": [1,0,0]}, {"proper": [0,1,0]}, {"proper": [0,0,1]}]}})");
  Json lef = s6;
  lef["isometry"] = "identity";
  lef["fixed"] = Json{{"euler", 6}};
  EXPECT_EQ(run_command("lefschetz", lef, nullptr).exit_code, 0);
  lef["fixed"] = Json{{"euler", 5}};
  const auto bad = run_command("lefschetz", lef, nullptr);
  EXPECT_EQ(bad.exit_code, 1);
  EXPECT_EQ(bad.output["holds"], false);

  const auto cap = run_command("closure", Json::parse(R"({"generators": [["x + y", "y", "z"]]})"), Json{{"cap", 5}});
  EXPECT_EQ(cap.exit_code, 1);
  EXPECT_EQ(cap.output["error"], "cap-exceeded");

  const auto curves = run_command("curves", s6, nullptr);
  EXPECT_EQ(curves.exit_code, 0);
  EXPECT_EQ(curves.output["count"], 6);
  const auto chars = run_command("characters", nullptr, Json{{"order", 2}, {"rank", 2}});
  EXPECT_EQ(chars.output["profiles"], Json::parse("[[1, 1]]"));
  const auto lemmas = run_command("lemmas", nullptr, fx);
  EXPECT_EQ(lemmas.output.size(), Registry::load(kFixtures).lemma_ids().size());
}
