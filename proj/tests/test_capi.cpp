#include <gtest/gtest.h>

#include <string>

#include "cremona/cremona.h"

namespace {

struct Ctx {
  crm_context* ctx = crm_context_new();
  ~Ctx() { crm_context_free(ctx); }
};

std::string take(char* s) {
  std::string out = s == nullptr ? "" : s;
  crm_string_free(s);
  return out;
}

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(crm_version(), "1.0.0");
  EXPECT_STREQ(crm_status_name(CRM_OK), "ok");
  EXPECT_STREQ(crm_status_name(CRM_ERR_NON_INTEGRAL), "non-integral");
  EXPECT_STREQ(crm_status_name(CRM_ERR_USAGE), "usage");
  EXPECT_STREQ(crm_status_name(CRM_ERR_INTERNAL), "internal");
  EXPECT_STREQ(crm_status_name(static_cast<crm_status>(99)), "unknown");
}

TEST(CApi, MapsComposeAndCompare) {
  Ctx c;
  crm_map* h1 = nullptr;
  crm_map* h2 = nullptr;
  crm_map* minus_x = nullptr;
  ASSERT_EQ(crm_map_parse(c.ctx, "y*z", "x*y", "-x*z", &h1), CRM_OK);
  ASSERT_EQ(crm_map_parse(c.ctx, "y*z*(y-z)", "x*z*(y+z)", "x*y*(y+z)", &h2), CRM_OK);
  ASSERT_EQ(crm_map_parse(c.ctx, "-x", "y", "z", &minus_x), CRM_OK);
  crm_map* sq1 = nullptr;
  crm_map* sq2 = nullptr;
  ASSERT_EQ(crm_map_compose(c.ctx, h1, h1, &sq1), CRM_OK);
  ASSERT_EQ(crm_map_compose(c.ctx, h2, h2, &sq2), CRM_OK);
  EXPECT_EQ(crm_map_equal(sq1, minus_x), 1);
  EXPECT_EQ(crm_map_equal(sq2, minus_x), 1);
  EXPECT_EQ(crm_map_equal(h1, h2), 0);
  EXPECT_EQ(crm_map_degree(h2), 3);
  char* text = nullptr;
  ASSERT_EQ(crm_map_to_string(c.ctx, sq1, &text), CRM_OK);
  EXPECT_EQ(take(text), "(x : -y : -z)");

  const crm_map* gens[] = {h1, h2};
  crm_group* g = nullptr;
  ASSERT_EQ(crm_map_group_closure(c.ctx, gens, 2, 64, &g), CRM_OK);
  EXPECT_EQ(crm_group_order(g), 8u);
  EXPECT_EQ(crm_group_is_abelian(g), 1);
  crm_map* e = nullptr;
  EXPECT_EQ(crm_group_element(c.ctx, g, 8, &e), CRM_ERR_USAGE);
  ASSERT_EQ(crm_group_element(c.ctx, g, 0, &e), CRM_OK);
  crm_map_free(e);
  crm_group_free(g);
  ASSERT_EQ(crm_map_group_closure(c.ctx, gens, 2, 4, &g), CRM_ERR_CAP_EXCEEDED);
  EXPECT_NE(std::string(crm_last_error(c.ctx)), "");
  for (crm_map* m : {h1, h2, minus_x, sq1, sq2}) crm_map_free(m);
}

TEST(CApi, ErrorsReportThroughContext) {
  Ctx c;
  crm_map* m = nullptr;
  EXPECT_EQ(crm_map_parse(c.ctx, "x", "y^2", "z", &m), CRM_ERR_MALFORMED);
  EXPECT_EQ(m, nullptr);
  EXPECT_EQ(crm_map_parse(c.ctx, "x +", "y", "z", &m), CRM_ERR_PARSE);
  EXPECT_NE(std::string(crm_last_error(c.ctx)).find("offset"), std::string::npos);
  EXPECT_EQ(crm_map_parse(c.ctx, nullptr, "y", "z", &m), CRM_ERR_USAGE);
  ASSERT_EQ(crm_map_parse(c.ctx, "x", "y", "z", &m), CRM_OK);
  EXPECT_STREQ(crm_last_error(c.ctx), "");
  crm_map_free(m);
  EXPECT_EQ(crm_set_conductor_cap(c.ctx, 0), CRM_ERR_USAGE);
}

TEST(CApi, Models) {
  Ctx c;
  crm_model* m = nullptr;
  ASSERT_EQ(crm_model_from_json(c.ctx, R"({"points": [{"proper": [1,0,0]}, {"proper": [0,1,0]}, {"proper": [0,0,1]}]})", &m), CRM_OK);
  EXPECT_EQ(crm_model_rank(m), 3);
  size_t n = 0;
  ASSERT_EQ(crm_model_curve_count(c.ctx, m, &n), CRM_OK);
  EXPECT_EQ(n, 6u);
  char* labels = nullptr;
  ASSERT_EQ(crm_model_curves_json(c.ctx, m, &labels), CRM_OK);
  EXPECT_EQ(take(labels), R"(["E1","E2","E3","D12","D13","D23"])");
  crm_model_free(m);
  EXPECT_EQ(crm_model_from_json(c.ctx, "{", &m), CRM_ERR_PARSE);
}

TEST(CApi, RunCommand) {
  Ctx c;
  char* out = nullptr;
  int code = -1;
  ASSERT_EQ(crm_run_command(c.ctx, "characters", nullptr, R"({"order": 3, "rank": 9, "bounds": {"1": -1}})", &out, &code), CRM_OK);
  EXPECT_EQ(code, 0);
  EXPECT_NE(take(out).find("\"profiles\""), std::string::npos);
  ASSERT_EQ(crm_run_command_text(c.ctx, "lemma", nullptr, R"({"id": "identity-sanity"})", &out, &code), CRM_OK);
  EXPECT_EQ(code, 0);
  EXPECT_NE(take(out).find("PASS identity-sanity/"), std::string::npos);
  ASSERT_EQ(crm_run_command(c.ctx, "lemma", nullptr, R"({"id": "missing"})", &out, &code), CRM_OK);
  EXPECT_EQ(code, 2);
  take(out);
  ASSERT_EQ(crm_run_command(c.ctx, "compose", "not json", nullptr, &out, &code), CRM_OK);
  EXPECT_EQ(code, 2);
  EXPECT_NE(take(out).find("\"parse\""), std::string::npos);
  EXPECT_EQ(crm_run_command(c.ctx, "lemma", nullptr, nullptr, nullptr, &code), CRM_ERR_USAGE);
}

TEST(CApi, ConductorCap) {
  Ctx c;
  const int saved = crm_conductor_cap();
  ASSERT_EQ(crm_set_conductor_cap(c.ctx, 4), CRM_OK);
  crm_map* m = nullptr;
  EXPECT_EQ(crm_map_parse(c.ctx, "zeta(5)*x", "y", "z", &m), CRM_ERR_DOMAIN);
  ASSERT_EQ(crm_set_conductor_cap(c.ctx, saved), CRM_OK);
  ASSERT_EQ(crm_map_parse(c.ctx, "zeta(5)*x", "y", "z", &m), CRM_OK);
  crm_map_free(m);
}
