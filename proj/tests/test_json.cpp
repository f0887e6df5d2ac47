#include <gtest/gtest.h>

#include "cremona/action.hpp"
#include "cremona/error.hpp"
#include "cremona/json_io.hpp"

using namespace cremona;

TEST(JsonIo, ScalarsAndPoints) {
  EXPECT_EQ(scalar_from_json(Json(3)), CycScalar(3L));
  EXPECT_EQ(to_json(scalar_from_json(Json("zeta(6)"))), Json("1 + zeta(3)"));
  const ProjPoint p = point_from_json(Json::parse(R"j([2, 4, "2*zeta(4)"])j"));
  EXPECT_EQ(point_from_json(to_json(p)), p);
  EXPECT_EQ(point_from_json(Json::parse(R"j({"coords": [1, 2, "zeta(4)"]})j")), p);
  EXPECT_THROW(point_from_json(Json::parse("[0, 0, 0]")), Error);
  EXPECT_THROW(point_from_json(Json::parse("[1, 2]")), Error);
}

TEST(JsonIo, MapsRoundTrip) {
  const ProjMap f = map_from_json(Json::parse(R"j(["y*z*(y-z)", "x*z*(y+z)", "x*y*(y+z)"])j"));
  EXPECT_EQ(map_from_json(to_json(f)), f);
  EXPECT_EQ(map_from_json(Json::parse(R"j({"components": ["x", "y", "z"]})j")), ProjMap::identity());
  EXPECT_THROW(map_from_json(Json::parse(R"j(["x", "y"])j")), Error);
}

TEST(JsonIo, ModelsRoundTrip) {
  const Json j = Json::parse(R"j({"points": [{"proper": [1, 0, 0]}, {"proper": [0, 1, 0]}, {"proper": [0, 0, 1]},
                                            {"proper": [0, 1, 1]}, {"near": {"parent": 0, "line": [0, 1, 1]}}]})j");
  const SurfaceModel m = model_from_json(j);
  EXPECT_EQ(m.rank(), 5);
  const SurfaceModel again = model_from_json(to_json(m));
  EXPECT_EQ(again.curve_labels(), m.curve_labels());
  EXPECT_EQ(model_from_json(Json::parse(R"j({"rank": 6})j")).rank(), 6);
  EXPECT_THROW(model_from_json(Json::parse(R"j({"points": [{"near": {"parent": 3, "line": [0, 1, 0]}}]})j")), Error);
  EXPECT_THROW(model_from_json(Json::parse(R"j({"points": [{"proper": [1, 0, 0]}, {"proper": [2, 0, 0]}]})j")), Error);
}

TEST(JsonIo, ClassesAndIsometries) {
  const DivisorClass c = class_from_json(Json("2L-E1-E2-E3-E4-E5"), 5);
  EXPECT_EQ(class_from_json(to_json(c), 5), c);
  EXPECT_EQ(class_from_json(Json::parse("[1, -1, 0, 0, 0, 0]"), 5), DivisorClass::parse("L-E1", 5));
  EXPECT_EQ(class_from_json(Json::parse(R"j({"ell": 1, "e": [0, -1, -1, 0, 0]})j"), 5), DivisorClass::parse("D23", 5));
  EXPECT_THROW(class_from_json(Json::parse("[1, -1]"), 5), Error);

  const LatticeIsometry swap12 = isometry_from_json(Json::parse(R"j({"matrix": [[1,0,0,0],[0,0,1,0],[0,1,0,0],[0,0,0,1]]})j"), nullptr);
  EXPECT_EQ(isometry_from_json(to_json(swap12), nullptr), swap12);
  // the same permutation written in the basis (E1, E2, E3, L)
  const LatticeIsometry reordered = isometry_from_json(
      Json::parse(R"j({"matrix": [[0,1,0,0],[1,0,0,0],[0,0,1,0],[0,0,0,1]], "basis": ["E1","E2","E3","L"]})j"), nullptr);
  EXPECT_EQ(reordered, swap12);
  const SurfaceModel m = model_from_json(Json::parse(R"j({"points": [{"proper": [1,0,0]}, {"proper": [0,1,0]}, {"proper": [0,0,1]}]})j"));
  EXPECT_EQ(isometry_from_json(Json::parse(R"j({"curve_perm": [["E1","E2"],["D13","D23"]]})j"), &m), swap12);
  EXPECT_THROW(isometry_from_json(Json::parse(R"j({"curve_perm": [["E1","D12"]]})j"), &m), Error);
}

TEST(JsonIo, FixedLoci) {
  const FixedLocus f = fixed_locus_from_json(Json::parse(R"j({"isolated_points": 2, "curve_genera": [0, 1]})j"));
  EXPECT_EQ(f.euler_characteristic(), 2 + 2 + 0);
  EXPECT_EQ(fixed_locus_from_json(Json::parse(R"j({"euler": 8})j")).euler_characteristic(), 8);
}

TEST(JsonIo, MalformedTextIsParseError) {
  try {
    (void)parse_json("{\"a\": ");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
  }
}
