#include "polyapprox/bodyspec.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

using namespace polyapprox;

namespace {

Vector v2(double x, double y) { return make_vector({x, y}); }

void expect_parse_error(const std::string& text, int line, int column, const std::string& needle) {
  try {
    parse_body_spec(text);
    FAIL() << "no error for:\n" << text;
  } catch (const SpecParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), column) << e.what();
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
}

}  // namespace

TEST(BodySpec, Ball) {
  const ConvexBody b = parse_body_spec("# unit disc\nkind = ball\ncenter = 1 2\nradius = 0.5\n");
  EXPECT_EQ(b.dim(), 2);
  EXPECT_NEAR(support(b, v2(1, 0)), 1.5, 1e-15);
}

TEST(BodySpec, AllKinds) {
  const ConvexBody e = parse_body_spec(
      "kind = ellipsoid\ncenter = 0 0\naxes = 2 1\nrotation = 0 -1 1 0  # quarter turn\n");
  EXPECT_NEAR(support(e, v2(0, 1)), 2.0, 1e-12);
  EXPECT_NEAR(support(parse_body_spec("kind = power_cap\nexponent = 2\n"), v2(0, 1)), 1.0, 1e-12);
  const ConvexBody lens = parse_body_spec(
      "kind = ball_intersection\nradius = 1\ncenter = -0.25 0\ncenter = 0.25 0\n");
  EXPECT_NEAR(support(lens, v2(1, 0)), 0.75, 1e-12);
  const ConvexBody sum = parse_body_spec(
      "kind = minkowski_sum\nleft {\n  kind = ball\n  center = 0 0\n  radius = 1\n}\n"
      "right {\n  kind = ball\n  center = 1 0\n  radius = 2\n}\n");
  EXPECT_NEAR(support(sum, v2(1, 0)), 4.0, 1e-12);
  const ConvexBody moved = parse_body_spec(
      "kind = translate\nshift = 0 3\ninner {\n  kind = power_cap\n  exponent = 3\n}\n");
  EXPECT_NEAR(support(moved, v2(0, 1)), 4.0, 1e-12);
  const ConvexBody sq = parse_body_spec(
      "kind = hpolytope\nhalfspace = 1 0 1\nhalfspace = -1 0 1\nhalfspace = 0 1 1\n"
      "halfspace = 0 -1 1\n");
  EXPECT_NEAR(support(sq, v2(1, 1)), 2.0, 1e-9);
  const ConvexBody ball3 = parse_body_spec("kind = ball\ncenter = 0 0 0\nradius = 2\n");
  EXPECT_EQ(ball3.dim(), 3);
}

TEST(BodySpec, ErrorsCarryPositions) {
  expect_parse_error("kind = ball\ncenter = 0 0\nradius = 1\ncolour = red\n", 4, 1, "unknown key");
  expect_parse_error("kind = ball\ncenter = 0 x\nradius = 1\n", 2, 12, "expected a number");
  expect_parse_error("kind = cube\n", 1, 8, "unknown body kind");
  expect_parse_error("kind = ball\nradius = 1\n", 1, 1, "missing key 'center'");
  expect_parse_error("kind = ball\ncenter = 0 0\nradius = 1\nradius = 2\n", 4, 1, "duplicate key");
  expect_parse_error("kind = translate\nshift = 0 0\ninner {\n  kind = ball\n", 3, 1, "not closed");
  expect_parse_error("kind = ball\n}\n", 2, 1, "unmatched");
  expect_parse_error("kind = ball\ncenter 0 0\n", 2, 8, "expected '='");
  expect_parse_error("kind = minkowski_sum\nleft {\n kind = ball\n center = 0 0\n radius = 1\n}\n"
                     "middle {\n}\n",
                     7, 1, "unknown block");
  expect_parse_error("kind = minkowski_sum\nleft {\n kind = ball\n center = 0 0\n radius = 1\n}\n", 1,
                     1, "missing block 'right");
  expect_parse_error("kind = ball\ncenter = 0 0\nradius =\n", 3, 9, "missing value");
}

TEST(BodySpec, GeometryErrorsPropagate) {
  try {
    parse_body_spec("kind = ball\ncenter = 0 0\nradius = -1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidBody);
  }
}

TEST(BodySpec, LoadFromFile) {
  const std::string path = ::testing::TempDir() + "/polyapprox_spec.txt";
  {
    std::ofstream out(path);
    out << "kind = ball\r\ncenter = 0 0\r\nradius = 3\r\n";
  }
  EXPECT_NEAR(support(load_body_spec(path), v2(0, 1)), 3.0, 1e-15);
  std::remove(path.c_str());
  try {
    load_body_spec(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
}
