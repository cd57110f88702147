#include <gtest/gtest.h>

#include "support.hpp"

namespace orthokernel {
namespace {

using nlohmann::json;
using test::vec;

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("-3/7"), Rational(-3) / 7);
  EXPECT_EQ(parse_rational("4"), Rational(4));
  EXPECT_EQ(parse_rational("+2/6"), Rational(1) / 3);
  EXPECT_EQ(to_string(Rational(-3) / 7), "-3/7");
  EXPECT_EQ(to_string(Rational(6) / 3), "2");
  EXPECT_EQ(to_string(Rational(0)), "0");
  EXPECT_EQ(to_string(parse_rational("-10/4")), "-5/2");
}

TEST(Rational, MalformedInput) {
  for (const char* bad : {"", "/", "1/", "/2", "1/0", "1.5", "a", "1/-2", "1//2", " 1"})
    EXPECT_THROW(parse_rational(bad), InputError) << bad;
}

TEST(Rational, LargeValuesSurvive) {
  const std::string big = "123456789012345678901234567891/7";
  EXPECT_EQ(to_string(parse_rational(big)), big);
}

TEST(Json, VectorRoundTrip) {
  const RVector v = vec({test::q("1/2"), -3, 0});
  const json j = vector_to_json(v);
  EXPECT_EQ(j, json::parse(R"(["1/2", "-3", "0"])"));
  EXPECT_EQ(vector_from_json(j), v);
  EXPECT_THROW(vector_from_json(json::parse(R"([1.5])")), InputError);
  EXPECT_THROW(vector_from_json(json::parse(R"({"a": 1})")), InputError);
}

TEST(Json, FlatFormat) {
  const auto s = test::euclid(2);
  const Flat x = test::flat(s, vec({0, test::q("1/2")}), {vec({2, 0})});
  EXPECT_EQ(flat_to_json(x), json::parse(R"({"point": ["0", "1/2"], "basis": [["1", "0"]]})"));
  const Flat back = flat_from_json(json::parse(R"({"point": ["7", "1/2"], "basis": [["3", "0"], ["-1", "0"]]})"), s);
  EXPECT_EQ(back, x);
}

TEST(Json, FlatErrors) {
  const auto s = test::euclid(2);
  EXPECT_THROW(flat_from_json(json::parse(R"({"point": ["1"]})"), s), InputError);
  EXPECT_THROW(flat_from_json(json::parse(R"({"point": ["1", "2"], "basis": [["1"]]})"), s),
               InputError);
  EXPECT_THROW(flat_from_json(json::parse(R"({"basis": []})"), s), InputError);
}

TEST(Json, SpaceRoundTrip) {
  const Space space(test::mat({{2, 1}, {1, 2}}));
  const json j = space_to_json(space);
  EXPECT_EQ(j, json::parse(R"({"dim": 2, "form": [["2", "1"], ["1", "2"]]})"));
  EXPECT_EQ(*space_from_json(j), space);
}

TEST(Json, SpaceErrors) {
  EXPECT_THROW(space_from_json(json::parse(R"({"form": [["1", "0"], ["0", "-1"]]})")), InputError);
  EXPECT_THROW(space_from_json(json::parse(R"({"dim": 3, "form": [["1"]]})")), InputError);
  EXPECT_THROW(space_from_json(json::parse(R"({"dim": "x", "form": [["1"]]})")), InputError);
  EXPECT_THROW(space_from_json(json::parse(R"({"form": [["1", "2"], ["3", "1"]]})")), InputError);
  EXPECT_THROW(space_from_json(json::parse(R"({"form": [["1", "0"], ["0"]]})")), InputError);
}

}  // namespace
}  // namespace orthokernel
