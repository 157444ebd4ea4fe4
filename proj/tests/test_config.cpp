#include "support.hpp"

#include "qale/config.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace qale;
using namespace qale::test;

namespace {

const char* kZ4 = R"({
  "name": "t",
  "dimension": 3,
  "generators": [[["-1", "0", "0"], ["0", "i", "0"], ["0", "0", "i"]]],
  "seed": 7
})";

}  // namespace

TEST_CASE("matrix entry tokens") {
  using nlohmann::json;
  CHECK(parse_entry(json("0"), "e") == Complex(0, 0));
  CHECK(parse_entry(json("-1"), "e") == Complex(-1, 0));
  CHECK(parse_entry(json("i"), "e") == I);
  CHECK(parse_entry(json("-i"), "e") == -I);
  CHECK(std::abs(parse_entry(json("cis(1/4)"), "e") - I) < 1e-15);
  CHECK(std::abs(parse_entry(json("-cis(1/2)"), "e") - 1.0) < 1e-15);
  CHECK(std::abs(parse_entry(json("cis(-1/3)"), "e") - std::polar(1.0, -2 * std::numbers::pi / 3)) <
        1e-15);
  CHECK(parse_entry(json::parse("[0.5, -0.25]"), "e") == Complex(0.5, -0.25));
  for (const char* bad : {"cis(1/0)", "cis(1/2000000)", "2", "j", "cis(a/3)"})
    CHECK(kind_of([&] { parse_entry(json(bad), "e"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_entry(json::parse("[1]"), "e"); }) == ErrorKind::ParseError);
}

TEST_CASE("config parsing") {
  const auto c = parse_group_config(kZ4);
  CHECK(c.name == "t");
  CHECK(c.dimension == 3);
  REQUIRE(c.generators.size() == 1);
  CHECK(sup_norm(c.generators[0] - diag({-1.0, I, I})) == 0.0);
  CHECK(c.seed == 7);
  CHECK(c.eh_a == 1.0);
  CHECK(c.cutoff_R == 1.0);
  CHECK_FALSE(c.expected_strata);
  CHECK(c.source_text == kZ4);

  try {
    parse_group_config("{\n  \"name\": \"x\",\n  \"dimension\": 3\n,,}");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  try {
    parse_group_config(R"({"name":"x","dimension":2,"generators":[[["1","0"],["0","q"]]]})");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("/generators/0/1/1") != std::string::npos);
  }
  CHECK(kind_of([] { parse_group_config(R"({"name":"x","dimension":2})"); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([] {
          parse_group_config(R"({"name":"x","dimension":2,"generators":[[["1","1"],["0","1"]]]})");
        }) == ErrorKind::NonUnitaryGenerator);
  CHECK(kind_of([] {
          parse_group_config(R"({"name":"x","dimension":3,"generators":[[["1","0"],["0","1"]]]})");
        }) == ErrorKind::ParseError);
}

TEST_CASE("bundled configs") {
  const std::map<std::string, std::size_t> expected{
      {"c3_z4", 3}, {"c3_z22", 5}, {"c4_z23", 8}, {"c4_s3", 5}};
  for (const auto& [name, n] : expected) {
    const auto c = load_group_config(bundled_config(name));
    CHECK(c.name == name);
    REQUIRE(c.expected_strata);
    CHECK(*c.expected_strata == n);
  }
  CHECK(load_group_config(bundled_config("c2_z2")).dimension == 2);
  CHECK_THROWS_AS(load_group_config(bundled_config("nope")), Error);
}

TEST_CASE("digest and seed override") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hex_digest("a") == "af63dc4c8601ec8c");
  CHECK(hex_digest("").size() == 16);

  ::unsetenv("QALE_SEED");
  CHECK(effective_seed(42) == 42);
  ::setenv("QALE_SEED", "17", 1);
  CHECK(effective_seed(42) == 17);
  ::setenv("QALE_SEED", "x1", 1);
  CHECK(kind_of([] { effective_seed(0); }) == ErrorKind::ParseError);
  ::unsetenv("QALE_SEED");
}
