#include <doctest.h>

#include <cstring>
#include <string>

#include "ffc/ffc.h"

namespace {

struct Str {
  char* s = nullptr;
  ~Str() { ffc_string_free(s); }
  std::string get() const { return s ? s : ""; }
};

}  // namespace

TEST_CASE("version and error reporting") {
  CHECK(std::string(ffc_version()).find('.') != std::string::npos);
  ffc_word* w = nullptr;
  ffc_status st = ffc_word_parse(3, "d", &w);
  CHECK(st == FFC_ERROR_PARSE);
  CHECK(std::string(ffc_last_error()).find("parse") != std::string::npos);
}

TEST_CASE("word handles") {
  ffc_word* w = nullptr;
  REQUIRE(ffc_word_parse(3, "abA", &w) == FFC_OK);
  CHECK(ffc_word_length(w) == 3);
  Str text;
  REQUIRE(ffc_word_format(w, 3, &text.s) == FFC_OK);
  CHECK(text.get() == "abA");
  ffc_word_free(w);
}

TEST_CASE("graph handles") {
  ffc_graph* g = nullptr;
  REQUIRE(ffc_graph_parse("n=2 base=0\n0 1 1\n1 0 2\n", &g) == FFC_OK);
  Str ser;
  REQUIRE(ffc_graph_serialize(g, &ser.s) == FFC_OK);
  CHECK(ser.get().find("n=2 base=0") == 0);
  ffc_graph* folded = nullptr;
  REQUIRE(ffc_graph_fold(g, &folded) == FFC_OK);
  int girth = 0;
  REQUIRE(ffc_graph_girth(folded, &girth) == FFC_OK);
  CHECK(girth == 2);
  Str dot;
  REQUIRE(ffc_graph_dot(folded, &dot.s) == FFC_OK);
  CHECK(dot.get().find("digraph") != std::string::npos);
  ffc_graph_free(folded);
  ffc_graph_free(g);
}

TEST_CASE("subgroup handles") {
  ffc_subgroup* h = nullptr;
  REQUIRE(ffc_subgroup_create(3, "a,bb", 1, &h) == FFC_OK);
  CHECK(ffc_subgroup_rank(h) == 2);
  int member = -1;
  REQUIRE(ffc_subgroup_contains(h, "bbaBB", &member) == FFC_OK);
  CHECK(member == 1);
  REQUIRE(ffc_subgroup_contains(h, "b", &member) == FFC_OK);
  CHECK(member == 0);
  ffc_subgroup_free(h);
}

TEST_CASE("operation entry points") {
  Str out;
  REQUIRE(ffc_op_intersect(3, "a,bb", "b", 0, &out.s) == FFC_OK);
  CHECK(out.get().find("based rank: 1") != std::string::npos);

  Str fout;
  int is_factor = -1;
  REQUIRE(ffc_op_factor(3, "ab", 0, &is_factor, &fout.s) == FFC_OK);
  CHECK(is_factor == 1);
  Str fout2;
  REQUIRE(ffc_op_factor(3, "abAB", 0, &is_factor, &fout2.s) == FFC_OK);
  CHECK(is_factor == 0);

  int anti = -1;
  Str aout;
  REQUIRE(ffc_op_antipodal(3, "a,b", "cac", 0, &anti, &aout.s) == FFC_OK);
  CHECK(anti == 0);
  Str aout2;
  REQUIRE(ffc_op_antipodal(3, "a,b", "acB", 0, &anti, &aout2.s) == FFC_OK);
  CHECK(anti == 1);
  CHECK(aout2.get() == "antipodal: true\n");
}

TEST_CASE("apartment report with replacements") {
  // figure-style fake: vertex {2} becomes <ab^2>, face {2,3} becomes <ab^2, c>
  Str out;
  int pass = -1;
  REQUIRE(ffc_op_apartment(3, "a,b,c", "2=abb;2,3=abb,c", 0, 40, 0, &pass, &out.s) == FFC_OK);
  CHECK(pass == 0);
  CHECK(out.get().find("FAIL") != std::string::npos);

  Str ok;
  REQUIRE(ffc_op_apartment(3, "a,b,c", nullptr, 0, 40, 0, &pass, &ok.s) == FFC_OK);
  CHECK(pass == 1);
}

TEST_CASE("json rendering is valid and distinct") {
  Str text, json;
  int pass = -1;
  REQUIRE(ffc_op_fake_family(3, 0, &pass, &text.s) == FFC_OK);
  CHECK(pass == 1);
  REQUIRE(ffc_op_fake_family(3, 1, &pass, &json.s) == FFC_OK);
  CHECK(json.get().find("\"all_pass\": true") != std::string::npos);
}

TEST_CASE("example68 and suite entry points") {
  Str out;
  int fake = -1;
  REQUIRE(ffc_op_example68(40, 0, &fake, &out.s) == FFC_OK);
  CHECK(fake == 1);

  Str s1, s2;
  int all_pass = -1;
  REQUIRE(ffc_op_suite(3, 20250809ull, 40, 0, 0, &all_pass, &s1.s) == FFC_OK);
  CHECK(all_pass == 1);
  REQUIRE(ffc_op_suite(3, 20250809ull, 40, 0, 0, &all_pass, &s2.s) == FFC_OK);
  CHECK(s1.get() == s2.get());  // byte-identical reruns
}

TEST_CASE("dot entry points") {
  Str poset, cube;
  REQUIRE(ffc_op_apartment_dot(3, "a,b,c", 1, &poset.s) == FFC_OK);
  CHECK(poset.get().find("digraph") != std::string::npos);
  REQUIRE(ffc_op_cube_dot(3, "a,b,c", &cube.s) == FFC_OK);
  CHECK(cube.get().find("snop_cube") != std::string::npos);
}

TEST_CASE("sticks, snops, supersticks, overlap entry points") {
  Str sticks;
  REQUIRE(ffc_op_sticks(3, "a,b,c", 0, 0, 0, 0, &sticks.s) == FFC_OK);
  CHECK(sticks.get().find("sticks: 12") != std::string::npos);
  Str snops;
  REQUIRE(ffc_op_snops(3, "a,b,c", 0, &snops.s) == FFC_OK);
  CHECK(snops.get().find("snops: 8") != std::string::npos);
  Str ss;
  REQUIRE(ffc_op_supersticks(3, "a,b,c", 1, 1, 2, 3, 0, &ss.s) == FFC_OK);
  CHECK(ss.get().find("supersticks: 8") != std::string::npos);
  Str ov;
  int clean = -1;
  REQUIRE(ffc_op_overlap(3, "a,b,c", 1, 2, 0, 0, &clean, &ov.s) == FFC_OK);
  CHECK(clean == 1);
  CHECK(ov.get().find("exceptional sticks: 3") != std::string::npos);
}
