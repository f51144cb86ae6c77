#include <doctest.h>

#include <random>
#include <set>

#include "complex.hpp"

using namespace ffc;

namespace {

Word w(const std::string& s, int n = 3) { return parse_word(s, n); }

std::vector<Word> words(const std::string& csv, int n = 3) { return parse_word_list(csv, n); }

Apartment std3(Mode mode) { return standard_apartment(words("a,b,c"), mode, 3); }

// hand-built apartment from explicit subset assignments
Apartment build(int n, Mode mode, const std::vector<std::pair<Subset, std::string>>& table) {
  Apartment ap;
  ap.n = n;
  ap.mode = mode;
  for (const auto& [s, csv] : table) {
    ap.assignment.emplace(s, make_vertex(subgroup_of(words(csv, n), n, true), mode, std::nullopt));
  }
  return ap;
}

std::string class_key(const std::string& word_text, int n = 3) {
  return make_vertex(subgroup_of({w(word_text, n)}, n, true), Mode::OF, std::nullopt).key;
}

// Figure-style fakes in rank 3.
Apartment fig1_left(Mode mode) {
  return build(3, mode,
               {{0b001, "a"}, {0b010, "abb"}, {0b100, "c"}, {0b011, "a,b"}, {0b110, "abb,c"}, {0b101, "a,c"}});
}
Apartment fig1_right(Mode mode) {
  return build(3, mode,
               {{0b001, "a"}, {0b010, "b"}, {0b100, "accb"}, {0b011, "a,b"}, {0b110, "b,acc"}, {0b101, "a,ccb"}});
}

}  // namespace

TEST_CASE("standard apartments") {
  Apartment ap = std3(Mode::AF);
  CHECK(verify_apartment(ap).all_pass());
  CHECK(is_standard_af(ap));
  CHECK(antipodal_faces_check(ap).all_pass());

  Apartment nielsen_image = standard_apartment(words("ab,b,c"), Mode::AF, 3);
  CHECK(verify_apartment(nielsen_image).all_pass());
  CHECK(is_standard_af(nielsen_image));

  CHECK_THROWS_AS(standard_apartment(words("aa,b,c"), Mode::AF, 3), Error);
}

TEST_CASE("figure one fakes") {
  Apartment left = fig1_left(Mode::AF);
  CHECK(verify_apartment(left).all_pass());
  CHECK_FALSE(is_standard_af(left));

  Apartment right = fig1_right(Mode::AF);
  CHECK(verify_apartment(right).all_pass());
  CHECK_FALSE(is_standard_af(right));
  Report r = antipodal_faces_check(right);
  CHECK_FALSE(r.all_pass());
  // the failure is at the vertex <ac^2b> against <a,b>
  bool failing_vertex3 = false;
  for (const auto& c : r.checks) {
    if (!c.pass && c.name.find("vertex 3") != std::string::npos) failing_vertex3 = true;
  }
  CHECK(failing_vertex3);
}

TEST_CASE("verify_apartment reports rank violations") {
  Apartment broken = build(3, Mode::AF,
                           {{0b001, "a"}, {0b010, "b"}, {0b100, "c"}, {0b011, "a,b"}, {0b110, "b,c"}, {0b101, "a"}});
  Report r = verify_apartment(broken);
  CHECK_FALSE(r.all_pass());
}

TEST_CASE("sticks") {
  Apartment af = std3(Mode::AF);
  auto face = sticks_of(af, 1, 2);
  std::set<std::string> got;
  for (const auto& s : face) got.insert(format_word(s.word, 3));
  CHECK(got == std::set<std::string>{"ab", "ba", "Ab", "aB"});
  CHECK(all_sticks(af).size() == 12);

  Apartment of = std3(Mode::OF);
  auto face_of = sticks_of(of, 1, 2);
  CHECK(face_of.size() == 2);
  CHECK(all_sticks(of).size() == 6);

  CHECK_THROWS_AS(sticks_of(fig1_left(Mode::AF), 1, 2), Error);  // not standard-constructed
}

TEST_CASE("stick characterization") {
  Apartment af = std3(Mode::AF);
  CHECK(stick_characterization_check(make_vertex(subgroup_of({w("ab")}, 3, true), Mode::AF, std::nullopt), af));
  CHECK_FALSE(stick_characterization_check(make_vertex(subgroup_of({w("a")}, 3, true), Mode::AF, std::nullopt), af));
  CHECK_FALSE(stick_characterization_check(make_vertex(subgroup_of({w("abb")}, 3, true), Mode::AF, std::nullopt), af));
}

TEST_CASE("stick characterization agrees with enumeration on a corpus") {
  Apartment af = std3(Mode::AF);
  std::set<std::string> stick_keys;
  for (const auto& s : all_sticks(af)) stick_keys.insert(s.vertex.key);
  for (const auto& s : all_sticks(af)) {
    CHECK(stick_characterization_check(s.vertex, af));
  }
  // corpus of 200 primitive rank-1 vertices that are not sticks
  std::mt19937_64 rng(73);
  std::uniform_int_distribution<int> idx(1, 3), coin(0, 1), moves(1, 4);
  int tested = 0;
  while (tested < 200) {
    BasisMap phi = BasisMap::identity(3);
    int m = moves(rng);
    for (int t = 0; t < m; ++t) {
      int i = idx(rng), j = idx(rng);
      if (i == j) continue;
      phi = phi.and_then(coin(rng) ? BasisMap::nielsen(3, i, j) : BasisMap::transposition(3, i, j));
    }
    Word u = phi.apply(Word::single(idx(rng)));
    FactorVertex v = make_vertex(subgroup_of({u}, 3, true), Mode::AF, std::nullopt);
    if (stick_keys.count(v.key)) continue;
    // rank-1 vertices of the apartment itself are allowed to fail too
    ++tested;
    bool is_vertex = false;
    for (int i = 1; i <= 3; ++i) {
      if (af.at(1u << (i - 1)).key == v.key) is_vertex = true;
    }
    if (is_vertex) continue;
    CHECK_FALSE(stick_characterization_check(v, af));
  }
}

TEST_CASE("bonded triples") {
  Apartment af = std3(Mode::AF);
  auto triples = bonded_triples(af, 1, 2, 3);
  CHECK(triples.size() == 8);

  Apartment of = std3(Mode::OF);
  auto of_triples = bonded_triples(of, 1, 2, 3);
  REQUIRE(of_triples.size() == 4);
  std::set<std::set<std::string>> got;
  for (const auto& t : of_triples) {
    got.insert({t.at_ij.vertex.key, t.at_ik.vertex.key, t.at_jk.vertex.key});
  }
  std::set<std::set<std::string>> expected = {
      {class_key("ab"), class_key("Bc"), class_key("ac")},
      {class_key("ab"), class_key("bc"), class_key("Ac")},
      {class_key("Ab"), class_key("bc"), class_key("ac")},
      {class_key("Ab"), class_key("Bc"), class_key("Ac")},
  };
  CHECK(got == expected);
}

TEST_CASE("any two sticks of distinct faces extend to a unique bonded triple in OF") {
  Apartment of = std3(Mode::OF);
  auto triples = bonded_triples(of, 1, 2, 3);
  auto f12 = sticks_of(of, 1, 2);
  auto f13 = sticks_of(of, 1, 3);
  for (const auto& x : f12) {
    for (const auto& y : f13) {
      int extensions = 0;
      for (const auto& t : triples) {
        if (t.at_ij.vertex.key == x.vertex.key && t.at_ik.vertex.key == y.vertex.key) ++extensions;
      }
      CHECK(extensions == 1);
    }
  }
  // and within a triple, any two sticks determine the third
  for (const auto& t1 : triples) {
    for (const auto& t2 : triples) {
      if (t1.at_ij.vertex.key == t2.at_ij.vertex.key && t1.at_ik.vertex.key == t2.at_ik.vertex.key) {
        CHECK(t1.at_jk.vertex.key == t2.at_jk.vertex.key);
      }
    }
  }
}

TEST_CASE("snops and the cube") {
  Apartment af3 = std3(Mode::AF);
  SnopCube cube = snops(af3);
  CHECK(cube.snops.size() == 8);
  CHECK(cube.edges.size() == 12);
  // distinct snops differ in at least n-1 = 2 sticks
  for (size_t a = 0; a < cube.snops.size(); ++a) {
    for (size_t b = a + 1; b < cube.snops.size(); ++b) {
      int differ = 0;
      for (size_t f = 0; f < cube.snops[a].sticks.size(); ++f) {
        if (cube.snops[a].sticks[f].vertex.key != cube.snops[b].sticks[f].vertex.key) ++differ;
      }
      CHECK(differ >= 2);
    }
  }
  Apartment af4 = standard_apartment(words("a,b,c,d", 4), Mode::AF, 4);
  CHECK(snops(af4).snops.size() == 16);
  CHECK_THROWS_AS(snops(std3(Mode::OF)), Error);
}

TEST_CASE("supersticks") {
  Apartment af = std3(Mode::AF);
  CHECK(supersticks(af, 1, 2, 3).size() == 24);

  Apartment of = std3(Mode::OF);
  auto list = supersticks(of, 1, 2, 3);
  REQUIRE(list.size() == 8);
  std::set<std::string> got;
  for (const auto& s : list) got.insert(s.vertex.key);
  std::set<std::string> expected;
  for (std::string t : {"abc", "abC", "aBc", "aBC", "acb", "acB", "aCb", "aCB"}) {
    expected.insert(class_key(t));
  }
  CHECK(got == expected);
}

TEST_CASE("supersticks are antipodal to every rank-2 barycentre of their face") {
  Apartment of = std3(Mode::OF);
  std::vector<OfAntipodality> testers;
  for (Subset s : {0b011u, 0b110u, 0b101u}) testers.emplace_back(pointed_rep(of.at(s).subgroup), 3);
  for (const auto& s : supersticks(of, 1, 2, 3)) {
    for (const auto& t : testers) CHECK(t.test(s.word));
  }
  // whereas plain basis letters are not
  for (std::string t : {"a", "b", "c"}) {
    int anti = 0;
    for (const auto& tester : testers) {
      if (tester.test(w(t))) ++anti;
    }
    CHECK(anti < 3);
  }
}

TEST_CASE("iota fixes sticks and moves supersticks") {
  Apartment of = std3(Mode::OF);
  CHECK(iota_action_check(of).all_pass());
  // iota([abc]) = [acb]
  CHECK(class_key("ABC") == class_key("acb"));
  Apartment of4 = standard_apartment(words("a,b,c,d", 4), Mode::OF, 4);
  CHECK(iota_action_check(of4).all_pass());
}

TEST_CASE("signed permutations act on the stick set") {
  Apartment af = std3(Mode::AF);
  std::set<std::string> stick_keys;
  for (const auto& s : all_sticks(af)) stick_keys.insert(s.vertex.key);
  for (const BasisMap& m : {BasisMap::epsilon(3, 1), BasisMap::transposition(3, 1, 2), BasisMap::iota(3)}) {
    std::set<std::string> image;
    for (const auto& s : all_sticks(af)) {
      Word img = m.apply(s.word);
      image.insert(make_vertex(subgroup_of({img}, 3, true), Mode::AF, std::nullopt).key);
    }
    CHECK(image == stick_keys);
  }
  // epsilon_1 fixes exactly the four sticks of the opposite face (2,3)
  BasisMap eps = BasisMap::epsilon(3, 1);
  int fixed = 0;
  for (const auto& s : all_sticks(af)) {
    Word img = eps.apply(s.word);
    if (make_vertex(subgroup_of({img}, 3, true), Mode::AF, std::nullopt).key == s.vertex.key) ++fixed;
  }
  CHECK(fixed == 4);
  // the stick set forms a single orbit under the signed permutations
  std::set<std::string> orbit = {all_sticks(af)[0].vertex.key};
  std::set<Word> frontier = {all_sticks(af)[0].word};
  std::vector<BasisMap> gens = {BasisMap::epsilon(3, 1), BasisMap::epsilon(3, 2), BasisMap::epsilon(3, 3),
                                BasisMap::transposition(3, 1, 2), BasisMap::transposition(3, 2, 3)};
  bool grew = true;
  while (grew) {
    grew = false;
    std::set<Word> next;
    for (const Word& u : frontier) {
      for (const BasisMap& m : gens) {
        Word img = m.apply(u);
        std::string key = make_vertex(subgroup_of({img}, 3, true), Mode::AF, std::nullopt).key;
        if (orbit.insert(key).second) {
          next.insert(img);
          grew = true;
        }
      }
    }
    frontier.insert(next.begin(), next.end());
  }
  CHECK(orbit.size() == 12);
}

TEST_CASE("vertexwise fixed apartments under epsilon and iota") {
  Apartment af = std3(Mode::AF);
  for (const BasisMap& m : {BasisMap::epsilon(3, 2), BasisMap::iota(3)}) {
    for (const auto& [s, v] : af.assignment) {
      std::vector<Word> imgs;
      for (const Word& g : generators(v.subgroup)) imgs.push_back(m.apply(g));
      CHECK(subgroup_of(imgs, 3, true).key() == v.subgroup.key());
    }
  }
}

TEST_CASE("supersticks recovered as midpoint intersections") {
  Subgroup m1 = subgroup_of(words("a,bc"), 3, true);
  Subgroup m2 = subgroup_of(words("c,ab"), 3, true);
  Intersection inter = intersect(m1, m2);
  CHECK(inter.based.key() == subgroup_of({w("abc")}, 3, true).key());
}

TEST_CASE("midpoints carry the expected supersticks") {
  Apartment of = std3(Mode::OF);
  auto mids = midpoints(of, 3, {1, 2});
  REQUIRE(mids.size() == 2);
  std::set<std::string> carried0, carried1;
  for (const Word& u : mids[0].carried_supersticks) carried0.insert(class_key(format_word(u, 3)));
  for (const Word& u : mids[1].carried_supersticks) carried1.insert(class_key(format_word(u, 3)));
  CHECK(carried0 == std::set<std::string>{class_key("abc"), class_key("abC")});
  CHECK(carried1 == std::set<std::string>{class_key("acb"), class_key("aCb")});
  // the two midpoints between [bc] and [a] share exactly one superstick with M1
  auto mids2 = midpoints(of, 1, {2, 3});
  std::set<std::string> carried_m2;
  for (const Word& u : mids2[0].carried_supersticks) carried_m2.insert(class_key(format_word(u, 3)));
  std::set<std::string> inter;
  for (const auto& k : carried0) {
    if (carried_m2.count(k)) inter.insert(k);
  }
  CHECK(inter.size() == 1);
}

TEST_CASE("nielsen adjacency and overlaps") {
  for (int n : {3, 4}) {
    std::vector<Word> basis;
    for (int i = 1; i <= n; ++i) basis.push_back(Word::single(i));
    Apartment d0 = standard_apartment(basis, Mode::AF, n);
    Apartment d1 = nielsen_adjacent(d0, 1, 2);
    CHECK(is_standard_af(d1));
    OverlapResult r = overlap_report(d0, d1);
    for (const auto& item : r.rank1) {
      CHECK((item.status == "vertex" || item.status == "stick"));
    }
    CHECK(r.exceptional.size() == 3);
    std::set<std::string> exceptional_words;
    for (size_t idx : r.exceptional) {
      CHECK(r.sticks[idx].face_i == 1);
      CHECK(r.sticks[idx].face_j == 2);
      exceptional_words.insert(format_word(r.sticks[idx].word, n));
    }
    CHECK(exceptional_words == std::set<std::string>{"abb", "bab", "BAb"});
    // the fourth stick of the modified face is the old vertex <a>
    bool saw_vertex_a = false;
    for (const auto& item : r.sticks) {
      if (item.face_i == 1 && item.face_j == 2 && item.status == "vertex") saw_vertex_a = true;
    }
    CHECK(saw_vertex_a);
  }
  // OF mode: exactly one exceptional stick, the class of a_1 a_2^2
  Apartment d0 = std3(Mode::OF);
  Apartment d1 = nielsen_adjacent(d0, 1, 2);
  OverlapResult r = overlap_report(d0, d1);
  REQUIRE(r.exceptional.size() == 1);
  CHECK(make_vertex(subgroup_of({r.sticks[r.exceptional[0]].word}, 3, true), Mode::OF, std::nullopt).key ==
        class_key("abb"));
  // self-overlap has no exceptions
  CHECK(overlap_report(d0, d0).exceptional.empty());
  CHECK_THROWS_AS(nielsen_adjacent(d0, 1, 1), Error);
}

TEST_CASE("of3 standardness verdicts") {
  CHECK(of3_standardness(std3(Mode::OF), 40).verdict == Verdict::Standard);
  CHECK(of3_standardness(fig1_right(Mode::OF), 40).verdict == Verdict::Fake);
  Ex68Result e = example_68(40);
  CHECK(e.verdict == Verdict::Fake);
  CHECK(e.report.all_pass());
}

TEST_CASE("buildup conditions") {
  Apartment of4 = standard_apartment(words("a,b,c,d", 4), Mode::OF, 4);
  StandardnessResult r = buildup_conditions(of4, 40);
  CHECK(r.verdict == Verdict::Standard);
  bool witness_abc = false;
  for (const auto& c : r.report.checks) {
    if (c.name.find("(3)") != std::string::npos && c.name.find("opposite 4") != std::string::npos) {
      witness_abc = c.detail.find("abc") != std::string::npos;
    }
  }
  CHECK(witness_abc);

  // rank-3 buildup uses the rank-2 face base case; the figure-style fake
  // fails condition (1) by the abelianized determinant
  StandardnessResult left = buildup_conditions(fig1_left(Mode::OF), 40);
  CHECK(left.verdict == Verdict::Fake);
  bool cond1_failed = false;
  for (const auto& c : left.report.checks) {
    if (c.name.find("(1)") != std::string::npos && !c.pass) cond1_failed = true;
  }
  CHECK(cond1_failed);

  // the recursive family passes (1) and (2); fakeness comes from the
  // barycentre generation certificate
  FakeFamilyResult ff = fake_family(3);
  StandardnessResult fr = buildup_conditions(ff.apartment, 40);
  CHECK(fr.verdict == Verdict::Fake);
  for (const auto& c : fr.report.checks) {
    if (c.name.find("(1)") != std::string::npos || c.name.find("(2)") != std::string::npos) CHECK(c.pass);
    if (c.name.find("barycentre generation") != std::string::npos) CHECK_FALSE(c.pass);
  }
}

TEST_CASE("standardness verdicts on transformed bases") {
  std::mt19937_64 rng(79);
  std::uniform_int_distribution<int> idx(1, 3), coin(0, 1), moves(1, 2);
  for (int t = 0; t < 5; ++t) {
    BasisMap phi = BasisMap::identity(3);
    int m = moves(rng);
    for (int s = 0; s < m; ++s) {
      int i = idx(rng), j = idx(rng);
      if (i == j) continue;
      phi = phi.and_then(coin(rng) ? BasisMap::nielsen(3, i, j) : BasisMap::transposition(3, i, j));
    }
    std::vector<Word> basis;
    for (int i = 1; i <= 3; ++i) basis.push_back(phi.apply(Word::single(i)));
    Apartment image = standard_apartment(basis, Mode::OF, 3);
    CHECK(of3_standardness(image, 40).verdict == Verdict::Standard);
  }
  Apartment of4 = standard_apartment(words("ab,b,c,d", 4), Mode::OF, 4);
  CHECK(buildup_conditions(of4, 40).verdict == Verdict::Standard);
}

TEST_CASE("one-off apartments") {
  Apartment d0 = std3(Mode::OF);
  auto replaced = [&](const std::string& csv) {
    Apartment d1 = d0;
    d1.assignment.erase(0b110u);
    d1.assignment.emplace(0b110u, make_vertex(subgroup_of(words(csv), 3, true), Mode::OF, std::nullopt));
    return d1;
  };
  OneOffResult r0 = one_off_check(d0, d0);
  CHECK(r0.matched);
  CHECK(r0.k == 0);

  OneOffResult r2 = one_off_check(d0, replaced("aabAA,c"));
  CHECK(r2.matched);
  CHECK(r2.k == 2);

  // a conjugator inside <b,c> collapses back to the standard vertex
  OneOffResult rc = one_off_check(d0, replaced("cbC,c"));
  CHECK(rc.matched);
  CHECK(rc.k == 0);

  // a genuinely different bridge mismatches
  Apartment bad = d0;
  bad.assignment.erase(0b110u);
  Word g = w("bc");
  bad.assignment.emplace(
      0b110u, make_vertex(subgroup_of({g * w("b") * g.inverse(), w("c")}, 3, true), Mode::OF, std::nullopt));
  OneOffResult rb = one_off_check(d0, bad);
  CHECK_FALSE(rb.matched);

  // differing anywhere else violates the sharing precondition
  Apartment other = d0;
  other.assignment.erase(0b011u);
  other.assignment.emplace(0b011u, make_vertex(subgroup_of(words("a,bab"), 3, true), Mode::OF, std::nullopt));
  CHECK_THROWS_AS(one_off_check(d0, other), Error);
}

TEST_CASE("fake families") {
  for (int n : {3, 4, 5}) {
    FakeFamilyResult r = fake_family(n);
    CHECK(r.report.all_pass());
    CHECK(r.fake);
    CHECK_FALSE(contains(r.h, Word::single(n)));
    CHECK(verify_apartment(r.apartment).all_pass());
    CHECK(antipodal_faces_check(r.apartment).all_pass());
  }
  CHECK_THROWS_AS(fake_family(2), Error);
}

TEST_CASE("dot exports") {
  Apartment af = std3(Mode::AF);
  std::string poset = apartment_dot(af);
  CHECK(poset.find("digraph") != std::string::npos);
  CHECK(poset.find("rank 2") != std::string::npos);
  std::string cube = cube_dot(af);
  CHECK(cube.find("graph snop_cube") != std::string::npos);
}
