#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "word.hpp"

using namespace ffc;

namespace {

Word w(const std::string& s, int n = 3) { return parse_word(s, n); }

Word random_word(std::mt19937_64& rng, int rank, int len) {
  std::vector<Letter> letters;
  std::uniform_int_distribution<int> pick(1, rank);
  std::uniform_int_distribution<int> sign(0, 1);
  for (int i = 0; i < len; ++i) letters.push_back((sign(rng) ? -1 : 1) * pick(rng));
  return Word::from_letters(letters);
}

}  // namespace

TEST_CASE("free reduction") {
  CHECK(w("abBA").empty());
  CHECK(w("abBa") == w("aa"));
  CHECK(w("").empty());
  CHECK(w("1").empty());
}

TEST_CASE("reduction is idempotent and length-nonincreasing") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    std::vector<Letter> raw;
    std::uniform_int_distribution<int> len(0, 12), pick(1, 3), sign(0, 1);
    int L = len(rng);
    for (int i = 0; i < L; ++i) raw.push_back((sign(rng) ? -1 : 1) * pick(rng));
    Word reduced = Word::from_letters(raw);
    CHECK(reduced.length() <= L);
    CHECK(Word::from_letters(reduced.letters()) == reduced);
  }
}

TEST_CASE("word parsing") {
  CHECK(w("abA") == Word::from_letters({1, 2, -1}));
  CHECK(parse_word("a1 a2 A1", 3) == Word::from_letters({1, 2, -1}));
  CHECK(parse_word("a1 A1", 3).empty());
  CHECK_THROWS_AS(parse_word("d", 3), Error);
  CHECK_THROWS_AS(parse_word("a4", 3), Error);
  CHECK_THROWS_AS(parse_word("a?", 3), Error);
  // column information in the message
  try {
    parse_word("abd", 3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("column 3") != std::string::npos);
  }
}

TEST_CASE("word formatting round-trips") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    Word u = random_word(rng, 3, 9);
    CHECK(parse_word(format_word(u, 3), 3) == u);
  }
  // spaced syntax for large ranks
  Word big = Word::from_letters({27, -30, 1});
  CHECK(format_word(big, 30) == "a27 A30 a1");
  CHECK(parse_word("a27 A30 a1", 30) == big);
  CHECK(format_word(Word(), 3) == "1");
}

TEST_CASE("cyclic reduction") {
  auto r1 = cyclic_reduce(w("Bab"));
  CHECK(r1.core == w("a"));
  CHECK(r1.conjugator == w("B"));
  auto r2 = cyclic_reduce(w("ab"));
  CHECK(r2.core == w("ab"));
  CHECK(r2.conjugator.empty());
  auto r3 = cyclic_reduce(w("caC"));
  CHECK(r3.core == w("a"));
  CHECK(r3.conjugator == w("c"));
  // w = conjugator * core * conjugator^{-1}
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    Word u = random_word(rng, 3, 10);
    auto cr = cyclic_reduce(u);
    CHECK(cr.conjugator * cr.core * cr.conjugator.inverse() == u);
    CHECK((cr.core.empty() || cr.core.front() != -cr.core.back()));
  }
}

TEST_CASE("cyclic core has minimal length in the conjugacy class") {
  // brute force over conjugators up to length 4 on words up to length 8
  std::mt19937_64 rng(5);
  std::vector<Word> conjugators = {Word()};
  std::vector<Word> frontier = {Word()};
  for (int len = 1; len <= 4; ++len) {
    std::vector<Word> next;
    for (const Word& c : frontier) {
      for (Letter l : {1, -1, 2, -2, 3, -3}) {
        Word d = c * Word::single(l);
        if (d.length() == len) next.push_back(d);
      }
    }
    conjugators.insert(conjugators.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  for (int t = 0; t < 30; ++t) {
    Word u = random_word(rng, 3, 8);
    int core_len = cyclic_reduce(u).core.length();
    for (const Word& c : conjugators) {
      CHECK((c * u * c.inverse()).length() >= core_len);
    }
  }
}

TEST_CASE("basis map application") {
  BasisMap eps1 = BasisMap::epsilon(3, 1);
  CHECK(eps1.apply(w("ab")) == w("Ab"));
  BasisMap nielsen = BasisMap::nielsen(3, 1, 2);
  CHECK(nielsen.apply(w("a")) == w("ab"));
  BasisMap f = BasisMap::f0(3);
  CHECK(f.apply(w("c")) == w("acb"));
  BasisMap id = BasisMap::identity(3);
  std::mt19937_64 rng(13);
  for (int t = 0; t < 50; ++t) {
    Word u = random_word(rng, 3, 8);
    CHECK(id.apply(u) == u);
    CHECK(nielsen.and_then(f).apply(u) == f.apply(nielsen.apply(u)));
  }
}

TEST_CASE("the shift automorphism") {
  BasisMap f2 = BasisMap::f0(2);
  CHECK(f2.image(1) == parse_word("b", 2));
  CHECK(f2.image(2) == parse_word("ab", 2));
  BasisMap f3 = BasisMap::f0(3);
  CHECK(f3.image(1) == w("b"));
  CHECK(f3.image(2) == w("c"));
  CHECK(f3.image(3) == w("acb"));
  BasisMap f4 = BasisMap::f0(4);
  CHECK(f4.image(4) == parse_word("acdb", 4));
  CHECK_THROWS_AS(BasisMap::f0(1), Error);
}

TEST_CASE("flagged automorphisms undo themselves on random words") {
  std::mt19937_64 rng(17);
  std::vector<BasisMap> maps;
  for (int n : {2, 3, 4}) maps.push_back(BasisMap::f0(n));
  maps.push_back(BasisMap::nielsen(3, 2, 3));
  maps.push_back(BasisMap::epsilon(3, 2));
  maps.push_back(BasisMap::iota(3));
  maps.push_back(BasisMap::transposition(3, 1, 3));
  maps.push_back(BasisMap::inner(3, w("ab")));
  maps.push_back(BasisMap::nielsen(3, 1, 2).and_then(BasisMap::iota(3)).and_then(BasisMap::f0(3)));
  int checked = 0;
  for (const BasisMap& m : maps) {
    REQUIRE(m.automorphism_flagged());
    for (int t = 0; t < 100; ++t) {
      Word u = random_word(rng, m.rank(), 10);
      CHECK(m.inverse().apply(m.apply(u)) == u);
      CHECK(m.apply(m.inverse().apply(u)) == u);
      checked += 2;
    }
  }
  CHECK(checked >= 1000);
}

TEST_CASE("automorphism verification rejects wrong inverses") {
  std::vector<Word> im = {w("ab"), w("b"), w("c")};
  std::vector<Word> bad = {w("a"), w("b"), w("c")};
  CHECK_THROWS_AS(BasisMap::automorphism(3, im, bad), Error);
}

TEST_CASE("recursive bridge words") {
  CHECK(build_w(3, 0) == w("c"));
  CHECK(build_w(3, 1) == w("caC"));
  CHECK(build_w(3, 2) == w("caCbcAC"));
  for (int k = 0; k <= 5; ++k) {
    CHECK(build_w(6, k).length() == (1 << (k + 1)) - 1);
  }
  CHECK_THROWS_AS(build_w(3, 3), Error);
  CHECK_THROWS_AS(build_w(3, -1), Error);
}

TEST_CASE("whitehead maps act as automorphisms") {
  BasisMap m = BasisMap::whitehead(3, 1, {1, 2, -3});
  std::mt19937_64 rng(23);
  for (int t = 0; t < 50; ++t) {
    Word u = random_word(rng, 3, 8);
    CHECK(m.inverse().apply(m.apply(u)) == u);
  }
}

TEST_CASE("oracle sanity: abelianized gcd") {
  CHECK(oracle::abelianized_gcd(w("aa"), 3) == 2);
  CHECK(oracle::abelianized_gcd(w("abAB"), 3) == 0);
  CHECK(oracle::abelianized_gcd(w("ab"), 3) == 1);
}
