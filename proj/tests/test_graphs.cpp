#include <doctest.h>

#include <random>
#include <set>

#include "graph.hpp"
#include "oracle.hpp"
#include "subgroup.hpp"

using namespace ffc;

namespace {

Word w(const std::string& s, int n = 3) { return parse_word(s, n); }

LabeledGraph wedge_of(const std::vector<Word>& words, int n) {
  LabeledGraph g = loop_graph(words.at(0), n);
  for (size_t i = 1; i < words.size(); ++i) g = wedge(g, loop_graph(words[i], n));
  return g;
}

Word random_word(std::mt19937_64& rng, int rank, int len) {
  std::vector<Letter> letters;
  std::uniform_int_distribution<int> pick(1, rank), sign(0, 1);
  for (int i = 0; i < len; ++i) letters.push_back((sign(rng) ? -1 : 1) * pick(rng));
  return Word::from_letters(letters);
}

}  // namespace

TEST_CASE("roses") {
  for (int n = 1; n <= 10; ++n) {
    LabeledGraph r = rose(n);
    CHECK(r.num_vertices == 1);
    CHECK(r.edges.size() == static_cast<size_t>(n));
    CHECK(is_folded_graph(r));
    CHECK(graph_girth(r) == 1);
  }
  CHECK_THROWS_AS(rose(0), Error);
}

TEST_CASE("wedges") {
  LabeledGraph f8 = wedge(loop_graph(w("a", 2), 2), loop_graph(w("b", 2), 2));
  CHECK(iso(fold(f8), rose(2), true).has_value());
  // wedging with a single vertex changes nothing
  LabeledGraph g = fold(wedge_of({w("ab")}, 3));
  CHECK(iso(fold(wedge(g, trivial_graph(3))), g, true).has_value());
  // two equal loops fold to one
  LabeledGraph aa = wedge(loop_graph(w("a"), 3), loop_graph(w("a"), 3));
  LabeledGraph folded = fold(aa);
  CHECK(folded.num_vertices == 1);
  CHECK(folded.edges.size() == 1);
  LabeledGraph no_base = loop_graph(w("a"), 3);
  no_base.base = -1;
  CHECK_THROWS_AS(wedge(no_base, loop_graph(w("b"), 3)), Error);
}

TEST_CASE("basic folds") {
  // two a-edges leaving the basepoint merge
  LabeledGraph g;
  g.rank = 1;
  g.num_vertices = 3;
  g.base = 0;
  g.edges = {{0, 1, 1}, {0, 2, 1}};
  LabeledGraph f = fold(g);
  CHECK(f.num_vertices == 2);
  CHECK(f.edges.size() == 1);

  // loops a, b and a lollipop with stalk b, petal a: the stalk is absorbed
  LabeledGraph h = fold(wedge_of({w("a", 2), w("b", 2), w("baB", 2)}, 2));
  CHECK(iso(h, rose(2), true).has_value());

  // the complement criterion seen through folding: x a_n^{+-1} y over the sub-rose
  LabeledGraph r2 = fold(wedge_of({w("a"), w("b")}, 3));
  CHECK(iso(fold(wedge(r2, loop_graph(w("acB"), 3))), rose(3), true).has_value());
}

TEST_CASE("cores") {
  CHECK(iso(core(rose(3), true), rose(3), true).has_value());
  CHECK(iso(core(rose(3), false), canonical([] {
          LabeledGraph r = rose(3);
          r.base = -1;
          return r;
        }()),
            false)
            .has_value());
  // lollipop with stalk b, petal a
  LabeledGraph lolli = fold(loop_graph(w("baB"), 3));
  CHECK(core(lolli, true).num_vertices == 2);  // pointed: unchanged
  LabeledGraph unpointed = core(lolli, false);
  CHECK(unpointed.num_vertices == 1);
  CHECK(unpointed.edges.size() == 1);
  CHECK(unpointed.edges[0].label == 1);
  // acyclic unpointed core is an error
  LabeledGraph path;
  path.rank = 2;
  path.num_vertices = 2;
  path.base = 0;
  path.edges = {{0, 1, 1}};
  path.folded = true;
  CHECK_THROWS_AS(core(path, false), Error);
}

TEST_CASE("identify") {
  LabeledGraph e;
  e.rank = 1;
  e.num_vertices = 2;
  e.base = 0;
  e.edges = {{0, 1, 1}};
  LabeledGraph q = identify(e, 0, 1);
  CHECK(q.num_vertices == 1);
  CHECK(q.edges.size() == 1);
  CHECK(q.edges[0].src == q.edges[0].dst);
  CHECK_FALSE(q.folded);
  CHECK_THROWS_AS(identify(e, 0, 0), Error);
  CHECK_THROWS_AS(identify(e, 0, 5), Error);
}

TEST_CASE("pullbacks") {
  // identity case: pullback with the rose reproduces the other graph
  Subgroup h = subgroup_of({w("ab"), w("ca")}, 3, true);
  auto comps = pullback(rose(3), h.graph);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].based);
  CHECK(iso(comps[0].graph, h.graph, true).has_value());

  // <a> vs <b>: no essential component
  auto comps2 = pullback(subgroup_of({w("a")}, 3, true).graph, subgroup_of({w("b")}, 3, true).graph);
  for (const auto& c : comps2) CHECK_FALSE(c.has_cycle);

  // <a, b^2> vs <b>: the based component carries b^2
  Subgroup ab2 = subgroup_of({w("a"), w("bb")}, 3, true);
  Subgroup b = subgroup_of({w("b")}, 3, true);
  auto comps3 = pullback(ab2.graph, b.graph);
  bool found = false;
  for (const auto& c : comps3) {
    if (c.based && c.has_cycle) {
      found = true;
      CHECK(iso(core(c.graph, true), subgroup_of({w("bb")}, 3, true).graph, true).has_value());
    }
  }
  CHECK(found);
}

TEST_CASE("pullback based component against brute-force members") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    std::vector<Word> g1 = {random_word(rng, 3, 3), random_word(rng, 3, 4)};
    std::vector<Word> g2 = {random_word(rng, 3, 3)};
    g1.erase(std::remove_if(g1.begin(), g1.end(), [](const Word& u) { return u.empty(); }), g1.end());
    g2.erase(std::remove_if(g2.begin(), g2.end(), [](const Word& u) { return u.empty(); }), g2.end());
    if (g1.empty() || g2.empty()) continue;
    Subgroup h1 = subgroup_of(g1, 3, true), h2 = subgroup_of(g2, 3, true);
    Subgroup based = intersect(h1, h2).based;
    // every common word up to length 6 lies in the based subgroup, and every
    // based generator lies in both inputs
    auto common = oracle::common_members(oracle::fold_words(g1, 3), oracle::fold_words(g2, 3), 6);
    for (const Word& u : common) {
      if (based.rank > 0) CHECK(contains(based, u));
    }
    if (based.rank > 0) {
      for (const Word& g : generators(based)) {
        CHECK(contains(h1, g));
        CHECK(contains(h2, g));
      }
    } else {
      CHECK(common.empty());
    }
  }
}

TEST_CASE("isomorphism") {
  CHECK(iso(rose(3), rose(3), true).has_value());
  Subgroup a = subgroup_of({w("a")}, 3, true);
  Subgroup conj = subgroup_of({w("baB")}, 3, true);
  CHECK_FALSE(iso(a.graph, conj.graph, true).has_value());
  CHECK(iso(unpointed_class(a).graph, unpointed_class(conj).graph, false).has_value());
  // a returned bijection maps edges onto edges
  Subgroup x = subgroup_of({w("ab"), w("c")}, 3, true);
  auto bij = iso(x.graph, x.graph, true);
  REQUIRE(bij.has_value());
  CHECK((*bij)[x.graph.base] == x.graph.base);
}

TEST_CASE("folding confluence on random wedges") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 50; ++t) {
    std::uniform_int_distribution<int> nw(1, 4), len(1, 8);
    std::vector<Word> words;
    int k = nw(rng);
    for (int i = 0; i < k; ++i) {
      Word u = random_word(rng, 3, len(rng));
      if (!u.empty()) words.push_back(u);
    }
    if (words.empty()) continue;
    LabeledGraph g = wedge_of(words, 3);
    std::string ref = canonical_key(fold(g), true);
    for (int o = 0; o < 2; ++o) {
      std::mt19937_64 order(1000 * t + o);
      CHECK(canonical_key(fold(g, &order), true) == ref);
    }
  }
}

TEST_CASE("folded graphs have no label collisions") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 50; ++t) {
    std::vector<Word> words = {random_word(rng, 3, 6), random_word(rng, 3, 6)};
    words.erase(std::remove_if(words.begin(), words.end(), [](const Word& u) { return u.empty(); }), words.end());
    if (words.empty()) continue;
    CHECK(is_folded_graph(fold(wedge_of(words, 3))));
  }
}

TEST_CASE("folded rank equals subgroup rank") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 50; ++t) {
    std::uniform_int_distribution<int> nw(1, 3), len(1, 6);
    std::vector<Word> words;
    int k = nw(rng);
    for (int i = 0; i < k; ++i) {
      Word u = random_word(rng, 3, len(rng));
      if (!u.empty()) words.push_back(u);
    }
    if (words.empty()) continue;
    Subgroup h = subgroup_of(words, 3, true);
    int impl = h.rank;
    CHECK(impl == h.graph.rank_of_graph());
    CHECK(impl == oracle::rank_of(oracle::fold_words(words, 3)));
    CHECK(impl == oracle::nielsen_rank(words));
  }
}

TEST_CASE("girth") {
  CHECK(graph_girth(rose(4)) == 1);
  Subgroup comm = subgroup_of({w("abAB")}, 3, false);
  CHECK(graph_girth(comm.graph) == 4);
  LabeledGraph tree;
  tree.rank = 2;
  tree.num_vertices = 2;
  tree.base = 0;
  tree.edges = {{0, 1, 1}};
  tree.folded = true;
  CHECK_THROWS_AS(graph_girth(tree), Error);
  // two vertices joined by differently labeled edges form a cycle of length 2
  Subgroup two = subgroup_of({w("ab")}, 3, false);
  CHECK(graph_girth(two.graph) == 2);
}

TEST_CASE("basis loops") {
  CHECK(has_basis_loop(rose(3), 1).has_value());
  CHECK(has_basis_loop(rose(3), 3).has_value());
  CHECK_FALSE(has_basis_loop(subgroup_of({w("aa")}, 3, true).graph, 1).has_value());
  // two single-letter loops at distinct vertices joined by an arc
  Subgroup v = subgroup_of({w("abA"), w("c")}, 3, false);
  auto lb = has_basis_loop(v.graph, 2);
  auto lc = has_basis_loop(v.graph, 3);
  REQUIRE(lb.has_value());
  REQUIRE(lc.has_value());
  CHECK(*lb != *lc);
}

TEST_CASE("figure-eight loops share a vertex inside free factors") {
  // random free factors containing conjugates of a, b and ab
  std::mt19937_64 rng(47);
  int accepted = 0;
  for (int t = 0; t < 60 && accepted < 8; ++t) {
    Word outer = random_word(rng, 4, 2);
    auto inner = [&] { return random_word(rng, 2, 2); };
    Word c1 = outer * inner(), c2 = outer * inner(), c3 = outer * inner();
    std::vector<Word> gens = {c1 * w("a", 4) * c1.inverse(), c2 * w("b", 4) * c2.inverse(),
                              c3 * w("ab", 4) * c3.inverse()};
    Subgroup v = subgroup_of(gens, 4, true);
    if (v.rank > 3) continue;
    if (!is_free_factor(v, 4)) continue;
    ++accepted;
    Subgroup cls = unpointed_class(v);
    auto la = has_basis_loop(cls.graph, 1);
    auto lb = has_basis_loop(cls.graph, 2);
    REQUIRE(la.has_value());
    REQUIRE(lb.has_value());
    CHECK(*la == *lb);
  }
  CHECK(accepted >= 3);
}

TEST_CASE("serialization round trip") {
  Subgroup h = subgroup_of({w("ab"), w("bca")}, 3, true);
  LabeledGraph parsed = parse_graph(serialize(h.graph));
  CHECK(iso(parsed, h.graph, true).has_value());
  CHECK(serialize(parsed) == serialize(h.graph));
  CHECK_THROWS_AS(parse_graph("nonsense"), Error);
  CHECK_THROWS_AS(parse_graph("n=2 base=0\n0 0 5\n"), Error);
  try {
    parse_graph("n=2 base=0\n0 0 1\nbroken line\n");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("dot export") {
  std::string dot = to_dot(rose(2));
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("a1") != std::string::npos);
  CHECK(dot.find("doublecircle") != std::string::npos);
}

TEST_CASE("tight loop scan finds short loops first by deepening") {
  Subgroup v = subgroup_of({w("a"), w("b")}, 3, false);
  bool saw = false;
  scan_tight_loops(v.graph, 2, 10'000, [&](const Word& u) {
    if (u == w("ab") || u == w("ba") || u == w("Ab") || u == w("aB") || u == w("bA") || u == w("Ba") ||
        u == w("AB") || u == w("BA")) {
      saw = true;
      return true;
    }
    return false;
  });
  CHECK(saw);
}

TEST_CASE("unit-count loop search is exact") {
  // dumbbell with bridge containing both letters: no loop with one a and one b
  Subgroup bad = subgroup_of({w("a"), w("bacA") * w("b") * w("bacA").inverse()}, 3, true);
  Subgroup cls = Subgroup::wrap(core(bad.graph, false), false);
  CHECK_FALSE(find_loop_with_unit_counts(cls.graph, 1, 2).has_value());
  // the standard rank-2 rose has ab
  Subgroup good = subgroup_of({w("a"), w("b")}, 3, false);
  auto loop = find_loop_with_unit_counts(good.graph, 1, 2);
  REQUIRE(loop.has_value());
  CHECK(count_index(*loop, 1) == 1);
  CHECK(count_index(*loop, 2) == 1);
  // dumbbell with a clean bridge admits a^{+-1} gamma^{-1} b^p gamma loops
  Subgroup ok = subgroup_of({w("a"), w("c") * w("b") * w("C")}, 3, false);
  auto loop2 = find_loop_with_unit_counts(ok.graph, 1, 2);
  REQUIRE(loop2.has_value());
  CHECK(count_index(*loop2, 1) == 1);
  CHECK(count_index(*loop2, 2) == 1);
}
