#include "suite.hpp"

#include <json.hpp>

#include <chrono>
#include <random>
#include <set>
#include <sstream>

#include "complex.hpp"
#include "oracle.hpp"

namespace ffc {

namespace {

Word random_reduced_word(std::mt19937_64& rng, int rank, int len) {
  std::vector<Letter> letters;
  std::uniform_int_distribution<int> pick(0, 2 * rank - 1);
  while (static_cast<int>(letters.size()) < len) {
    int r = pick(rng);
    Letter l = (r % 2 ? -1 : 1) * (r / 2 + 1);
    if (!letters.empty() && letters.back() == -l) continue;
    letters.push_back(l);
  }
  return Word::from_letters(letters);
}

struct Checker {
  bool ok = true;
  std::string detail;
  long cases = 0;
  void expect(bool cond, const std::string& what) {
    ++cases;
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

// 1. Folding confluence under randomized fold orders.
Checker criterion_confluence(std::uint64_t seed) {
  Checker c;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < 500; ++t) {
    std::uniform_int_distribution<int> rank_d(2, 4), words_d(1, 4), len_d(1, 8);
    int n = rank_d(rng);
    int k = words_d(rng);
    std::vector<Word> words;
    for (int i = 0; i < k; ++i) {
      Word w = random_reduced_word(rng, n, len_d(rng));
      if (!w.empty()) words.push_back(w);
    }
    if (words.empty()) words.push_back(Word::single(1));
    LabeledGraph g = loop_graph(words[0], n);
    for (size_t i = 1; i < words.size(); ++i) g = wedge(g, loop_graph(words[i], n));
    std::string ref = canonical_key(fold(g), true);
    for (int order = 0; order < 3; ++order) {
      std::mt19937_64 order_rng(seed ^ (static_cast<std::uint64_t>(t) << 8) ^ static_cast<std::uint64_t>(order));
      c.expect(canonical_key(fold(g, &order_rng), true) == ref, "fold order changed the result at case " + std::to_string(t));
    }
  }
  return c;
}

// 2. Membership against brute-force generator products of depth 4.
Checker criterion_membership(std::uint64_t seed) {
  Checker c;
  std::mt19937_64 rng(seed + 2);
  const int n = 3;
  for (int t = 0; t < 200; ++t) {
    std::uniform_int_distribution<int> gens_d(2, 3), len_d(1, 6);
    std::vector<Word> gens;
    int k = gens_d(rng);
    for (int i = 0; i < k; ++i) {
      Word w = random_reduced_word(rng, n, len_d(rng));
      if (!w.empty()) gens.push_back(w);
    }
    if (gens.empty()) gens.push_back(Word::single(1));
    Subgroup h = subgroup_of(gens, n, true);
    auto prods = oracle::products(gens, 4);
    std::set<Word> prodset(prods.begin(), prods.end());
    for (const Word& p : prods) c.expect(contains(h, p), "depth-4 product rejected at case " + std::to_string(t));
    for (int q = 0; q < 20; ++q) {
      Word w = random_reduced_word(rng, n, len_d(rng) + 2);
      if (!contains(h, w)) c.expect(!prodset.count(w), "membership denied a generator product at case " + std::to_string(t));
    }
  }
  return c;
}

// 3. Based pullback rank against brute-force common words (length <= 8).
Checker criterion_intersection(std::uint64_t seed) {
  Checker c;
  std::mt19937_64 rng(seed + 3);
  const int n = 3;
  int done = 0;
  while (done < 100) {
    std::uniform_int_distribution<int> gens_d(1, 2), len_d(1, 4);
    auto draw = [&]() {
      std::vector<Word> gens;
      int k = gens_d(rng);
      for (int i = 0; i < k; ++i) {
        Word w = random_reduced_word(rng, n, len_d(rng));
        if (!w.empty()) gens.push_back(w);
      }
      if (gens.empty()) gens.push_back(Word::single(1));
      return gens;
    };
    std::vector<Word> g1 = draw(), g2 = draw();
    Subgroup h1 = subgroup_of(g1, n, true), h2 = subgroup_of(g2, n, true);
    if (h1.graph.edges.size() > 8 || h2.graph.edges.size() > 8) continue;
    ++done;
    int impl_rank = intersect(h1, h2).based.rank;
    oracle::Graph o1 = oracle::fold_words(g1, n), o2 = oracle::fold_words(g2, n);
    auto common = oracle::common_members(o1, o2, 8);
    int oracle_rank = common.empty() ? 0 : oracle::rank_of(oracle::fold_words(common, n));
    c.expect(impl_rank == oracle_rank, "intersection rank mismatch (impl " + std::to_string(impl_rank) + ", brute " +
                                           std::to_string(oracle_rank) + ") at case " + std::to_string(done));
  }
  return c;
}

// 4. antipodal_af against the one-occurrence criterion for <a_1..a_{n-1}>.
Checker criterion_complement_exactness(std::uint64_t seed, int max_rank) {
  Checker c;
  std::mt19937_64 rng(seed + 4);
  for (int n = 3; n <= std::min(5, max_rank); ++n) {
    std::vector<Word> gens;
    for (int i = 1; i < n; ++i) gens.push_back(Word::single(i));
    Subgroup a = subgroup_of(gens, n, true);
    FactorWitness w{a, {Word::single(n)}};
    std::uniform_int_distribution<int> len_d(1, 12);
    for (int t = 0; t < 300; ++t) {
      Word u = random_reduced_word(rng, n, len_d(rng));
      bool syntactic = count_index(u, n) == 1;
      c.expect(antipodal_af(a, u, n, &w) == syntactic,
               "complement criterion disagreement at n=" + std::to_string(n) + " u=" + format_word(u, n));
    }
  }
  return c;
}

// 5. Stick / snop / bonded-triple / superstick counts.
Checker criterion_counts(int max_rank) {
  Checker c;
  std::vector<Word> abc = {Word::single(1), Word::single(2), Word::single(3)};
  Apartment af3 = standard_apartment(abc, Mode::AF, 3);
  Apartment of3 = standard_apartment(abc, Mode::OF, 3);
  c.expect(all_sticks(af3).size() == 12, "AF_3 stick count");
  c.expect(all_sticks(of3).size() == 6, "OF_3 stick count");
  c.expect(bonded_triples(af3, 1, 2, 3).size() == 8, "AF_3 bonded triple count");
  c.expect(bonded_triples(of3, 1, 2, 3).size() == 4, "OF_3 bonded triple count");
  c.expect(supersticks(af3, 1, 2, 3).size() == 24, "AF_3 superstick count");
  c.expect(supersticks(of3, 1, 2, 3).size() == 8, "OF_3 superstick count");
  SnopCube cube3 = snops(af3);
  c.expect(cube3.snops.size() == 8, "AF_3 snop count");
  c.expect(cube3.edges.size() == 12, "AF_3 snop cube edge count");
  for (int n = 3; n <= std::min(5, max_rank); ++n) {
    std::vector<Word> basis;
    for (int i = 1; i <= n; ++i) basis.push_back(Word::single(i));
    Apartment af = standard_apartment(basis, Mode::AF, n);
    Apartment of = standard_apartment(basis, Mode::OF, n);
    size_t pairs = static_cast<size_t>(n * (n - 1) / 2);
    c.expect(all_sticks(af).size() == 4 * pairs, "AF stick total at n=" + std::to_string(n));
    c.expect(all_sticks(of).size() == 2 * pairs, "OF stick total at n=" + std::to_string(n));
    c.expect(snops(af).snops.size() == (1u << n), "snop count at n=" + std::to_string(n));
  }
  return c;
}

// 6. The recursive fake family.
Checker criterion_fake_family(int max_rank) {
  Checker c;
  for (int n = 3; n <= std::min(5, max_rank); ++n) {
    FakeFamilyResult r = fake_family(n);
    c.expect(r.report.all_pass(), "fake family report at n=" + std::to_string(n) + "\n" + r.report.text());
    c.expect(r.fake, "fake family not flagged fake at n=" + std::to_string(n));
  }
  return c;
}

// 7. Example with gamma = baca^{-1}.
Checker criterion_example68(int bound) {
  Checker c;
  Ex68Result r = example_68(bound);
  bool anti = false;
  for (const auto& chk : r.report.checks) {
    if (chk.name.find("antipodal to [c]") != std::string::npos) anti = chk.pass;
  }
  c.expect(anti, "antipodality fold certificate failed");
  c.expect(r.verdict == Verdict::Fake, "expected verdict fake, got " + verdict_name(r.verdict));
  return c;
}

// 8. The iota involution on sticks and supersticks.
Checker criterion_iota(int max_rank) {
  Checker c;
  for (int n = 3; n <= std::min(4, max_rank); ++n) {
    std::vector<Word> basis;
    for (int i = 1; i <= n; ++i) basis.push_back(Word::single(i));
    Apartment of = standard_apartment(basis, Mode::OF, n);
    Report r = iota_action_check(of);
    c.expect(r.all_pass(), "iota action at n=" + std::to_string(n) + "\n" + r.text());
  }
  return c;
}

// 9. Nielsen-adjacent overlap classification.
Checker criterion_overlap(int max_rank) {
  Checker c;
  for (int n = 3; n <= std::min(4, max_rank); ++n) {
    std::vector<Word> basis;
    for (int i = 1; i <= n; ++i) basis.push_back(Word::single(i));
    for (Mode mode : {Mode::AF, Mode::OF}) {
      Apartment d0 = standard_apartment(basis, mode, n);
      Apartment d1 = nielsen_adjacent(d0, 1, 2);
      OverlapResult r = overlap_report(d0, d1);
      for (const auto& item : r.rank1) {
        c.expect(item.status == "vertex" || item.status == "stick",
                 "rank-1 vertex of the Nielsen image escaped d0 at n=" + std::to_string(n));
      }
      size_t expected = mode == Mode::AF ? 3 : 1;
      c.expect(r.exceptional.size() == expected,
               "exceptional stick count at n=" + std::to_string(n) + (mode == Mode::AF ? " AF" : " OF") + ": got " +
                   std::to_string(r.exceptional.size()));
      for (size_t idx : r.exceptional) {
        c.expect(r.sticks[idx].face_i == 1 && r.sticks[idx].face_j == 2,
                 "exceptional stick off the modified face at n=" + std::to_string(n));
      }
    }
  }
  return c;
}

// 10. Injectivity radius growth under f0.
Checker criterion_injrad() {
  Checker c;
  Subgroup a = subgroup_of({Word::single(1)}, 3, false);
  std::vector<int> seq = injrad_growth(3, a, 12);
  c.expect(seq.at(0) == 1, "girth at k=0");
  int running = 0, best = 0;
  bool monotone = true;
  for (int v : seq) {
    running = std::max(running, v);
    if (running < best) monotone = false;
    best = running;
  }
  c.expect(monotone, "running maximum not monotone");
  c.expect(best >= 3, "girth never reached 3 by k=12");
  c.expect(best > seq.at(0), "running maximum never exceeded the k=0 value");
  return c;
}

// 11. Whitehead free-factor test against certificate search on a fixed corpus.
Checker criterion_whitehead_corpus() {
  Checker c;
  const int n = 3;
  std::vector<Word> primitives = {Word::single(1), Word::single(2), Word::single(3)};
  std::vector<Word> abc = {Word::single(1), Word::single(2), Word::single(3)};
  Apartment af = standard_apartment(abc, Mode::AF, 3);
  for (const auto& s : all_sticks(af)) primitives.push_back(s.word);
  for (int i = 1; i <= 3; ++i) {
    for (int j = i + 1; j <= 3; ++j) {
      for (int k = j + 1; k <= 3; ++k) {
        for (const auto& s : supersticks(af, i, j, k)) primitives.push_back(s.word);
      }
    }
  }
  std::vector<std::string> imprimitive_text = {"aa", "bb", "cc", "aabb", "abab", "abcabc", "abAB", "acAC", "bcBC", "aaBB", "abaB"};
  size_t corpus = primitives.size() + imprimitive_text.size();
  c.expect(corpus >= 50, "corpus too small: " + std::to_string(corpus));
  for (const Word& w : primitives) {
    bool whitehead = is_free_factor(subgroup_of({w}, n, true), n).has_value();
    bool cert = oracle::primitivity_certificate_rank3(w, 2);
    c.expect(cert, "certificate search missed primitive " + format_word(w, n));
    c.expect(whitehead, "whitehead test rejected primitive " + format_word(w, n));
  }
  for (const std::string& t : imprimitive_text) {
    Word w = parse_word(t, n);
    bool whitehead = is_free_factor(subgroup_of({w}, n, true), n).has_value();
    c.expect(oracle::abelianized_gcd(w, n) != 1, "imprimitive case lacks an abelian certificate: " + t);
    c.expect(!whitehead, "whitehead test accepted imprimitive " + t);
  }
  return c;
}

CriterionResult run_one(int id, const std::string& name, double limit_seconds, Checker (*body)(const SuiteOptions&),
                        const SuiteOptions& opt) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  auto t0 = std::chrono::steady_clock::now();
  Checker c;
  try {
    c = body(opt);
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.pass = c.ok;
  r.detail = c.detail;
  if (r.pass && limit_seconds > 0 && r.seconds > limit_seconds) {
    r.pass = false;
    r.detail = "time limit exceeded (" + std::to_string(r.seconds) + "s > " + std::to_string(limit_seconds) + "s)";
  }
  return r;
}

}  // namespace

std::vector<CriterionResult> run_suite(const SuiteOptions& opt) {
  std::vector<CriterionResult> out;
  out.push_back(run_one(1, "folding confluence under randomized fold orders", 60,
                        [](const SuiteOptions& o) { return criterion_confluence(o.seed); }, opt));
  out.push_back(run_one(2, "membership agrees with brute-force generator products", 0,
                        [](const SuiteOptions& o) { return criterion_membership(o.seed); }, opt));
  out.push_back(run_one(3, "based intersection rank agrees with brute force", 0,
                        [](const SuiteOptions& o) { return criterion_intersection(o.seed); }, opt));
  out.push_back(run_one(4, "complement criterion matches antipodality exactly", 0,
                        [](const SuiteOptions& o) { return criterion_complement_exactness(o.seed, o.max_rank); }, opt));
  out.push_back(run_one(5, "stick, snop, bonded-triple and superstick counts", 0,
                        [](const SuiteOptions& o) { return criterion_counts(o.max_rank); }, opt));
  out.push_back(run_one(6, "recursive fake family verifies and is flagged fake", 30,
                        [](const SuiteOptions& o) { return criterion_fake_family(o.max_rank); }, opt));
  out.push_back(run_one(7, "bridge-conjugated apartment is fake with no potential stick", 0,
                        [](const SuiteOptions& o) { return criterion_example68(o.bound); }, opt));
  out.push_back(run_one(8, "iota fixes sticks and moves supersticks", 0,
                        [](const SuiteOptions& o) { return criterion_iota(o.max_rank); }, opt));
  out.push_back(run_one(9, "Nielsen-adjacent overlap classification", 0,
                        [](const SuiteOptions& o) { return criterion_overlap(o.max_rank); }, opt));
  out.push_back(run_one(10, "injectivity radius growth under the shift automorphism", 10,
                        [](const SuiteOptions&) { return criterion_injrad(); }, opt));
  out.push_back(run_one(11, "free-factor test agrees with certificate search on the corpus", 0,
                        [](const SuiteOptions&) { return criterion_whitehead_corpus(); }, opt));
  return out;
}

std::string suite_text(const std::vector<CriterionResult>& results, bool with_timing) {
  std::ostringstream os;
  for (const auto& r : results) {
    os << (r.pass ? "PASS" : "FAIL") << " " << r.id << ". " << r.name;
    if (with_timing) {
      os.precision(2);
      os << " (" << std::fixed << r.seconds << "s)";
    }
    if (!r.pass && !r.detail.empty()) os << "\n     " << r.detail;
    os << "\n";
  }
  os << (suite_all_pass(results) ? "suite: all criteria passed" : "suite: FAILURES PRESENT") << "\n";
  return os.str();
}

std::string suite_json(const std::vector<CriterionResult>& results, bool with_timing) {
  nlohmann::json j;
  j["all_pass"] = suite_all_pass(results);
  j["criteria"] = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json item = {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}};
    if (with_timing) item["seconds"] = r.seconds;
    j["criteria"].push_back(item);
  }
  return j.dump(2);
}

bool suite_all_pass(const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace ffc
