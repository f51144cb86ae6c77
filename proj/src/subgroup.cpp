#include "subgroup.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <queue>

namespace ffc {

Subgroup Subgroup::wrap(LabeledGraph g, bool pointed) {
  if (!g.folded) fail(ErrorKind::Precondition, "subgroup graphs must be folded");
  if (!is_connected(g)) fail(ErrorKind::Precondition, "subgroup graphs must be connected");
  if (pointed && !g.has_base()) fail(ErrorKind::Precondition, "pointed subgroup needs a basepoint");
  if (!pointed) g.base = -1;
  Subgroup s;
  s.graph = canonical(g);
  s.pointed = pointed;
  s.rank = s.graph.rank_of_graph();
  s.key_ = serialize(s.graph);
  return s;
}

Subgroup subgroup_of(const std::vector<Word>& words, int rank, bool pointed) {
  std::vector<Word> nontrivial;
  for (const Word& w : words) {
    if (w.max_index() > rank) fail(ErrorKind::Precondition, "generator uses letter beyond rank");
    if (!w.empty()) nontrivial.push_back(w);
  }
  if (nontrivial.empty()) fail(ErrorKind::Precondition, "all generators are trivial");
  LabeledGraph g = loop_graph(nontrivial[0], rank);
  for (size_t i = 1; i < nontrivial.size(); ++i) g = wedge(g, loop_graph(nontrivial[i], rank));
  g = fold(g);
  return Subgroup::wrap(core(g, pointed), pointed);
}

namespace {

void reject_trivial(const Subgroup& h, const char* op) {
  if (h.rank == 0) fail(ErrorKind::Precondition, std::string(op) + ": the trivial subgroup is not accepted here");
}

struct TreeData {
  std::vector<Word> path_to;        // base -> v
  std::vector<bool> edge_in_tree;
};

TreeData spanning_tree(const LabeledGraph& g, int root) {
  FoldedView view(g);
  TreeData t;
  t.path_to.assign(static_cast<size_t>(g.num_vertices), Word());
  t.edge_in_tree.assign(g.edges.size(), false);
  // edge lookup by (src, label)
  std::map<std::pair<int, int>, size_t> by_out;
  for (size_t i = 0; i < g.edges.size(); ++i) by_out[{g.edges[i].src, g.edges[i].label}] = i;
  std::vector<bool> seen(static_cast<size_t>(g.num_vertices), false);
  std::queue<int> q;
  seen[static_cast<size_t>(root)] = true;
  q.push(root);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int l = 1; l <= g.rank; ++l) {
      for (Letter step : {l, -l}) {
        int u = view.step(v, step);
        if (u < 0 || seen[static_cast<size_t>(u)]) continue;
        seen[static_cast<size_t>(u)] = true;
        t.path_to[static_cast<size_t>(u)] = t.path_to[static_cast<size_t>(v)] * Word::single(step);
        size_t ei = step > 0 ? by_out[{v, l}] : by_out[{u, l}];
        t.edge_in_tree[ei] = true;
        q.push(u);
      }
    }
  }
  return t;
}

int tree_root(const Subgroup& h) { return h.pointed ? h.graph.base : 0; }

}  // namespace

std::vector<Word> generators(const Subgroup& h) {
  const LabeledGraph& g = h.graph;
  TreeData t = spanning_tree(g, tree_root(h));
  std::vector<Word> gens;
  for (size_t i = 0; i < g.edges.size(); ++i) {
    if (t.edge_in_tree[i]) continue;
    const auto& e = g.edges[i];
    gens.push_back(t.path_to[static_cast<size_t>(e.src)] * Word::single(e.label) *
                   t.path_to[static_cast<size_t>(e.dst)].inverse());
  }
  return gens;
}

Word rank1_generator(const Subgroup& h) {
  if (h.rank != 1) fail(ErrorKind::Precondition, "rank1_generator requires a rank-1 subgroup");
  return generators(h).at(0);
}

Subgroup pointed_rep(const Subgroup& h) {
  if (h.pointed) return h;
  LabeledGraph g = h.graph;
  g.base = 0;
  return Subgroup::wrap(g, true);
}

Subgroup unpointed_class(const Subgroup& h) {
  if (!h.pointed) return h;
  reject_trivial(h, "unpointed_class");
  return Subgroup::wrap(core(h.graph, false), false);
}

bool contains(const Subgroup& h, const Word& w) {
  if (!h.pointed) fail(ErrorKind::Precondition, "membership needs a pointed subgroup");
  reject_trivial(h, "contains");
  FoldedView view(h.graph);
  auto end = trace(view, h.graph.base, w);
  return end && *end == h.graph.base;
}

bool includes(const Subgroup& h, const Subgroup& k) {
  if (!h.pointed || !k.pointed) fail(ErrorKind::Precondition, "inclusion needs pointed subgroups");
  for (const Word& g : generators(k)) {
    if (!contains(h, g)) return false;
  }
  return true;
}

bool conjugate_into_class(const Subgroup& h, const Subgroup& k) {
  reject_trivial(h, "conjugate_into_class");
  LabeledGraph hc = h.pointed ? unpointed_class(h).graph : h.graph;
  return exists_morphism(hc, k.graph);
}

std::optional<Word> conjugate_into(const Subgroup& h, const Word& w) {
  reject_trivial(h, "conjugate_into");
  if (w.empty()) fail(ErrorKind::Precondition, "conjugate_into needs a nontrivial word");
  auto cr = cyclic_reduce(w);
  FoldedView view(h.graph);
  TreeData t = spanning_tree(h.graph, tree_root(h));
  for (int v = 0; v < h.graph.num_vertices; ++v) {
    auto end = trace(view, v, cr.core);
    if (end && *end == v) {
      // gamma^{-1} w gamma = p c p^{-1} in H for p = path(base -> v)
      return cr.conjugator * t.path_to[static_cast<size_t>(v)].inverse();
    }
  }
  return std::nullopt;
}

Intersection intersect(const Subgroup& h1, const Subgroup& h2) {
  if (!h1.pointed || !h2.pointed) fail(ErrorKind::Precondition, "intersect needs pointed subgroups");
  reject_trivial(h1, "intersect");
  reject_trivial(h2, "intersect");
  Intersection out;
  bool have_based = false;
  for (auto& comp : pullback(h1.graph, h2.graph)) {
    if (comp.based) {
      out.based = Subgroup::wrap(core(comp.graph, true), true);
      have_based = true;
    } else if (comp.has_cycle) {
      out.others.push_back(Subgroup::wrap(core(comp.graph, false), false));
    }
  }
  if (!have_based) fail(ErrorKind::Internal, "pullback lost the based component");
  return out;
}

bool verify_factor(const FactorWitness& w, int rank) {
  if (!w.subgroup.pointed) fail(ErrorKind::Precondition, "factor witness needs a pointed subgroup");
  if (w.subgroup.rank + static_cast<int>(w.complement.size()) != rank) {
    fail(ErrorKind::Precondition, "factor witness rank mismatch: rank(H) + |complement| != n");
  }
  LabeledGraph g = w.subgroup.graph;
  for (const Word& c : w.complement) g = wedge(g, loop_graph(c, rank));
  return iso(fold(g), rose(rank), true).has_value();
}

std::optional<Corank1Certificate> is_corank1_factor(const Subgroup& h, int rank) {
  if (!h.pointed) fail(ErrorKind::Precondition, "corank-1 test needs a pointed subgroup");
  if (h.rank != rank - 1) fail(ErrorKind::Precondition, "corank-1 test needs rank(H) = n-1");
  if (h.graph.num_vertices == 1) {
    Corank1Certificate c;
    c.embeds = true;
    return c;
  }
  LabeledGraph target = rose(rank);
  for (int v0 = 0; v0 < h.graph.num_vertices; ++v0) {
    for (int v1 = v0 + 1; v1 < h.graph.num_vertices; ++v1) {
      if (iso(fold(identify(h.graph, v0, v1)), target, true)) {
        Corank1Certificate c;
        c.v0 = v0;
        c.v1 = v1;
        return c;
      }
    }
  }
  return std::nullopt;
}

namespace {

const std::vector<BasisMap>& whitehead_maps(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<BasisMap>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<BasisMap> maps;
  std::vector<Letter> letters;
  for (int i = 1; i <= n; ++i) {
    letters.push_back(i);
    letters.push_back(-i);
  }
  for (Letter a : letters) {
    std::vector<Letter> others;
    for (Letter l : letters) {
      if (l != a && l != -a) others.push_back(l);
    }
    unsigned long full = (1ul << others.size()) - 1ul;
    for (unsigned long bits = 0; bits <= full; ++bits) {
      if (bits == 0 || bits == full) continue;  // identity / inner automorphism
      std::vector<Letter> A = {a};
      for (size_t i = 0; i < others.size(); ++i) {
        if (bits & (1ul << i)) A.push_back(others[i]);
      }
      maps.push_back(BasisMap::whitehead(n, a, A));
    }
  }
  return cache.emplace(n, std::move(maps)).first->second;
}

}  // namespace

WhiteheadResult whitehead_minimize(const Subgroup& h, int rank) {
  reject_trivial(h, "whitehead_minimize");
  Subgroup cur = h.pointed ? unpointed_class(h) : h;
  BasisMap phi = BasisMap::identity(rank);
  const auto& maps = whitehead_maps(rank);
  bool improved = true;
  while (improved) {
    improved = false;
    size_t cur_size = cur.graph.edges.size();
    std::vector<Word> gens = generators(cur);
    // Fold candidates in order of total image length; a strictly smaller core
    // is taken as soon as one appears. Ties break on the enumeration index,
    // keeping runs deterministic.
    struct Cand {
      size_t idx;
      size_t total;
      std::vector<Word> imgs;
    };
    std::vector<Cand> cands;
    cands.reserve(maps.size());
    for (size_t i = 0; i < maps.size(); ++i) {
      Cand c{i, 0, {}};
      c.imgs.reserve(gens.size());
      for (const Word& g : gens) {
        c.imgs.push_back(maps[i].apply(g));
        c.total += static_cast<size_t>(c.imgs.back().length());
      }
      cands.push_back(std::move(c));
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      return a.total != b.total ? a.total < b.total : a.idx < b.idx;
    });
    for (const Cand& c : cands) {
      Subgroup cand = subgroup_of(c.imgs, rank, false);
      if (cand.graph.edges.size() < cur_size) {
        cur = std::move(cand);
        phi = phi.and_then(maps[c.idx]);
        improved = true;
        break;
      }
    }
  }
  return {cur, phi};
}

namespace {

bool is_subrose(const LabeledGraph& g) { return g.num_vertices == 1; }

// For phi(H) whose unpointed core is a one-vertex rose: the stalk word from
// the basepoint of core_*(phi(H)) to the rose vertex, and the petal labels.
struct RoseForm {
  Word stalk;
  std::vector<int> petals;
};

RoseForm rose_form(const Subgroup& pointed_image) {
  const LabeledGraph& g = pointed_image.graph;
  int rose_vertex = -1;
  RoseForm rf;
  for (const auto& e : g.edges) {
    if (e.src == e.dst) {
      rose_vertex = e.src;
      rf.petals.push_back(e.label);
    }
  }
  if (rose_vertex < 0) fail(ErrorKind::Internal, "expected a rose-with-stalk core");
  std::sort(rf.petals.begin(), rf.petals.end());
  TreeData t = spanning_tree(g, g.base);
  rf.stalk = t.path_to[static_cast<size_t>(rose_vertex)];
  return rf;
}

BasisMap sorting_permutation(int n, const std::vector<int>& s) {
  // letters s_1 < ... < s_k map to 1..k; remaining letters fill the rest in order
  std::vector<int> target(static_cast<size_t>(n) + 1, 0);
  int next = 1;
  for (int v : s) target[static_cast<size_t>(v)] = next++;
  for (int i = 1; i <= n; ++i) {
    if (target[static_cast<size_t>(i)] == 0) target[static_cast<size_t>(i)] = next++;
  }
  std::vector<Word> im(static_cast<size_t>(n)), inv(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) {
    im[static_cast<size_t>(i) - 1] = Word::single(target[static_cast<size_t>(i)]);
    inv[static_cast<size_t>(target[static_cast<size_t>(i)]) - 1] = Word::single(i);
  }
  return BasisMap::automorphism(n, std::move(im), std::move(inv));
}

}  // namespace

std::optional<FactorWitness> is_free_factor(const Subgroup& h, int rank) {
  if (!h.pointed) fail(ErrorKind::Precondition, "free-factor test needs a pointed subgroup");
  if (h.rank < 1 || h.rank > rank - 1) fail(ErrorKind::Precondition, "free-factor test needs 1 <= rank(H) <= n-1");
  WhiteheadResult wr = whitehead_minimize(h, rank);
  if (!is_subrose(wr.minimal.graph)) return std::nullopt;
  std::vector<Word> gens = generators(h);
  std::vector<Word> imgs;
  for (const Word& g : gens) imgs.push_back(wr.phi.apply(g));
  Subgroup image = subgroup_of(imgs, rank, true);
  RoseForm rf = rose_form(image);
  const BasisMap& phi_inv = wr.phi.inverse();
  FactorWitness witness;
  witness.subgroup = h;
  for (int j = 1; j <= rank; ++j) {
    if (std::find(rf.petals.begin(), rf.petals.end(), j) != rf.petals.end()) continue;
    witness.complement.push_back(phi_inv.apply(rf.stalk * Word::single(j) * rf.stalk.inverse()));
  }
  if (!verify_factor(witness, rank)) fail(ErrorKind::Internal, "free-factor witness failed re-verification");
  return witness;
}

BasisMap extend_to_basis(const Subgroup& h, int rank) {
  if (!h.pointed) fail(ErrorKind::Precondition, "extend_to_basis needs a pointed subgroup");
  if (h.rank < 1 || h.rank > rank - 1) fail(ErrorKind::Precondition, "extend_to_basis needs 1 <= rank(H) <= n-1");
  WhiteheadResult wr = whitehead_minimize(h, rank);
  if (!is_subrose(wr.minimal.graph)) fail(ErrorKind::Precondition, "extend_to_basis: subgroup is not a free factor");
  std::vector<Word> gens = generators(h);
  std::vector<Word> imgs;
  for (const Word& g : gens) imgs.push_back(wr.phi.apply(g));
  Subgroup image = subgroup_of(imgs, rank, true);
  RoseForm rf = rose_form(image);
  BasisMap result = wr.phi.and_then(BasisMap::inner(rank, rf.stalk.inverse())).and_then(sorting_permutation(rank, rf.petals));
  // phi(H) must equal <a_1,...,a_k> as a pointed subgroup.
  std::vector<Word> final_imgs;
  for (const Word& g : gens) final_imgs.push_back(result.apply(g));
  Subgroup target_check = subgroup_of(final_imgs, rank, true);
  std::vector<Word> expect;
  for (int i = 1; i <= h.rank; ++i) expect.push_back(Word::single(i));
  if (!(target_check.key() == subgroup_of(expect, rank, true).key())) {
    fail(ErrorKind::Internal, "extend_to_basis normalization check failed");
  }
  return result;
}

namespace {

void check_verified_factor(const Subgroup& a, int rank, const FactorWitness* witness, const char* op) {
  if (!a.pointed) fail(ErrorKind::Precondition, std::string(op) + " needs a pointed factor");
  if (a.rank != rank - 1) fail(ErrorKind::Precondition, std::string(op) + " needs a factor of rank n-1");
  if (witness) {
    if (witness->subgroup.key() != a.key() || !verify_factor(*witness, rank)) {
      fail(ErrorKind::Precondition, std::string(op) + ": supplied witness does not verify");
    }
    return;
  }
  if (!is_free_factor(a, rank)) fail(ErrorKind::Precondition, std::string(op) + ": subgroup is not a verified free factor");
}

}  // namespace

bool antipodal_af(const Subgroup& a, const Word& u, int rank, const FactorWitness* witness) {
  if (u.empty()) fail(ErrorKind::Precondition, "antipodality needs a nontrivial word");
  check_verified_factor(a, rank, witness, "antipodal_af");
  LabeledGraph g = wedge(a.graph, loop_graph(u, rank));
  return iso(fold(g), rose(rank), true).has_value();
}

OfAntipodality::OfAntipodality(const Subgroup& a, int rank) : phi_(BasisMap::identity(rank)), rank_(rank) {
  Subgroup p = a.pointed ? a : pointed_rep(a);
  if (p.rank != rank - 1) fail(ErrorKind::Precondition, "antipodal_of needs a factor of rank n-1");
  phi_ = extend_to_basis(p, rank);
}

bool OfAntipodality::test(const Word& u) const {
  if (u.empty()) fail(ErrorKind::Precondition, "antipodality needs a nontrivial word");
  return count_index(cyclic_reduce(phi_.apply(u)).core, rank_) == 1;
}

bool antipodal_of(const Subgroup& a, const Word& u, int rank, const FactorWitness* witness) {
  if (witness) check_verified_factor(a.pointed ? a : pointed_rep(a), rank, witness, "antipodal_of");
  return OfAntipodality(a, rank).test(u);
}

bool dist_le2(const Subgroup& v1, const Subgroup& v2, Mode mode, int rank) {
  Subgroup p1 = pointed_rep(v1), p2 = pointed_rep(v2);
  if (p1.rank != rank - 1) fail(ErrorKind::Precondition, "dist_le2 needs rank(V1) = n-1");
  check_verified_factor(p1, rank, nullptr, "dist_le2");
  if (!is_free_factor(p2, rank)) fail(ErrorKind::Precondition, "dist_le2: V2 is not a verified free factor");
  if (mode == Mode::AF) {
    if (!v1.pointed || !v2.pointed) fail(ErrorKind::Precondition, "dist_le2 in AF mode needs pointed subgroups");
    return intersect(v1, v2).based.rank > 0;
  }
  LabeledGraph c1 = unpointed_class(p1).graph;
  LabeledGraph c2 = unpointed_class(p2).graph;
  for (const auto& comp : pullback(c1, c2)) {
    if (comp.has_cycle) return true;
  }
  return false;
}

SeparatingFactor separating_factor(const Subgroup& a, int rank) {
  check_verified_factor(a, rank, nullptr, "separating_factor");
  if (rank < 3) fail(ErrorKind::Precondition, "separating_factor needs rank at least 3");
  if (contains(a, Word::single(1))) fail(ErrorKind::Precondition, "separating_factor: a_1 lies in A");
  SeparatingFactor out;
  Word a1 = Word::single(1), a2 = Word::single(2), a3 = Word::single(3);
  if (!has_basis_loop(a.graph, 2)) {
    out.case_used = 1;
    out.bound = longest_label_run(a.graph, 2) + 1;
    Word second = a2;
    for (int i = 1; i < out.bound; ++i) second = second * a2;
    second = second * a1 * a3;
    out.l = subgroup_of({a1, second}, rank, true);
  } else {
    out.case_used = 2;
    out.bound = diameter(a.graph) + 1;
    Word mid = a1;
    for (int i = 1; i < out.bound; ++i) mid = mid * a1;
    out.l = subgroup_of({a1, a2 * mid * a3}, rank, true);
  }
  Intersection inter = intersect(out.l, a);
  out.based_trivial = inter.based.rank == 0;
  out.all_components_trees = inter.others.empty() && out.based_trivial;
  if (!out.based_trivial) {
    fail(ErrorKind::Internal, "separating factor verification failed: L meets A at the basepoint");
  }
  // With no conjugate of a_1 in A, the construction separates every conjugate.
  if (!conjugate_into(a, a1) && !out.all_components_trees) {
    fail(ErrorKind::Internal, "separating factor verification failed: unexpected essential pullback component");
  }
  return out;
}

std::vector<int> injrad_growth(int rank, const Subgroup& a, int kmax) {
  reject_trivial(a, "injrad_growth");
  if (kmax < 0) fail(ErrorKind::Precondition, "injrad_growth needs kmax >= 0");
  BasisMap f = BasisMap::f0(rank);
  std::vector<Word> gens = generators(a);
  std::vector<int> out;
  for (int k = 0; k <= kmax; ++k) {
    Subgroup cur = subgroup_of(gens, rank, false);
    out.push_back(graph_girth(cur.graph));
    if (k < kmax) {
      for (Word& g : gens) g = f.apply(g);
    }
  }
  return out;
}

}  // namespace ffc
