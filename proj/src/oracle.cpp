#include "oracle.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ffc::oracle {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<size_t>(x)] != x) {
    parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
    x = parent[static_cast<size_t>(x)];
  }
  return x;
}

}  // namespace

Graph fold_words(const std::vector<Word>& words, int rank) {
  Graph g;
  g.base = 0;
  g.num_vertices = 1;
  for (const Word& w : words) {
    int prev = 0;
    for (int t = 0; t < w.length(); ++t) {
      Letter l = w.letters()[static_cast<size_t>(t)];
      int next = t + 1 == w.length() ? 0 : g.num_vertices++;
      if (l > 0) {
        g.edges.push_back({prev, next, l});
      } else {
        g.edges.push_back({next, prev, -l});
      }
      prev = next;
    }
  }
  (void)rank;
  // fixpoint: repeatedly merge endpoints of equal-label edges sharing an end
  std::vector<int> parent(static_cast<size_t>(g.num_vertices));
  std::iota(parent.begin(), parent.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < g.edges.size() && !changed; ++i) {
      for (size_t j = i + 1; j < g.edges.size() && !changed; ++j) {
        if (g.edges[i].label != g.edges[j].label) continue;
        int si = find_root(parent, g.edges[i].src), sj = find_root(parent, g.edges[j].src);
        int di = find_root(parent, g.edges[i].dst), dj = find_root(parent, g.edges[j].dst);
        if (si == sj && di != dj) {
          parent[static_cast<size_t>(di)] = dj;
          changed = true;
        } else if (di == dj && si != sj) {
          parent[static_cast<size_t>(si)] = sj;
          changed = true;
        }
      }
    }
  }
  std::vector<int> id(static_cast<size_t>(g.num_vertices), -1);
  int nv = 0;
  for (int v = 0; v < g.num_vertices; ++v) {
    int r = find_root(parent, v);
    if (id[static_cast<size_t>(r)] < 0) id[static_cast<size_t>(r)] = nv++;
  }
  std::set<std::tuple<int, int, int>> dedup;
  for (const auto& e : g.edges) {
    dedup.insert({id[static_cast<size_t>(find_root(parent, e.src))], id[static_cast<size_t>(find_root(parent, e.dst))], e.label});
  }
  Graph out;
  out.base = id[static_cast<size_t>(find_root(parent, g.base))];
  out.num_vertices = nv;
  for (const auto& [s, d, l] : dedup) out.edges.push_back({s, d, l});
  return out;
}

int rank_of(const Graph& g) { return static_cast<int>(g.edges.size()) - g.num_vertices + 1; }

bool is_rose(const Graph& g, int rank) {
  if (g.num_vertices != 1 || static_cast<int>(g.edges.size()) != rank) return false;
  std::set<int> labels;
  for (const auto& e : g.edges) labels.insert(e.label);
  return static_cast<int>(labels.size()) == rank;
}

namespace {

int step(const Graph& g, int v, Letter l) {
  for (const auto& e : g.edges) {
    if (l > 0 && e.label == l && e.src == v) return e.dst;
    if (l < 0 && e.label == -l && e.dst == v) return e.src;
  }
  return -1;
}

}  // namespace

bool member(const Graph& g, const Word& w) {
  int v = g.base;
  for (Letter l : w.letters()) {
    v = step(g, v, l);
    if (v < 0) return false;
  }
  return v == g.base;
}

std::vector<Word> products(const std::vector<Word>& gens, int depth) {
  std::set<Word> out = {Word()};
  std::set<Word> frontier = {Word()};
  for (int d = 0; d < depth; ++d) {
    std::set<Word> next;
    for (const Word& w : frontier) {
      for (const Word& g : gens) {
        for (const Word& x : {w * g, w * g.inverse()}) {
          if (!out.count(x)) {
            out.insert(x);
            next.insert(x);
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return {out.begin(), out.end()};
}

namespace {

void common_dfs(const Graph& g1, const Graph& g2, int v1, int v2, std::vector<Letter>& path, int max_len,
                std::vector<Word>& out) {
  if (!path.empty() && v1 == g1.base && v2 == g2.base) out.push_back(Word::from_letters(path));
  if (static_cast<int>(path.size()) == max_len) return;
  int top_label = 0;
  for (const auto& e : g1.edges) top_label = std::max(top_label, e.label);
  for (int l = 1; l <= top_label; ++l) {
    for (Letter s : {l, -l}) {
      if (!path.empty() && s == -path.back()) continue;
      int w1 = step(g1, v1, s), w2 = step(g2, v2, s);
      if (w1 < 0 || w2 < 0) continue;
      path.push_back(s);
      common_dfs(g1, g2, w1, w2, path, max_len, out);
      path.pop_back();
    }
  }
}

}  // namespace

std::vector<Word> common_members(const Graph& g1, const Graph& g2, int max_len) {
  std::vector<Word> out;
  std::vector<Letter> path;
  common_dfs(g1, g2, g1.base, g2.base, path, max_len, out);
  return out;
}

bool primitivity_certificate_rank3(const Word& w, int piece_len) {
  std::vector<Word> pieces;
  std::set<Word> seen;
  std::vector<Word> frontier = {Word()};
  for (int d = 0; d < piece_len; ++d) {
    std::vector<Word> next;
    for (const Word& p : frontier) {
      for (Letter l : {1, -1, 2, -2, 3, -3}) {
        Word q = p * Word::single(l);
        if (q.length() == d + 1 && seen.insert(q).second) {
          next.push_back(q);
          pieces.push_back(q);
        }
      }
    }
    frontier = std::move(next);
  }
  for (size_t i = 0; i < pieces.size(); ++i) {
    for (size_t j = i; j < pieces.size(); ++j) {
      if (is_rose(fold_words({w, pieces[i], pieces[j]}, 3), 3)) return true;
    }
  }
  return false;
}

long long abelianized_gcd(const Word& w, int rank) {
  std::vector<long long> sums(static_cast<size_t>(rank), 0);
  for (Letter l : w.letters()) sums[static_cast<size_t>(letter_index(l)) - 1] += l > 0 ? 1 : -1;
  long long g = 0;
  for (long long s : sums) g = std::gcd(g, s < 0 ? -s : s);
  return g;
}

int nielsen_rank(std::vector<Word> gens) {
  auto normalize = [](std::vector<Word>& ws) {
    std::set<Word> seen;
    std::vector<Word> out;
    for (const Word& w : ws) {
      if (w.empty()) continue;
      Word inv = w.inverse();
      const Word& rep = inv < w ? inv : w;
      if (seen.insert(rep).second) out.push_back(rep);
    }
    ws = std::move(out);
  };
  normalize(gens);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < gens.size() && !changed; ++i) {
      for (size_t j = 0; j < gens.size() && !changed; ++j) {
        if (i == j) continue;
        for (const Word& cand : {gens[i] * gens[j], gens[i] * gens[j].inverse(), gens[j] * gens[i],
                                 gens[j].inverse() * gens[i]}) {
          if (cand.length() < gens[i].length()) {
            gens[i] = cand;
            normalize(gens);
            changed = true;
            break;
          }
        }
      }
    }
  }
  return static_cast<int>(gens.size());
}

}  // namespace ffc::oracle
