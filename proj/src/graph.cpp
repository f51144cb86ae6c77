#include "graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ffc {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

void check_vertex(const LabeledGraph& g, int v, const char* what) {
  if (v < 0 || v >= g.num_vertices) fail(ErrorKind::Precondition, std::string(what) + ": vertex not in graph");
}

}  // namespace

LabeledGraph rose(int n) {
  if (n < 1) fail(ErrorKind::Precondition, "rose needs rank at least 1");
  LabeledGraph g;
  g.rank = n;
  g.num_vertices = 1;
  g.base = 0;
  for (int i = 1; i <= n; ++i) g.edges.push_back({0, 0, i});
  g.folded = true;
  return g;
}

LabeledGraph trivial_graph(int rank) {
  LabeledGraph g;
  g.rank = rank;
  g.num_vertices = 1;
  g.base = 0;
  g.folded = true;
  return g;
}

LabeledGraph loop_graph(const Word& w, int rank) {
  if (w.max_index() > rank) fail(ErrorKind::Precondition, "word uses letter beyond rank");
  if (w.empty()) return trivial_graph(rank);
  LabeledGraph g;
  g.rank = rank;
  g.num_vertices = w.length();
  g.base = 0;
  int len = w.length();
  for (int i = 0; i < len; ++i) {
    Letter l = w.letters()[static_cast<size_t>(i)];
    int a = i, b = (i + 1) % len;
    if (l > 0) {
      g.edges.push_back({a, b, l});
    } else {
      g.edges.push_back({b, a, -l});
    }
  }
  g.folded = false;
  return g;
}

LabeledGraph wedge(const LabeledGraph& g1, const LabeledGraph& g2) {
  if (!g1.has_base() || !g2.has_base()) fail(ErrorKind::Precondition, "wedge requires basepoints on both graphs");
  if (g1.rank != g2.rank) fail(ErrorKind::Precondition, "wedge requires equal ranks");
  LabeledGraph g;
  g.rank = g1.rank;
  g.base = g1.base;
  g.edges = g1.edges;
  // g2's vertices come after g1's, except its basepoint which maps onto g1's.
  auto map2 = [&](int v) {
    if (v == g2.base) return g1.base;
    int shifted = v < g2.base ? v : v - 1;
    return g1.num_vertices + shifted;
  };
  g.num_vertices = g1.num_vertices + g2.num_vertices - 1;
  for (const auto& e : g2.edges) g.edges.push_back({map2(e.src), map2(e.dst), e.label});
  g.folded = false;
  return g;
}

LabeledGraph fold(const LabeledGraph& g, std::mt19937_64* rng) {
  UnionFind uf(g.num_vertices);
  std::vector<LabeledGraph::Edge> edges = g.edges;
  std::vector<bool> dead(edges.size(), false);
  std::vector<size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);

  bool changed = true;
  while (changed) {
    changed = false;
    if (rng) std::shuffle(order.begin(), order.end(), *rng);
    // (root vertex, label) -> representative edge for each direction
    std::unordered_map<long long, size_t> out_rep, in_rep;
    auto key = [&](int v, int label) { return static_cast<long long>(v) * (g.rank + 1) + label; };
    for (size_t oi = 0; oi < order.size(); ++oi) {
      size_t ei = order[oi];
      if (dead[ei]) continue;
      int rs = uf.find(edges[ei].src);
      int rd = uf.find(edges[ei].dst);
      auto ko = key(rs, edges[ei].label);
      auto it = out_rep.find(ko);
      if (it != out_rep.end() && it->second != ei) {
        size_t ej = it->second;
        int rd2 = uf.find(edges[ej].dst);
        if (rd != rd2) {
          uf.unite(rd, rd2);
          changed = true;
        }
        dead[ei] = true;
        changed = true;
        continue;
      }
      out_rep[ko] = ei;
      auto ki = key(rd, edges[ei].label);
      auto it2 = in_rep.find(ki);
      if (it2 != in_rep.end() && it2->second != ei) {
        size_t ej = it2->second;
        int rs2 = uf.find(edges[ej].src);
        if (rs != rs2) {
          uf.unite(rs, rs2);
          changed = true;
        }
        dead[ei] = true;
        out_rep.erase(ko);
        changed = true;
        continue;
      }
      in_rep[ki] = ei;
    }
  }

  // Compact surviving roots and deduplicated edges.
  std::vector<int> newid(g.num_vertices, -1);
  int nv = 0;
  for (int v = 0; v < g.num_vertices; ++v) {
    int r = uf.find(v);
    if (newid[r] < 0) newid[r] = nv++;
  }
  std::set<LabeledGraph::Edge> eset;
  for (size_t i = 0; i < edges.size(); ++i) {
    if (dead[i]) continue;
    eset.insert({newid[uf.find(edges[i].src)], newid[uf.find(edges[i].dst)], edges[i].label});
  }
  LabeledGraph out;
  out.rank = g.rank;
  out.num_vertices = nv;
  out.base = g.has_base() ? newid[uf.find(g.base)] : -1;
  out.edges.assign(eset.begin(), eset.end());
  out.folded = true;
  return canonical(out);
}

namespace {

// BFS numbering from a root, visiting labels in order, out-direction first.
// Requires a folded graph. Returns old->new map (every vertex reached).
std::vector<int> bfs_numbering(const FoldedView& view, int root) {
  const LabeledGraph& g = view.graph();
  std::vector<int> num(g.num_vertices, -1);
  std::queue<int> q;
  num[root] = 0;
  int next = 1;
  q.push(root);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int l = 1; l <= g.rank; ++l) {
      for (Letter step : {l, -l}) {
        int t = view.step(v, step);
        if (t >= 0 && num[t] < 0) {
          num[t] = next++;
          q.push(t);
        }
      }
    }
  }
  for (int v = 0; v < g.num_vertices; ++v) {
    if (num[v] < 0) fail(ErrorKind::Internal, "canonical renumbering requires a connected graph");
  }
  return num;
}

LabeledGraph renumber(const LabeledGraph& g, const std::vector<int>& num) {
  LabeledGraph out;
  out.rank = g.rank;
  out.num_vertices = g.num_vertices;
  out.base = g.has_base() ? num[g.base] : -1;
  out.folded = g.folded;
  for (const auto& e : g.edges) out.edges.push_back({num[e.src], num[e.dst], e.label});
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

}  // namespace

LabeledGraph canonical(const LabeledGraph& g) {
  if (!g.folded) fail(ErrorKind::Precondition, "canonical form requires a folded graph");
  FoldedView view(g);
  if (g.has_base()) {
    return renumber(g, bfs_numbering(view, g.base));
  }
  LabeledGraph best;
  std::string best_key;
  for (int root = 0; root < g.num_vertices; ++root) {
    LabeledGraph cand = renumber(g, bfs_numbering(view, root));
    std::string key = serialize(cand);
    if (best_key.empty() || key < best_key) {
      best_key = key;
      best = std::move(cand);
    }
  }
  return best;
}

std::string canonical_key(const LabeledGraph& g, bool respect_base) {
  LabeledGraph h = g;
  if (!respect_base) h.base = -1;
  return serialize(canonical(h));
}

LabeledGraph core(const LabeledGraph& g, bool pointed) {
  if (!g.folded) fail(ErrorKind::Precondition, "core requires a folded graph");
  if (pointed && !g.has_base()) fail(ErrorKind::Precondition, "pointed core requires a basepoint");
  std::vector<int> valence(g.num_vertices, 0);
  std::vector<bool> edge_alive(g.edges.size(), true);
  std::vector<bool> vert_alive(g.num_vertices, true);
  for (const auto& e : g.edges) {
    valence[e.src]++;
    valence[e.dst]++;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < g.num_vertices; ++v) {
      if (!vert_alive[v] || valence[v] > 1) continue;
      if (pointed && v == g.base) continue;
      // drop v and its pendant edge, if any
      vert_alive[v] = false;
      changed = true;
      for (size_t i = 0; i < g.edges.size(); ++i) {
        if (!edge_alive[i]) continue;
        if (g.edges[i].src == v || g.edges[i].dst == v) {
          edge_alive[i] = false;
          valence[g.edges[i].src]--;
          valence[g.edges[i].dst]--;
        }
      }
    }
  }
  int alive = static_cast<int>(std::count(vert_alive.begin(), vert_alive.end(), true));
  if (alive == 0) {
    if (pointed) fail(ErrorKind::Internal, "pointed core erased the basepoint");
    fail(ErrorKind::Precondition, "unpointed core of an acyclic graph is empty");
  }
  std::vector<int> newid(g.num_vertices, -1);
  int nv = 0;
  for (int v = 0; v < g.num_vertices; ++v) {
    if (vert_alive[v]) newid[v] = nv++;
  }
  LabeledGraph out;
  out.rank = g.rank;
  out.num_vertices = nv;
  out.base = pointed ? newid[g.base] : -1;
  for (size_t i = 0; i < g.edges.size(); ++i) {
    if (edge_alive[i]) out.edges.push_back({newid[g.edges[i].src], newid[g.edges[i].dst], g.edges[i].label});
  }
  out.folded = true;
  return canonical(out);
}

LabeledGraph identify(const LabeledGraph& g, int v0, int v1) {
  check_vertex(g, v0, "identify");
  check_vertex(g, v1, "identify");
  if (v0 == v1) fail(ErrorKind::Precondition, "identify requires two distinct vertices");
  LabeledGraph out;
  out.rank = g.rank;
  auto map = [&](int v) {
    if (v == v1) v = v0;
    return v > v1 ? v - 1 : v;
  };
  out.num_vertices = g.num_vertices - 1;
  out.base = g.has_base() ? map(g.base) : -1;
  for (const auto& e : g.edges) out.edges.push_back({map(e.src), map(e.dst), e.label});
  out.folded = false;
  return out;
}

std::vector<PullbackComponent> pullback(const LabeledGraph& g1, const LabeledGraph& g2) {
  if (!g1.folded || !g2.folded) fail(ErrorKind::Precondition, "pullback requires folded inputs");
  if (g1.rank != g2.rank) fail(ErrorKind::Precondition, "pullback requires equal ranks");
  std::unordered_map<long long, int> pair_id;
  std::vector<std::pair<int, int>> pairs;
  auto pid = [&](int a, int b) {
    long long k = static_cast<long long>(a) * g2.num_vertices + b;
    auto it = pair_id.find(k);
    if (it != pair_id.end()) return it->second;
    int id = static_cast<int>(pairs.size());
    pair_id.emplace(k, id);
    pairs.emplace_back(a, b);
    return id;
  };
  struct PEdge {
    int src, dst, label;
  };
  std::vector<PEdge> pedges;
  for (const auto& e1 : g1.edges) {
    for (const auto& e2 : g2.edges) {
      if (e1.label != e2.label) continue;
      pedges.push_back({pid(e1.src, e2.src), pid(e1.dst, e2.dst), e1.label});
    }
  }
  int based_pair = -1;
  if (g1.has_base() && g2.has_base()) based_pair = pid(g1.base, g2.base);

  UnionFind uf(static_cast<int>(pairs.size()));
  for (const auto& e : pedges) uf.unite(e.src, e.dst);

  std::map<int, std::vector<int>> comp_vertices;
  for (int v = 0; v < static_cast<int>(pairs.size()); ++v) comp_vertices[uf.find(v)].push_back(v);

  std::vector<PullbackComponent> out;
  for (auto& [root, verts] : comp_vertices) {
    std::unordered_map<int, int> newid;
    for (int v : verts) newid.emplace(v, static_cast<int>(newid.size()));
    LabeledGraph comp;
    comp.rank = g1.rank;
    comp.num_vertices = static_cast<int>(verts.size());
    for (const auto& e : pedges) {
      if (uf.find(e.src) == root) comp.edges.push_back({newid[e.src], newid[e.dst], e.label});
    }
    std::sort(comp.edges.begin(), comp.edges.end());
    comp.edges.erase(std::unique(comp.edges.begin(), comp.edges.end()), comp.edges.end());
    bool based = based_pair >= 0 && uf.find(based_pair) == root;
    comp.base = based ? newid[based_pair] : -1;
    comp.folded = true;
    comp = canonical(comp);
    bool cyc = static_cast<int>(comp.edges.size()) >= comp.num_vertices;
    out.push_back({std::move(comp), based, cyc, pairs[static_cast<size_t>(verts.front())]});
  }
  std::sort(out.begin(), out.end(), [](const PullbackComponent& a, const PullbackComponent& b) {
    if (a.based != b.based) return a.based;
    return serialize(a.graph) < serialize(b.graph);
  });
  return out;
}

namespace {

std::optional<std::pair<std::vector<int>, std::string>> best_numbering(const LabeledGraph& g, bool respect_base) {
  FoldedView view(g);
  std::vector<int> roots;
  if (respect_base) {
    if (!g.has_base()) return std::nullopt;
    roots.push_back(g.base);
  } else {
    roots.resize(static_cast<size_t>(g.num_vertices));
    std::iota(roots.begin(), roots.end(), 0);
  }
  std::optional<std::pair<std::vector<int>, std::string>> best;
  for (int r : roots) {
    auto num = bfs_numbering(view, r);
    LabeledGraph h = g;
    if (!respect_base) h.base = -1;
    std::string key = serialize(renumber(h, num));
    if (!best || key < best->second) best = {{num, key}};
  }
  return best;
}

}  // namespace

std::optional<std::vector<int>> iso(const LabeledGraph& g1, const LabeledGraph& g2, bool respect_base) {
  if (!g1.folded || !g2.folded) fail(ErrorKind::Precondition, "iso requires folded graphs");
  if (g1.rank != g2.rank || g1.num_vertices != g2.num_vertices || g1.edges.size() != g2.edges.size()) return std::nullopt;
  if (respect_base && (!g1.has_base() || !g2.has_base())) fail(ErrorKind::Precondition, "iso with basepoints requires both basepoints");
  auto b1 = best_numbering(g1, respect_base);
  auto b2 = best_numbering(g2, respect_base);
  if (!b1 || !b2 || b1->second != b2->second) return std::nullopt;
  // bijection = num2^{-1} ∘ num1
  std::vector<int> inv2(g2.num_vertices);
  for (int v = 0; v < g2.num_vertices; ++v) inv2[b2->first[static_cast<size_t>(v)]] = v;
  std::vector<int> bij(g1.num_vertices);
  for (int v = 0; v < g1.num_vertices; ++v) bij[v] = inv2[b1->first[static_cast<size_t>(v)]];
  return bij;
}

int graph_girth(const LabeledGraph& g) {
  int best = -1;
  std::set<std::pair<int, int>> seen;
  bool parallel = false;
  for (const auto& e : g.edges) {
    if (e.src == e.dst) return 1;
    auto key = std::minmax(e.src, e.dst);
    if (!seen.insert(key).second) parallel = true;
  }
  if (parallel) return 2;
  // Simple graph now: remove each edge and measure the shortest replacement path.
  std::vector<std::vector<int>> adj(g.num_vertices);
  std::vector<std::pair<int, int>> uedges(seen.begin(), seen.end());
  for (const auto& [u, v] : uedges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (const auto& [u, v] : uedges) {
    std::vector<int> dist(g.num_vertices, -1);
    std::queue<int> q;
    dist[u] = 0;
    q.push(u);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int y : adj[x]) {
        if ((x == u && y == v) || (x == v && y == u)) continue;  // the removed edge
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          q.push(y);
        }
      }
    }
    if (dist[v] >= 0) {
      int cyc = dist[v] + 1;
      if (best < 0 || cyc < best) best = cyc;
    }
  }
  if (best < 0) fail(ErrorKind::Precondition, "girth undefined: graph is acyclic");
  return best;
}

std::optional<int> has_basis_loop(const LabeledGraph& g, int index) {
  for (const auto& e : g.edges) {
    if (e.label == index && e.src == e.dst) return e.src;
  }
  return std::nullopt;
}

int diameter(const LabeledGraph& g) {
  std::vector<std::vector<int>> adj(g.num_vertices);
  for (const auto& e : g.edges) {
    if (e.src != e.dst) {
      adj[e.src].push_back(e.dst);
      adj[e.dst].push_back(e.src);
    }
  }
  int best = 0;
  for (int s = 0; s < g.num_vertices; ++s) {
    std::vector<int> dist(g.num_vertices, -1);
    std::queue<int> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      best = std::max(best, dist[x]);
      for (int y : adj[x]) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          q.push(y);
        }
      }
    }
  }
  return best;
}

bool is_connected(const LabeledGraph& g) {
  if (g.num_vertices == 0) return false;
  std::vector<std::vector<int>> adj(g.num_vertices);
  for (const auto& e : g.edges) {
    adj[e.src].push_back(e.dst);
    adj[e.dst].push_back(e.src);
  }
  std::vector<bool> vis(g.num_vertices, false);
  std::queue<int> q;
  vis[0] = true;
  q.push(0);
  int seen = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int y : adj[x]) {
      if (!vis[y]) {
        vis[y] = true;
        ++seen;
        q.push(y);
      }
    }
  }
  return seen == g.num_vertices;
}

bool is_folded_graph(const LabeledGraph& g) {
  std::set<std::pair<int, int>> outs, ins;
  for (const auto& e : g.edges) {
    if (!outs.insert({e.src, e.label}).second) return false;
    if (!ins.insert({e.dst, e.label}).second) return false;
  }
  return true;
}

std::string serialize(const LabeledGraph& g) {
  std::ostringstream os;
  os << "n=" << g.rank << " base=";
  if (g.has_base()) {
    os << g.base;
  } else {
    os << "none";
  }
  os << "\n";
  auto edges = g.edges;
  std::sort(edges.begin(), edges.end());
  for (const auto& e : edges) os << e.src << ' ' << e.dst << ' ' << e.label << "\n";
  return os.str();
}

LabeledGraph parse_graph(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  LabeledGraph g;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (!have_header) {
      std::string ntok, btok;
      ls >> ntok >> btok;
      if (ntok.rfind("n=", 0) != 0 || btok.rfind("base=", 0) != 0) {
        fail(ErrorKind::Parse, "graph parse error at line " + std::to_string(lineno) + ": expected header `n=<rank> base=<vertex|none>`");
      }
      g.rank = std::stoi(ntok.substr(2));
      std::string b = btok.substr(5);
      g.base = b == "none" ? -1 : std::stoi(b);
      if (g.rank < 1) fail(ErrorKind::Parse, "graph parse error at line " + std::to_string(lineno) + ": rank must be positive");
      have_header = true;
      continue;
    }
    int s, d, l;
    if (!(ls >> s >> d >> l)) {
      fail(ErrorKind::Parse, "graph parse error at line " + std::to_string(lineno) + ": expected `src dst label`");
    }
    if (s < 0 || d < 0) fail(ErrorKind::Parse, "graph parse error at line " + std::to_string(lineno) + ": negative vertex id");
    if (l < 1 || l > g.rank) fail(ErrorKind::Parse, "graph parse error at line " + std::to_string(lineno) + ": label out of range");
    g.edges.push_back({s, d, l});
    g.num_vertices = std::max({g.num_vertices, s + 1, d + 1});
  }
  if (!have_header) fail(ErrorKind::Parse, "graph parse error: missing header line");
  g.num_vertices = std::max(g.num_vertices, g.base + 1);
  if (g.num_vertices == 0) g.num_vertices = 1;
  if (g.has_base() && g.base >= g.num_vertices) fail(ErrorKind::Parse, "graph parse error: basepoint not a vertex");
  g.folded = is_folded_graph(g);
  return g;
}

std::string to_dot(const LabeledGraph& g) {
  std::ostringstream os;
  os << "digraph labeled_graph {\n  rankdir=LR;\n";
  for (int v = 0; v < g.num_vertices; ++v) {
    os << "  v" << v << " [shape=" << (v == g.base ? "doublecircle" : "circle") << ",label=\"" << v << "\"];\n";
  }
  auto edges = g.edges;
  std::sort(edges.begin(), edges.end());
  for (const auto& e : edges) {
    os << "  v" << e.src << " -> v" << e.dst << " [label=\"a" << e.label << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

FoldedView::FoldedView(const LabeledGraph& g) : g_(&g) {
  out_.assign(static_cast<size_t>(g.num_vertices) * g.rank, -1);
  in_.assign(static_cast<size_t>(g.num_vertices) * g.rank, -1);
  for (const auto& e : g.edges) {
    size_t ko = static_cast<size_t>(e.src) * g.rank + (e.label - 1);
    size_t ki = static_cast<size_t>(e.dst) * g.rank + (e.label - 1);
    if (out_[ko] != -1 || in_[ki] != -1) fail(ErrorKind::Precondition, "graph is not folded");
    out_[ko] = e.dst;
    in_[ki] = e.src;
  }
}

int FoldedView::step(int v, Letter l) const {
  size_t idx = static_cast<size_t>(v) * g_->rank + (letter_index(l) - 1);
  return l > 0 ? out_[idx] : in_[idx];
}

std::optional<int> trace(const FoldedView& view, int from, const Word& w) {
  int v = from;
  for (Letter l : w.letters()) {
    if (letter_index(l) > view.graph().rank) fail(ErrorKind::Precondition, "word uses letter beyond graph rank");
    v = view.step(v, l);
    if (v < 0) return std::nullopt;
  }
  return v;
}

std::optional<std::vector<int>> morphism_from(const LabeledGraph& h, int root_h, const LabeledGraph& k, int root_k) {
  FoldedView vh(h), vk(k);
  std::vector<int> map(h.num_vertices, -1);
  map[root_h] = root_k;
  std::queue<int> q;
  q.push(root_h);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int l = 1; l <= h.rank; ++l) {
      for (Letter step : {l, -l}) {
        int t = vh.step(v, step);
        if (t < 0) continue;
        int w = vk.step(map[v], step);
        if (w < 0) return std::nullopt;
        if (map[t] < 0) {
          map[t] = w;
          q.push(t);
        } else if (map[t] != w) {
          return std::nullopt;
        }
      }
    }
  }
  for (int v = 0; v < h.num_vertices; ++v) {
    if (map[v] < 0) fail(ErrorKind::Precondition, "morphism search requires a connected source graph");
  }
  return map;
}

bool exists_morphism(const LabeledGraph& h, const LabeledGraph& k) {
  for (int w = 0; w < k.num_vertices; ++w) {
    if (morphism_from(h, 0, k, w)) return true;
  }
  return false;
}

bool label_subgraph_has_cycle(const LabeledGraph& g, int index) {
  std::vector<int> next(g.num_vertices, -1);
  for (const auto& e : g.edges) {
    if (e.label == index) next[e.src] = e.dst;
  }
  std::vector<int> color(g.num_vertices, 0);
  for (int s = 0; s < g.num_vertices; ++s) {
    if (color[s] != 0) continue;
    int v = s;
    std::vector<int> path;
    while (v >= 0 && color[v] == 0) {
      color[v] = 1;
      path.push_back(v);
      v = next[v];
    }
    if (v >= 0 && color[v] == 1) return true;
    for (int p : path) color[p] = 2;
  }
  return false;
}

int longest_label_run(const LabeledGraph& g, int index) {
  if (label_subgraph_has_cycle(g, index)) {
    fail(ErrorKind::Precondition, "label runs are unbounded: the label subgraph has a cycle");
  }
  std::vector<int> next(g.num_vertices, -1);
  for (const auto& e : g.edges) {
    if (e.label == index) next[e.src] = e.dst;
  }
  std::vector<int> memo(g.num_vertices, -1);
  int best = 0;
  for (int s = 0; s < g.num_vertices; ++s) {
    std::vector<int> stack;
    int v = s;
    while (v >= 0 && memo[v] < 0) {
      stack.push_back(v);
      v = next[v];
    }
    int run = v >= 0 ? memo[v] : 0;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      memo[u] = next[u] >= 0 ? run + 1 : 0;
      run = memo[u];
    }
    best = std::max(best, memo[s]);
  }
  return best;
}

TightLoopScan scan_tight_loops(const LabeledGraph& g, int max_len, size_t budget,
                               const std::function<bool(const Word&)>& fn) {
  FoldedView view(g);
  std::vector<std::vector<Letter>> opts(static_cast<size_t>(g.num_vertices));
  for (int v = 0; v < g.num_vertices; ++v) {
    for (int l = 1; l <= g.rank; ++l) {
      for (Letter step : {l, -l}) {
        if (view.step(v, step) >= 0) opts[static_cast<size_t>(v)].push_back(step);
      }
    }
  }
  std::vector<Letter> path;
  size_t nodes = 0;
  struct Frame {
    int vertex;
    size_t next_opt;
  };
  TightLoopScan result{false, true};
  for (int start = 0; start < g.num_vertices; ++start) {
    std::vector<Frame> stack;
    stack.push_back({start, 0});
    path.clear();
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next_opt == 0 && !path.empty() && f.vertex == start && path.front() != -path.back()) {
        if (fn(Word::from_letters(path))) {
          result.found = true;
          return result;
        }
      }
      if (static_cast<int>(path.size()) >= max_len || f.next_opt >= opts[static_cast<size_t>(f.vertex)].size()) {
        stack.pop_back();
        if (!path.empty()) path.pop_back();
        continue;
      }
      Letter l = opts[static_cast<size_t>(f.vertex)][f.next_opt++];
      if (!path.empty() && l == -path.back()) continue;
      if (++nodes > budget) {
        result.complete = false;
        return result;
      }
      path.push_back(l);
      stack.push_back({view.step(f.vertex, l), 0});
    }
  }
  return result;
}

TightLoops tight_loop_classes(const LabeledGraph& g, int max_len, size_t budget) {
  FoldedView view(g);
  std::vector<std::vector<Letter>> opts(static_cast<size_t>(g.num_vertices));
  for (int v = 0; v < g.num_vertices; ++v) {
    for (int l = 1; l <= g.rank; ++l) {
      for (Letter step : {l, -l}) {
        if (view.step(v, step) >= 0) opts[static_cast<size_t>(v)].push_back(step);
      }
    }
  }
  std::set<Word> classes;
  bool exhausted = true;
  std::vector<Letter> path;
  size_t nodes = 0;

  struct Frame {
    int vertex;
    size_t next_opt;
  };
  for (int start = 0; start < g.num_vertices && exhausted; ++start) {
    std::vector<Frame> stack;
    stack.push_back({start, 0});
    path.clear();
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next_opt == 0 && !path.empty() && f.vertex == start) {
        if (path.front() != -path.back()) {
          classes.insert(cyclic_class_key(Word::from_letters(path)));
        }
      }
      if (static_cast<int>(path.size()) >= max_len || f.next_opt >= opts[static_cast<size_t>(f.vertex)].size()) {
        stack.pop_back();
        if (!path.empty()) path.pop_back();
        continue;
      }
      Letter l = opts[static_cast<size_t>(f.vertex)][f.next_opt++];
      if (!path.empty() && l == -path.back()) continue;
      if (++nodes > budget) {
        exhausted = false;
        break;
      }
      path.push_back(l);
      stack.push_back({view.step(f.vertex, l), 0});
    }
  }
  return {std::vector<Word>(classes.begin(), classes.end()), exhausted};
}

namespace {

// Directed edge = (edge index, forward?). Reading direction: forward reads
// +label from src to dst, backward reads -label from dst to src.
struct DirEdge {
  int e;
  bool fwd;
};

// Reduced-path reachability from `from` to `to` inside the subgraph of edges
// whose label avoids {l1, l2}. Returns the letter sequence of one such path.
std::optional<std::vector<Letter>> reduced_path_avoiding(const LabeledGraph& g, int from, int to, int l1, int l2) {
  if (from == to) return std::vector<Letter>{};
  std::vector<DirEdge> dirs;
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    if (g.edges[e].label == l1 || g.edges[e].label == l2) continue;
    dirs.push_back({e, true});
    dirs.push_back({e, false});
  }
  auto head = [&](const DirEdge& d) { return d.fwd ? g.edges[d.e].dst : g.edges[d.e].src; };
  auto tail = [&](const DirEdge& d) { return d.fwd ? g.edges[d.e].src : g.edges[d.e].dst; };
  auto letter_of = [&](const DirEdge& d) { return d.fwd ? g.edges[d.e].label : -g.edges[d.e].label; };
  // state = index into dirs (the last directed edge of the path)
  std::vector<int> parent(dirs.size(), -2);  // -2 unvisited, -1 start
  std::queue<size_t> q;
  for (size_t i = 0; i < dirs.size(); ++i) {
    if (tail(dirs[i]) == from) {
      parent[i] = -1;
      q.push(i);
    }
  }
  while (!q.empty()) {
    size_t i = q.front();
    q.pop();
    if (head(dirs[i]) == to) {
      std::vector<Letter> letters;
      for (long long j = static_cast<long long>(i); j >= 0; j = parent[static_cast<size_t>(j)]) {
        letters.push_back(letter_of(dirs[static_cast<size_t>(j)]));
      }
      std::reverse(letters.begin(), letters.end());
      return letters;
    }
    for (size_t j = 0; j < dirs.size(); ++j) {
      if (parent[j] != -2) continue;
      if (tail(dirs[j]) != head(dirs[i])) continue;
      if (dirs[j].e == dirs[i].e && dirs[j].fwd != dirs[i].fwd) continue;  // backtrack
      parent[j] = static_cast<int>(i);
      q.push(j);
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Word> find_loop_with_unit_counts(const LabeledGraph& g, int l1, int l2) {
  if (l1 == l2) fail(ErrorKind::Precondition, "unit-count loop search needs two distinct labels");
  std::vector<DirEdge> d1, d2;
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    if (g.edges[e].label == l1) {
      d1.push_back({e, true});
      d1.push_back({e, false});
    }
    if (g.edges[e].label == l2) {
      d2.push_back({e, true});
      d2.push_back({e, false});
    }
  }
  auto head = [&](const DirEdge& d) { return d.fwd ? g.edges[d.e].dst : g.edges[d.e].src; };
  auto tail = [&](const DirEdge& d) { return d.fwd ? g.edges[d.e].src : g.edges[d.e].dst; };
  auto letter_of = [&](const DirEdge& d) { return d.fwd ? g.edges[d.e].label : -g.edges[d.e].label; };
  for (const auto& e1 : d1) {
    for (const auto& e2 : d2) {
      // Junctions between differently labeled edges can never backtrack, so
      // plain reduced-path reachability between the endpoints suffices.
      auto p = reduced_path_avoiding(g, head(e1), tail(e2), l1, l2);
      if (!p) continue;
      auto q = reduced_path_avoiding(g, head(e2), tail(e1), l1, l2);
      if (!q) continue;
      std::vector<Letter> letters;
      letters.push_back(letter_of(e1));
      letters.insert(letters.end(), p->begin(), p->end());
      letters.push_back(letter_of(e2));
      letters.insert(letters.end(), q->begin(), q->end());
      return Word::from_letters(letters);
    }
  }
  return std::nullopt;
}

}  // namespace ffc
