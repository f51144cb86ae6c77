#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "word.hpp"

namespace ffc {

// Directed graph with edges labeled by basis indices 1..rank, i.e. a graph
// carrying an orientation- and label-preserving morphism to the rose.
struct LabeledGraph {
  struct Edge {
    int src;
    int dst;
    int label;
    bool operator==(const Edge&) const = default;
    bool operator<(const Edge& o) const {
      if (src != o.src) return src < o.src;
      if (dst != o.dst) return dst < o.dst;
      return label < o.label;
    }
  };

  int rank = 0;
  int num_vertices = 0;
  int base = -1;  // -1 when unpointed
  std::vector<Edge> edges;
  bool folded = false;

  bool has_base() const { return base >= 0; }
  int rank_of_graph() const { return static_cast<int>(edges.size()) - num_vertices + 1; }
};

LabeledGraph rose(int n);
// Single basepointed vertex, no edges (the trivial subgroup's core).
LabeledGraph trivial_graph(int rank);
// Subdivided loop at the basepoint reading w; the empty word gives trivial_graph.
LabeledGraph loop_graph(const Word& w, int rank);
LabeledGraph wedge(const LabeledGraph& g1, const LabeledGraph& g2);

// Maximal Stallings folding. The result is canonically renumbered, so equal
// subgroups produce byte-identical serializations. An RNG may be supplied to
// randomize the fold processing order (the result is independent of it up to
// the canonical renumbering; the confluence suite checks this).
LabeledGraph fold(const LabeledGraph& g, std::mt19937_64* rng = nullptr);

// pointed: strip valence-1 vertices other than the basepoint.
// unpointed: strip all valence-1 vertices; rejects acyclic input.
LabeledGraph core(const LabeledGraph& g, bool pointed);

LabeledGraph identify(const LabeledGraph& g, int v0, int v1);

struct PullbackComponent {
  LabeledGraph graph;  // base set iff this is the (*,*) component
  bool based;
  bool has_cycle;
  std::pair<int, int> sample_pair;  // one (v1, v2) vertex pair lying in this component
};
// Fiber product over the rose, split into connected components. The based
// component (when both inputs are pointed) is listed first.
std::vector<PullbackComponent> pullback(const LabeledGraph& g1, const LabeledGraph& g2);

// Label- and orientation-preserving isomorphism; returns the vertex bijection
// g1 -> g2 when one exists.
std::optional<std::vector<int>> iso(const LabeledGraph& g1, const LabeledGraph& g2, bool respect_base);

// Canonical renumbering: BFS from the basepoint, or from the best root when
// unpointed. Input must be folded.
LabeledGraph canonical(const LabeledGraph& g);
std::string canonical_key(const LabeledGraph& g, bool respect_base);

int graph_girth(const LabeledGraph& g);  // shortest cycle; rejects forests
std::optional<int> has_basis_loop(const LabeledGraph& g, int index);
int diameter(const LabeledGraph& g);
bool is_connected(const LabeledGraph& g);
bool is_folded_graph(const LabeledGraph& g);  // checks the no-collision property

std::string serialize(const LabeledGraph& g);
LabeledGraph parse_graph(const std::string& text);
std::string to_dot(const LabeledGraph& g);

// O(1) tracing adjacency for folded graphs.
class FoldedView {
 public:
  explicit FoldedView(const LabeledGraph& g);
  int step(int v, Letter l) const;  // -1 when no such edge
  const LabeledGraph& graph() const { return *g_; }

 private:
  const LabeledGraph* g_;
  std::vector<int> out_, in_;
};

std::optional<int> trace(const FoldedView& view, int from, const Word& w);

// Label-preserving morphism h -> k between folded graphs, determined by the
// image of one root. Returns the full vertex map when consistent.
std::optional<std::vector<int>> morphism_from(const LabeledGraph& h, int root_h, const LabeledGraph& k, int root_k);
bool exists_morphism(const LabeledGraph& h, const LabeledGraph& k);

// Longest directed run of edges labeled `index`; rejects graphs where that
// subgraph has a cycle (runs would be unbounded).
int longest_label_run(const LabeledGraph& g, int index);
bool label_subgraph_has_cycle(const LabeledGraph& g, int index);

// All cyclic-class labels of tight (locally injective) closed paths of length
// <= max_len, deduplicated up to rotation and inversion, sorted by length.
// `exhausted` reports whether enumeration completed within the node budget.
struct TightLoops {
  std::vector<Word> classes;
  bool exhausted;
};
TightLoops tight_loop_classes(const LabeledGraph& g, int max_len, size_t budget = 2'000'000);

// Streaming variant: feeds every tight closed loop (with repetitions across
// rotations and start vertices) to `fn`, stopping as soon as fn returns true.
struct TightLoopScan {
  bool found;     // fn accepted some loop
  bool complete;  // enumeration finished within the budget
};
TightLoopScan scan_tight_loops(const LabeledGraph& g, int max_len, size_t budget,
                               const std::function<bool(const Word&)>& fn);

// Exact decision: does g carry a tight closed path whose label contains
// exactly one edge labeled l1 and exactly one labeled l2 (l1 != l2)?
// Returns such a loop word when one exists.
std::optional<Word> find_loop_with_unit_counts(const LabeledGraph& g, int l1, int l2);

}  // namespace ffc
