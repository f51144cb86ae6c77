#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"
#include "word.hpp"

namespace ffc {

// A subgroup represented by its folded core graph. Pointed subgroups are
// elements of F_n; unpointed ones stand for conjugacy classes.
struct Subgroup {
  LabeledGraph graph;  // folded core, canonical
  bool pointed = true;
  int rank = 0;

  const std::string& key() const { return key_; }
  static Subgroup wrap(LabeledGraph folded_core, bool pointed);

 private:
  std::string key_;
};

struct FactorWitness {
  Subgroup subgroup;            // pointed
  std::vector<Word> complement;  // rank(subgroup) + complement.size() == n
};

// Fold the wedge of the word loops, take the core in the requested mode.
Subgroup subgroup_of(const std::vector<Word>& words, int rank, bool pointed);

// Spanning-tree generators read off the core graph (deterministic order).
std::vector<Word> generators(const Subgroup& h);

// For rank-1 subgroups: the single generator.
Word rank1_generator(const Subgroup& h);

// Attach a basepoint to an unpointed core (canonical vertex 0), giving a
// pointed representative of the conjugacy class.
Subgroup pointed_rep(const Subgroup& h);
Subgroup unpointed_class(const Subgroup& h);

bool contains(const Subgroup& h, const Word& w);
bool includes(const Subgroup& h, const Subgroup& k);          // k <= h, both pointed
bool conjugate_into_class(const Subgroup& h, const Subgroup& k);  // some conjugate of h lies in k (cores)

// Conjugator witness: gamma with gamma^{-1} w gamma in H, or absent.
std::optional<Word> conjugate_into(const Subgroup& h, const Word& w);

struct Intersection {
  Subgroup based;               // pointed; may be the trivial subgroup
  std::vector<Subgroup> others;  // unpointed classes of the non-tree components
};
Intersection intersect(const Subgroup& h1, const Subgroup& h2);

// Certificate check: fold(core_*(H) v complement loops) = rose.
bool verify_factor(const FactorWitness& w, int rank);

struct Corank1Certificate {
  bool embeds = false;  // core is a one-vertex sub-rose
  int v0 = -1, v1 = -1; // otherwise: identifying these folds to the rose
};
std::optional<Corank1Certificate> is_corank1_factor(const Subgroup& h, int rank);

// Whitehead descent to a core of minimal size; phi carries h to the minimum.
struct WhiteheadResult {
  Subgroup minimal;  // unpointed core of phi(H)
  BasisMap phi;      // automorphism, inverse attached
};
WhiteheadResult whitehead_minimize(const Subgroup& h, int rank);

std::optional<FactorWitness> is_free_factor(const Subgroup& h, int rank);

// Automorphism phi with phi(H) = <a_1,...,a_rank(H)> as pointed subgroups.
BasisMap extend_to_basis(const Subgroup& h, int rank);

// Algebraic antipodality, pointed side: fold(core_*(A) v u-loop) = rose.
// A must be a verified free factor of rank n-1 (witness optional shortcut).
bool antipodal_af(const Subgroup& a, const Word& u, int rank, const FactorWitness* witness = nullptr);

// Conjugacy-class side: after normalizing A to <a_1..a_{n-1}>, the cyclic
// reduction of the transported u must contain exactly one a_n^{±1}.
bool antipodal_of(const Subgroup& a, const Word& u, int rank, const FactorWitness* witness = nullptr);

// Normalizing tester reused across many u against the same Lambda.
class OfAntipodality {
 public:
  OfAntipodality(const Subgroup& a, int rank);
  bool test(const Word& u) const;

 private:
  BasisMap phi_;
  int rank_;
};

enum class Mode { AF, OF };

bool dist_le2(const Subgroup& v1, const Subgroup& v2, Mode mode, int rank);

struct SeparatingFactor {
  Subgroup l;       // rank 2, contains a_1
  int case_used;    // 1: no a_2-loop (bound M), 2: a_2-loop present (bound p)
  int bound;        // M or p
  bool based_trivial;    // L ∩ A = 1, always required
  bool all_components_trees;  // no conjugate of L meets A; holds when no conjugate of a_1 lies in A
};
SeparatingFactor separating_factor(const Subgroup& a, int rank);

// girth(core(f0^k(A))) for k = 0..kmax.
std::vector<int> injrad_growth(int rank, const Subgroup& a, int kmax);

}  // namespace ffc
