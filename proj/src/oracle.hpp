#pragma once

#include <vector>

#include "word.hpp"

namespace ffc::oracle {

// Deliberately independent verification paths. Nothing here may call into the
// production graph engine; these structures re-derive folding, membership and
// rank from scratch so the acceptance suite compares two implementations.

struct Graph {
  struct Edge {
    int src, dst, label;
  };
  int base = 0;
  int num_vertices = 1;
  std::vector<Edge> edges;
};

// Naive fixpoint folding of the wedge of word loops.
Graph fold_words(const std::vector<Word>& words, int rank);

int rank_of(const Graph& g);
bool is_rose(const Graph& g, int rank);
bool member(const Graph& g, const Word& w);  // closed path at the basepoint

// All distinct reduced products of at most `depth` generators and inverses.
std::vector<Word> products(const std::vector<Word>& gens, int depth);

// Reduced words w with |w| <= max_len lying in both subgroups (by tracing both
// oracle graphs simultaneously with pruning).
std::vector<Word> common_members(const Graph& g1, const Graph& g2, int max_len);

// Bounded search for a primitivity certificate in rank 3: a pair of words of
// length <= piece_len whose loops together with w fold to the rose.
bool primitivity_certificate_rank3(const Word& w, int piece_len);

// gcd of the exponent sums; a value != 1 certifies non-primitivity.
long long abelianized_gcd(const Word& w, int rank);

// Rank via Nielsen reduction: repeatedly replace a generator by a strictly
// shorter product with another, dropping trivial words.
int nielsen_rank(std::vector<Word> gens);

}  // namespace ffc::oracle
