#pragma once

#include <map>
#include <optional>
#include <utility>

#include "report.hpp"
#include "subgroup.hpp"

namespace ffc {

// A vertex of the free-factor complex: a proper free factor (AF side) or a
// conjugacy class of proper free factors (OF side).
struct FactorVertex {
  Subgroup subgroup;  // pointed in AF mode, unpointed in OF mode
  Mode mode = Mode::AF;
  std::optional<FactorWitness> witness;  // attached to a pointed representative
  std::string key;                       // mode-appropriate equality key

  bool operator==(const FactorVertex& o) const { return key == o.key; }
};

FactorVertex make_vertex(const Subgroup& pointed, Mode mode, std::optional<FactorWitness> witness);

// Nonempty proper subsets of {1..n} as bitmasks (bit i-1 for index i).
using Subset = unsigned;
inline int subset_size(Subset s) { return __builtin_popcount(s); }
inline Subset full_set(int n) { return (1u << n) - 1u; }

struct Apartment {
  int n = 0;
  Mode mode = Mode::AF;
  std::map<Subset, FactorVertex> assignment;
  std::optional<std::vector<Word>> basis;  // present iff constructed as standard

  const FactorVertex& at(Subset s) const;
  bool has_basis() const { return basis.has_value(); }
  const Word& basis_word(int i) const;  // 1-based
};

Apartment standard_apartment(const std::vector<Word>& basis, Mode mode, int n);
Report verify_apartment(const Apartment& ap);
bool is_standard_af(const Apartment& ap);
Report antipodal_faces_check(const Apartment& ap);

struct Stick {
  int i = 0, j = 0;  // face, i < j
  Word word;
  FactorVertex vertex;
};

std::vector<Stick> sticks_of(const Apartment& ap, int i, int j);
std::vector<Stick> all_sticks(const Apartment& ap);

bool stick_characterization_check(const FactorVertex& c, const Apartment& ap);

struct BondedTriple {
  Stick at_ij, at_ik, at_jk;
};
std::vector<BondedTriple> bonded_triples(const Apartment& ap, int i, int j, int k);

struct Snop {
  std::vector<Stick> sticks;  // one per rank-2 face, faces in lex order
};
struct SnopCube {
  std::vector<Snop> snops;
  std::vector<std::pair<int, int>> edges;  // snops sharing all but n-1 sticks
};
SnopCube snops(const Apartment& ap);

struct Superstick {
  Word word;
  FactorVertex vertex;
};
std::vector<Superstick> supersticks(const Apartment& ap, int i, int j, int k);

Report iota_action_check(const Apartment& ap);

Apartment nielsen_adjacent(const Apartment& ap, int i, int j);

struct OverlapItem {
  std::string what;
  Word word;
  std::string status;  // vertex | stick | superstick | none
  int face_i = 0, face_j = 0;
};
struct OverlapResult {
  std::vector<OverlapItem> rank1;
  std::vector<OverlapItem> sticks;
  std::vector<size_t> exceptional;  // indices into sticks with status "none"
  Report report;
};
OverlapResult overlap_report(const Apartment& d0, const Apartment& d1);

struct Midpoint {
  FactorVertex vertex;
  std::vector<Word> carried_supersticks;
};
std::vector<Midpoint> midpoints(const Apartment& ap, int i, std::pair<int, int> jk);

std::string apartment_dot(const Apartment& ap);
std::string cube_dot(const Apartment& ap);

// ---- standardness verdicts and the explicit fake families ----

enum class Verdict { Standard, Fake, Inconclusive };
std::string verdict_name(Verdict v);

struct StandardnessResult {
  Verdict verdict = Verdict::Inconclusive;
  Report report;
};

StandardnessResult of3_standardness(const Apartment& ap, int search_bound);
StandardnessResult buildup_conditions(const Apartment& ap, int search_bound);

struct OneOffResult {
  bool matched = false;
  int k = 0;
};
OneOffResult one_off_check(const Apartment& d0, const Apartment& d1);

struct FakeFamilyResult {
  Subgroup h;  // the rank-n subgroup generated by all the rank-1 vertices
  Apartment apartment;
  Report report;
  bool fake = false;
};
FakeFamilyResult fake_family(int n);

struct Ex68Result {
  Verdict verdict = Verdict::Inconclusive;
  Report report;
};
Ex68Result example_68(int search_bound);

}  // namespace ffc
