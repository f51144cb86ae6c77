#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffc {

// A letter is a signed basis index: +i stands for a_i, -i for a_i^{-1}.
using Letter = int;

inline Letter inverse_letter(Letter l) { return -l; }
inline int letter_index(Letter l) { return l < 0 ? -l : l; }

// Total order on letters used by canonical forms: a_1 < a_1^-1 < a_2 < ...
inline int letter_key(Letter l) { return 2 * (letter_index(l) - 1) + (l < 0 ? 1 : 0); }

enum class ErrorKind {
  Parse,
  Precondition,
  CheckFailed,
  Internal,
};

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

struct Alphabet {
  int rank;
  explicit Alphabet(int n) : rank(n) {
    if (n < 2) fail(ErrorKind::Precondition, "alphabet rank must be at least 2");
  }
};

// Reduced word over a free basis. Instances are always freely reduced.
class Word {
 public:
  Word() = default;

  static Word from_letters(const std::vector<Letter>& raw);  // reduces
  static Word single(Letter l);

  const std::vector<Letter>& letters() const { return letters_; }
  int length() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  int max_index() const;

  Word inverse() const;
  Word operator*(const Word& rhs) const;  // reduced concatenation
  bool operator==(const Word& rhs) const { return letters_ == rhs.letters_; }
  bool operator<(const Word& rhs) const;  // length, then letter_key lex

 private:
  std::vector<Letter> letters_;
};

struct CyclicReduction {
  Word core;        // cyclically reduced
  Word conjugator;  // stripped prefix: w == conjugator * core * conjugator^{-1}
};

CyclicReduction cyclic_reduce(const Word& w);

// Occurrences of a_index^{±1} in w.
int count_index(const Word& w, int index);

// Canonical representative of the cyclic class of a cyclically reduced word,
// up to rotation and inversion. Used as an equality key for conjugacy classes
// of rank-1 subgroups.
Word cyclic_class_key(const Word& cyclically_reduced);

// Text syntax: `abA` (lowercase a_i, uppercase inverse) for rank <= 26, or
// whitespace-separated `a1 A2` tokens for any rank. `1` denotes the empty word.
Word parse_word(const std::string& text, int rank);
std::string format_word(const Word& w, int rank);

std::vector<Word> parse_word_list(const std::string& csv, int rank);  // comma-separated

// Endomorphism of the free group given by images of the basis letters.
// When constructed as an automorphism a verified inverse is attached.
class BasisMap {
 public:
  BasisMap(int rank, std::vector<Word> images);

  static BasisMap identity(int n);
  // Verifies that the two maps compose to the identity on all generators.
  static BasisMap automorphism(int rank, std::vector<Word> images, std::vector<Word> inverse_images);
  static BasisMap nielsen(int n, int i, int j);   // a_i -> a_i a_j
  static BasisMap epsilon(int n, int i);          // a_i -> a_i^{-1}
  static BasisMap iota(int n);                    // every a_i -> a_i^{-1}
  static BasisMap transposition(int n, int i, int j);
  static BasisMap inner(int n, const Word& g);    // x -> g x g^{-1}
  // Whitehead automorphism of the second kind (A, a): a in A, a^{-1} not in A.
  static BasisMap whitehead(int n, Letter a, const std::vector<Letter>& A);
  static BasisMap f0(int n);

  int rank() const { return rank_; }
  const Word& image(int i) const { return images_[static_cast<size_t>(i) - 1]; }
  const std::vector<Word>& images() const { return images_; }
  bool automorphism_flagged() const { return inverse_ != nullptr; }
  const BasisMap& inverse() const;

  Word apply(const Word& w) const;
  // Composition: (g.after(*this))(w) == g(this(w)). Inverse tracked when both carry one.
  BasisMap and_then(const BasisMap& g) const;

 private:
  int rank_;
  std::vector<Word> images_;
  std::shared_ptr<const BasisMap> inverse_;
};

// W_0 = a_n, W_{k+1} = W_k a_{k+1} W_k^{-1}; defined for 0 <= k <= n-1.
Word build_w(int n, int k);

}  // namespace ffc
