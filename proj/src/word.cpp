#include "word.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ffc {

Word Word::from_letters(const std::vector<Letter>& raw) {
  Word w;
  w.letters_.reserve(raw.size());
  for (Letter l : raw) {
    if (l == 0) fail(ErrorKind::Precondition, "letter index must be nonzero");
    if (!w.letters_.empty() && w.letters_.back() == -l) {
      w.letters_.pop_back();
    } else {
      w.letters_.push_back(l);
    }
  }
  return w;
}

Word Word::single(Letter l) { return from_letters({l}); }

int Word::max_index() const {
  int m = 0;
  for (Letter l : letters_) m = std::max(m, letter_index(l));
  return m;
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(-*it);
  return w;
}

Word Word::operator*(const Word& rhs) const {
  Word w = *this;
  for (Letter l : rhs.letters_) {
    if (!w.letters_.empty() && w.letters_.back() == -l) {
      w.letters_.pop_back();
    } else {
      w.letters_.push_back(l);
    }
  }
  return w;
}

bool Word::operator<(const Word& rhs) const {
  if (letters_.size() != rhs.letters_.size()) return letters_.size() < rhs.letters_.size();
  for (size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i] != rhs.letters_[i]) return letter_key(letters_[i]) < letter_key(rhs.letters_[i]);
  }
  return false;
}

CyclicReduction cyclic_reduce(const Word& w) {
  const auto& ls = w.letters();
  size_t lo = 0, hi = ls.size();
  while (hi - lo >= 2 && ls[lo] == -ls[hi - 1]) {
    ++lo;
    --hi;
  }
  std::vector<Letter> core(ls.begin() + static_cast<long>(lo), ls.begin() + static_cast<long>(hi));
  std::vector<Letter> conj(ls.begin(), ls.begin() + static_cast<long>(lo));
  return {Word::from_letters(core), Word::from_letters(conj)};
}

int count_index(const Word& w, int index) {
  int c = 0;
  for (Letter l : w.letters()) {
    if (letter_index(l) == index) ++c;
  }
  return c;
}

namespace {

bool letters_less(const std::vector<Letter>& a, const std::vector<Letter>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](Letter x, Letter y) { return letter_key(x) < letter_key(y); });
}

std::vector<Letter> min_rotation(std::vector<Letter> v) {
  std::vector<Letter> best = v;
  for (size_t i = 1; i < v.size(); ++i) {
    std::rotate(v.begin(), v.begin() + 1, v.end());
    if (letters_less(v, best)) best = v;
  }
  return best;
}

}  // namespace

Word cyclic_class_key(const Word& w) {
  if (w.empty()) return w;
  auto a = min_rotation(w.letters());
  auto b = min_rotation(w.inverse().letters());
  return Word::from_letters(letters_less(b, a) ? b : a);
}

namespace {

[[noreturn]] void parse_fail(const std::string& text, size_t col, const std::string& what) {
  std::ostringstream os;
  os << "word parse error at column " << (col + 1) << " in \"" << text << "\": " << what;
  fail(ErrorKind::Parse, os.str());
}

}  // namespace

Word parse_word(const std::string& text, int rank) {
  bool has_digit = std::any_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  std::vector<Letter> raw;
  if (text == "1") return Word();
  if (has_digit) {
    size_t i = 0;
    while (i < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
        continue;
      }
      char c = text[i];
      if (!std::isalpha(static_cast<unsigned char>(c))) parse_fail(text, i, "expected letter token");
      bool inv = std::isupper(static_cast<unsigned char>(c));
      if (std::tolower(c) != 'a') parse_fail(text, i, "indexed tokens use the letter a, e.g. a2 or A2");
      size_t j = i + 1;
      if (j >= text.size() || !std::isdigit(static_cast<unsigned char>(text[j]))) parse_fail(text, i, "missing index");
      int idx = 0;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        idx = idx * 10 + (text[j] - '0');
        ++j;
      }
      if (idx < 1 || idx > rank) parse_fail(text, i, "letter index out of range 1.." + std::to_string(rank));
      raw.push_back(inv ? -idx : idx);
      i = j;
    }
  } else {
    for (size_t i = 0; i < text.size(); ++i) {
      char c = text[i];
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      if (!std::isalpha(static_cast<unsigned char>(c))) parse_fail(text, i, "expected a letter");
      bool inv = std::isupper(static_cast<unsigned char>(c));
      int idx = std::tolower(c) - 'a' + 1;
      if (idx > rank) parse_fail(text, i, std::string("letter '") + c + "' exceeds rank " + std::to_string(rank));
      raw.push_back(inv ? -idx : idx);
    }
  }
  return Word::from_letters(raw);
}

std::string format_word(const Word& w, int rank) {
  if (w.empty()) return "1";
  std::ostringstream os;
  if (rank <= 26) {
    for (Letter l : w.letters()) {
      char c = static_cast<char>('a' + letter_index(l) - 1);
      os << (l < 0 ? static_cast<char>(std::toupper(c)) : c);
    }
  } else {
    bool first = true;
    for (Letter l : w.letters()) {
      if (!first) os << ' ';
      first = false;
      os << (l < 0 ? 'A' : 'a') << letter_index(l);
    }
  }
  return os.str();
}

std::vector<Word> parse_word_list(const std::string& csv, int rank) {
  std::vector<Word> out;
  std::string item;
  std::stringstream ss(csv);
  while (std::getline(ss, item, ',')) {
    out.push_back(parse_word(item, rank));
  }
  if (out.empty()) fail(ErrorKind::Parse, "empty word list");
  return out;
}

BasisMap::BasisMap(int rank, std::vector<Word> images) : rank_(rank), images_(std::move(images)) {
  if (rank_ < 1) fail(ErrorKind::Precondition, "basis map rank must be positive");
  if (images_.size() != static_cast<size_t>(rank_)) fail(ErrorKind::Precondition, "basis map needs one image per letter");
  for (const Word& w : images_) {
    if (w.max_index() > rank_) fail(ErrorKind::Precondition, "basis map image uses letter beyond rank");
  }
}

BasisMap BasisMap::identity(int n) {
  std::vector<Word> im;
  for (int i = 1; i <= n; ++i) im.push_back(Word::single(i));
  std::vector<Word> inv = im;
  return automorphism(n, std::move(im), std::move(inv));
}

BasisMap BasisMap::automorphism(int rank, std::vector<Word> images, std::vector<Word> inverse_images) {
  BasisMap fwd(rank, std::move(images));
  BasisMap bwd(rank, std::move(inverse_images));
  for (int i = 1; i <= rank; ++i) {
    Word gen = Word::single(i);
    if (!(bwd.apply(fwd.image(i)) == gen) || !(fwd.apply(bwd.image(i)) == gen)) {
      fail(ErrorKind::Precondition, "inverse verification failed: maps do not compose to the identity");
    }
  }
  fwd.inverse_ = std::make_shared<BasisMap>(bwd);
  return fwd;
}

BasisMap BasisMap::nielsen(int n, int i, int j) {
  if (i == j || i < 1 || j < 1 || i > n || j > n) fail(ErrorKind::Precondition, "nielsen map needs distinct indices in range");
  std::vector<Word> im, inv;
  for (int k = 1; k <= n; ++k) {
    im.push_back(k == i ? Word::single(i) * Word::single(j) : Word::single(k));
    inv.push_back(k == i ? Word::single(i) * Word::single(-j) : Word::single(k));
  }
  return automorphism(n, std::move(im), std::move(inv));
}

BasisMap BasisMap::epsilon(int n, int i) {
  if (i < 1 || i > n) fail(ErrorKind::Precondition, "epsilon index out of range");
  std::vector<Word> im;
  for (int k = 1; k <= n; ++k) im.push_back(Word::single(k == i ? -k : k));
  std::vector<Word> inv = im;
  return automorphism(n, std::move(im), std::move(inv));
}

BasisMap BasisMap::iota(int n) {
  std::vector<Word> im;
  for (int k = 1; k <= n; ++k) im.push_back(Word::single(-k));
  std::vector<Word> inv = im;
  return automorphism(n, std::move(im), std::move(inv));
}

BasisMap BasisMap::transposition(int n, int i, int j) {
  std::vector<Word> im;
  for (int k = 1; k <= n; ++k) {
    int t = k == i ? j : (k == j ? i : k);
    im.push_back(Word::single(t));
  }
  std::vector<Word> inv = im;
  return automorphism(n, std::move(im), std::move(inv));
}

BasisMap BasisMap::inner(int n, const Word& g) {
  std::vector<Word> im, inv;
  Word gi = g.inverse();
  for (int k = 1; k <= n; ++k) {
    im.push_back(g * Word::single(k) * gi);
    inv.push_back(gi * Word::single(k) * g);
  }
  return automorphism(n, std::move(im), std::move(inv));
}

BasisMap BasisMap::whitehead(int n, Letter a, const std::vector<Letter>& A) {
  auto in_set = [&A](Letter l) { return std::find(A.begin(), A.end(), l) != A.end(); };
  if (!in_set(a) || in_set(-a)) fail(ErrorKind::Precondition, "whitehead map needs a in A and a^{-1} not in A");
  Word wa = Word::single(a), wai = Word::single(-a);
  std::vector<Word> im, inv;
  for (int g = 1; g <= n; ++g) {
    if (g == letter_index(a)) {
      im.push_back(Word::single(g));
      inv.push_back(Word::single(g));
      continue;
    }
    bool pos = in_set(g), neg = in_set(-g);
    Word x = Word::single(g);
    if (pos && !neg) {
      im.push_back(x * wa);
      inv.push_back(x * wai);
    } else if (!pos && neg) {
      im.push_back(wai * x);
      inv.push_back(wa * x);
    } else if (pos && neg) {
      im.push_back(wai * x * wa);
      inv.push_back(wa * x * wai);
    } else {
      im.push_back(x);
      inv.push_back(x);
    }
  }
  return automorphism(n, std::move(im), std::move(inv));
}

BasisMap BasisMap::f0(int n) {
  if (n < 2) fail(ErrorKind::Precondition, "f0 requires rank at least 2");
  std::vector<Word> im, inv;
  if (n == 2) {
    im = {Word::single(2), Word::single(1) * Word::single(2)};
    inv = {Word::single(2) * Word::single(-1), Word::single(1)};
    return automorphism(2, std::move(im), std::move(inv));
  }
  for (int i = 1; i < n; ++i) im.push_back(Word::single(i + 1));
  std::vector<Letter> last = {1};
  for (int i = 3; i <= n; ++i) last.push_back(i);
  last.push_back(2);
  im.push_back(Word::from_letters(last));
  // inverse: a_j -> a_{j-1} for j >= 2; a_1 -> a_n a_1^{-1} a_{n-1}^{-1} ... a_2^{-1}
  std::vector<Letter> first = {n, -1};
  for (int i = n - 1; i >= 2; --i) first.push_back(-i);
  inv.push_back(Word::from_letters(first));
  for (int j = 2; j <= n; ++j) inv.push_back(Word::single(j - 1));
  return automorphism(n, std::move(im), std::move(inv));
}

const BasisMap& BasisMap::inverse() const {
  if (!inverse_) fail(ErrorKind::Precondition, "basis map is not flagged as an automorphism");
  return *inverse_;
}

Word BasisMap::apply(const Word& w) const {
  Word out;
  for (Letter l : w.letters()) {
    int i = letter_index(l);
    if (i > rank_) fail(ErrorKind::Precondition, "word uses letter beyond the map's rank");
    out = out * (l > 0 ? image(i) : image(i).inverse());
  }
  return out;
}

BasisMap BasisMap::and_then(const BasisMap& g) const {
  if (g.rank() != rank_) fail(ErrorKind::Precondition, "composing maps of different ranks");
  std::vector<Word> im;
  for (int i = 1; i <= rank_; ++i) im.push_back(g.apply(image(i)));
  if (automorphism_flagged() && g.automorphism_flagged()) {
    std::vector<Word> inv;
    for (int i = 1; i <= rank_; ++i) inv.push_back(inverse().apply(g.inverse().image(i)));
    return automorphism(rank_, std::move(im), std::move(inv));
  }
  return BasisMap(rank_, std::move(im));
}

Word build_w(int n, int k) {
  Alphabet ab(n);
  if (k < 0 || k > n - 1) fail(ErrorKind::Precondition, "build_w index k must satisfy 0 <= k <= n-1");
  Word w = Word::single(n);
  for (int t = 1; t <= k; ++t) {
    w = w * Word::single(t) * w.inverse();
  }
  return w;
}

}  // namespace ffc
