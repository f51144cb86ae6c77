#include "complex.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>
#include <sstream>

namespace ffc {

namespace {

std::string face_name(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

std::string subset_name(Subset s, int n) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int i = 1; i <= n; ++i) {
    if (s & (1u << (i - 1))) {
      if (!first) os << ",";
      os << i;
      first = false;
    }
  }
  os << "}";
  return os.str();
}

Word power(const Word& w, int k) {
  Word out;
  Word base = k >= 0 ? w : w.inverse();
  for (int i = 0; i < std::abs(k); ++i) out = out * base;
  return out;
}

}  // namespace

FactorVertex make_vertex(const Subgroup& pointed, Mode mode, std::optional<FactorWitness> witness) {
  if (!pointed.pointed) fail(ErrorKind::Precondition, "make_vertex expects a pointed subgroup");
  FactorVertex v;
  v.mode = mode;
  v.witness = std::move(witness);
  v.subgroup = mode == Mode::AF ? pointed : unpointed_class(pointed);
  v.key = v.subgroup.key();
  return v;
}

const FactorVertex& Apartment::at(Subset s) const {
  auto it = assignment.find(s);
  if (it == assignment.end()) fail(ErrorKind::Precondition, "apartment has no vertex for subset " + subset_name(s, n));
  return it->second;
}

const Word& Apartment::basis_word(int i) const {
  if (!basis) fail(ErrorKind::Precondition, "apartment is not standard (no basis attached)");
  if (i < 1 || i > n) fail(ErrorKind::Precondition, "basis index out of range");
  return (*basis)[static_cast<size_t>(i) - 1];
}

Apartment standard_apartment(const std::vector<Word>& basis, Mode mode, int n) {
  if (static_cast<int>(basis.size()) != n) fail(ErrorKind::Precondition, "standard apartment needs n basis words");
  LabeledGraph g = loop_graph(basis[0], n);
  for (size_t i = 1; i < basis.size(); ++i) g = wedge(g, loop_graph(basis[i], n));
  if (!iso(fold(g), rose(n), true)) fail(ErrorKind::Precondition, "not a basis: the words do not generate F_n");

  Apartment ap;
  ap.n = n;
  ap.mode = mode;
  ap.basis = basis;
  for (Subset s = 1; s < full_set(n); ++s) {
    std::vector<Word> gens, complement;
    for (int i = 1; i <= n; ++i) {
      if (s & (1u << (i - 1))) {
        gens.push_back(basis[static_cast<size_t>(i) - 1]);
      } else {
        complement.push_back(basis[static_cast<size_t>(i) - 1]);
      }
    }
    Subgroup h = subgroup_of(gens, n, true);
    FactorWitness w{h, complement};
    if (!verify_factor(w, n)) fail(ErrorKind::Internal, "standard apartment witness failed verification");
    ap.assignment.emplace(s, make_vertex(h, mode, std::move(w)));
  }
  return ap;
}

Report verify_apartment(const Apartment& ap) {
  Report r;
  bool complete = true;
  for (Subset s = 1; s < full_set(ap.n); ++s) {
    if (!ap.assignment.count(s)) complete = false;
  }
  r.add("assignment complete", complete);
  if (!complete) return r;

  bool ranks_ok = true;
  std::string rank_detail;
  for (const auto& [s, v] : ap.assignment) {
    if (v.subgroup.rank != subset_size(s)) {
      ranks_ok = false;
      rank_detail = "rank mismatch at " + subset_name(s, ap.n);
    }
  }
  r.add("rank(sigma(S)) = |S|", ranks_ok, rank_detail);

  bool incl_ok = true;
  std::string incl_detail;
  for (const auto& [s, v] : ap.assignment) {
    for (int i = 1; i <= ap.n; ++i) {
      Subset t = s | (1u << (i - 1));
      if (t == s || t == full_set(ap.n)) continue;
      const FactorVertex& tv = ap.at(t);
      bool ok = ap.mode == Mode::AF ? includes(tv.subgroup, v.subgroup)
                                    : conjugate_into_class(v.subgroup, tv.subgroup);
      if (!ok) {
        incl_ok = false;
        incl_detail = subset_name(s, ap.n) + " not inside " + subset_name(t, ap.n);
      }
    }
  }
  r.add("subset inclusions give edges", incl_ok, incl_detail);

  std::set<std::string> keys;
  bool inj = true;
  for (const auto& [s, v] : ap.assignment) {
    if (!keys.insert(v.key).second) inj = false;
  }
  r.add("assignment injective", inj);
  return r;
}

namespace {

Word vertex_rank1_word(const FactorVertex& v) {
  Subgroup p = v.subgroup.pointed ? v.subgroup : pointed_rep(v.subgroup);
  return rank1_generator(p);
}

}  // namespace

bool is_standard_af(const Apartment& ap) {
  if (ap.mode != Mode::AF) fail(ErrorKind::Precondition, "is_standard_af needs an AF-mode apartment");
  std::vector<Word> gens;
  for (int i = 1; i <= ap.n; ++i) gens.push_back(vertex_rank1_word(ap.at(1u << (i - 1))));
  LabeledGraph g = loop_graph(gens[0], ap.n);
  for (size_t i = 1; i < gens.size(); ++i) g = wedge(g, loop_graph(gens[i], ap.n));
  return iso(fold(g), rose(ap.n), true).has_value();
}

Report antipodal_faces_check(const Apartment& ap) {
  Report r;
  for (int i = 1; i <= ap.n; ++i) {
    const FactorVertex& c = ap.at(1u << (i - 1));
    const FactorVertex& opp = ap.at(full_set(ap.n) & ~(1u << (i - 1)));
    Word u = vertex_rank1_word(c);
    bool ok;
    if (ap.mode == Mode::AF) {
      const FactorWitness* w = opp.witness ? &*opp.witness : nullptr;
      ok = antipodal_af(opp.subgroup, u, ap.n, w);
    } else {
      ok = OfAntipodality(pointed_rep(opp.subgroup), ap.n).test(u);
    }
    r.add("vertex " + std::to_string(i) + " antipodal to opposite barycentre", ok);
  }
  return r;
}

std::vector<Stick> sticks_of(const Apartment& ap, int i, int j) {
  if (!ap.has_basis()) fail(ErrorKind::Precondition, "sticks are defined for standard apartments only");
  if (i == j || i < 1 || j < 1 || i > ap.n || j > ap.n) fail(ErrorKind::Precondition, "invalid face indices");
  if (i > j) std::swap(i, j);
  const Word& bi = ap.basis_word(i);
  const Word& bj = ap.basis_word(j);
  std::vector<Word> words;
  if (ap.mode == Mode::AF) {
    words = {bi * bj, bj * bi, bi.inverse() * bj, bi * bj.inverse()};
  } else {
    words = {bi * bj, bi.inverse() * bj};
  }
  std::vector<Stick> out;
  std::set<std::string> seen;
  for (const Word& w : words) {
    FactorVertex v = make_vertex(subgroup_of({w}, ap.n, true), ap.mode, std::nullopt);
    if (!seen.insert(v.key).second) continue;
    out.push_back({i, j, w, std::move(v)});
  }
  return out;
}

std::vector<Stick> all_sticks(const Apartment& ap) {
  std::vector<Stick> out;
  for (int i = 1; i <= ap.n; ++i) {
    for (int j = i + 1; j <= ap.n; ++j) {
      auto f = sticks_of(ap, i, j);
      out.insert(out.end(), f.begin(), f.end());
    }
  }
  return out;
}

bool stick_characterization_check(const FactorVertex& c, const Apartment& ap) {
  if (c.subgroup.rank != 1) fail(ErrorKind::Precondition, "stick characterization applies to rank-1 vertices");
  Word u = vertex_rank1_word(c);
  for (int i = 1; i <= ap.n; ++i) {
    for (int j = i + 1; j <= ap.n; ++j) {
      Subset face = (1u << (i - 1)) | (1u << (j - 1));
      const FactorVertex& v2 = ap.at(face);
      bool adjacent = ap.mode == Mode::AF
                          ? includes(v2.subgroup, c.subgroup)
                          : conjugate_into_class(c.subgroup, v2.subgroup);
      if (!adjacent) continue;
      bool anti = true;
      for (int t : {i, j}) {
        Subset opp = full_set(ap.n) & ~(1u << (t - 1));
        const FactorVertex& bary = ap.at(opp);
        bool ok;
        if (ap.mode == Mode::AF) {
          const FactorWitness* w = bary.witness ? &*bary.witness : nullptr;
          ok = antipodal_af(bary.subgroup, u, ap.n, w);
        } else {
          ok = OfAntipodality(pointed_rep(bary.subgroup), ap.n).test(u);
        }
        if (!ok) {
          anti = false;
          break;
        }
      }
      if (anti) return true;
    }
  }
  return false;
}

namespace {

// Common rank-2 free factor with every pair a basis of it.
bool bonded(const Word& x, const Word& y, const Word& z, int n) {
  Subgroup h = subgroup_of({x, y, z}, n, true);
  if (h.rank != 2) return false;
  for (const auto& [p, q] : {std::pair{x, y}, std::pair{x, z}, std::pair{y, z}}) {
    if (subgroup_of({p, q}, n, true).key() != h.key()) return false;
  }
  return is_free_factor(h, n).has_value();
}

Stick find_stick(const Apartment& ap, int i, int j, const Word& w) {
  FactorVertex v = make_vertex(subgroup_of({w}, ap.n, true), ap.mode, std::nullopt);
  for (auto& s : sticks_of(ap, i, j)) {
    if (s.vertex.key == v.key) return s;
  }
  fail(ErrorKind::Internal, "stick lookup failed");
}

}  // namespace

std::vector<BondedTriple> bonded_triples(const Apartment& ap, int i, int j, int k) {
  if (!ap.has_basis()) fail(ErrorKind::Precondition, "bonded triples are defined for standard apartments only");
  std::vector<int> f = {i, j, k};
  std::sort(f.begin(), f.end());
  if (f[0] < 1 || f[2] > ap.n || f[0] == f[1] || f[1] == f[2]) fail(ErrorKind::Precondition, "invalid rank-3 face");
  i = f[0];
  j = f[1];
  k = f[2];
  // Enumerate over the AF sign patterns; in OF mode project and deduplicate.
  const Word& bi = ap.basis_word(i);
  const Word& bj = ap.basis_word(j);
  const Word& bk = ap.basis_word(k);
  auto af_words = [](const Word& a, const Word& b) {
    return std::vector<Word>{a * b, b * a, a.inverse() * b, a * b.inverse()};
  };
  std::vector<Word> wij = af_words(bi, bj), wik = af_words(bi, bk), wjk = af_words(bj, bk);
  std::vector<BondedTriple> out;
  std::set<std::string> seen;
  for (const Word& x : wij) {
    for (const Word& y : wik) {
      for (const Word& z : wjk) {
        if (!bonded(x, y, z, ap.n)) continue;
        Stick sx = find_stick(ap, i, j, x);
        Stick sy = find_stick(ap, i, k, y);
        Stick sz = find_stick(ap, j, k, z);
        std::string key = sx.vertex.key + "|" + sy.vertex.key + "|" + sz.vertex.key;
        if (!seen.insert(key).second) continue;
        out.push_back({sx, sy, sz});
      }
    }
  }
  return out;
}

SnopCube snops(const Apartment& ap) {
  if (ap.mode != Mode::AF) fail(ErrorKind::Precondition, "snops are enumerated in AF mode");
  if (!ap.has_basis()) fail(ErrorKind::Precondition, "snops are defined for standard apartments only");
  int n = ap.n;
  std::vector<std::pair<int, int>> faces;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) faces.emplace_back(i, j);
  }
  std::map<std::pair<int, int>, int> face_index;
  for (size_t t = 0; t < faces.size(); ++t) face_index[faces[t]] = static_cast<int>(t);
  std::vector<std::vector<Stick>> face_sticks;
  for (auto [i, j] : faces) face_sticks.push_back(sticks_of(ap, i, j));

  // Bonded index triples per rank-3 face, via the stick vertices.
  std::map<std::tuple<int, int, int>, std::set<std::tuple<int, int, int>>> bonded_idx;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      for (int k = j + 1; k <= n; ++k) {
        auto triples = bonded_triples(ap, i, j, k);
        std::set<std::tuple<int, int, int>> idxs;
        auto locate = [&](const Stick& s) {
          const auto& list = face_sticks[static_cast<size_t>(face_index[{s.i, s.j}])];
          for (size_t t = 0; t < list.size(); ++t) {
            if (list[t].vertex.key == s.vertex.key) return static_cast<int>(t);
          }
          fail(ErrorKind::Internal, "bonded stick missing from face list");
        };
        for (const auto& tr : triples) idxs.insert({locate(tr.at_ij), locate(tr.at_ik), locate(tr.at_jk)});
        bonded_idx[{i, j, k}] = std::move(idxs);
      }
    }
  }

  SnopCube cube;
  std::vector<int> choice(faces.size(), -1);
  auto consistent = [&](size_t upto) {
    auto [i, j] = faces[upto];
    for (int k = 1; k <= n; ++k) {
      if (k == i || k == j) continue;
      int a = std::min({i, j, k}), c = std::max({i, j, k});
      int b = i + j + k - a - c;
      int fij = face_index[{a, b}], fik = face_index[{a, c}], fjk = face_index[{b, c}];
      if (choice[static_cast<size_t>(fij)] < 0 || choice[static_cast<size_t>(fik)] < 0 ||
          choice[static_cast<size_t>(fjk)] < 0) {
        continue;
      }
      auto& ok = bonded_idx[{a, b, c}];
      if (!ok.count({choice[static_cast<size_t>(fij)], choice[static_cast<size_t>(fik)],
                     choice[static_cast<size_t>(fjk)]})) {
        return false;
      }
    }
    return true;
  };
  std::vector<size_t> stack_pos;
  // plain backtracking over faces in lex order
  std::function<void(size_t)> rec = [&](size_t t) {
    if (t == faces.size()) {
      Snop s;
      for (size_t f = 0; f < faces.size(); ++f) {
        s.sticks.push_back(face_sticks[f][static_cast<size_t>(choice[f])]);
      }
      cube.snops.push_back(std::move(s));
      return;
    }
    for (int c = 0; c < static_cast<int>(face_sticks[t].size()); ++c) {
      choice[t] = c;
      if (consistent(t)) rec(t + 1);
    }
    choice[t] = -1;
  };
  rec(0);

  for (size_t a = 0; a < cube.snops.size(); ++a) {
    for (size_t b = a + 1; b < cube.snops.size(); ++b) {
      int shared = 0;
      for (size_t f = 0; f < faces.size(); ++f) {
        if (cube.snops[a].sticks[f].vertex.key == cube.snops[b].sticks[f].vertex.key) ++shared;
      }
      if (shared == static_cast<int>(faces.size()) - (n - 1)) cube.edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  }
  return cube;
}

std::vector<Superstick> supersticks(const Apartment& ap, int i, int j, int k) {
  if (!ap.has_basis()) fail(ErrorKind::Precondition, "supersticks are defined for standard apartments only");
  std::vector<int> f = {i, j, k};
  std::sort(f.begin(), f.end());
  if (f[0] < 1 || f[2] > ap.n || f[0] == f[1] || f[1] == f[2]) fail(ErrorKind::Precondition, "invalid rank-3 face");
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> idx = {f[0], f[1], f[2]};
  std::sort(idx.begin(), idx.end());
  do {
    perms.push_back(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));

  std::vector<Superstick> out;
  std::set<std::string> seen;
  for (const auto& p : perms) {
    for (int mask = 0; mask < 8; ++mask) {
      Word w;
      for (int t = 0; t < 3; ++t) {
        const Word& b = ap.basis_word(p[static_cast<size_t>(t)]);
        w = w * ((mask >> t) & 1 ? b.inverse() : b);
      }
      FactorVertex v = make_vertex(subgroup_of({w}, ap.n, true), ap.mode, std::nullopt);
      if (!seen.insert(v.key).second) continue;
      out.push_back({w, std::move(v)});
    }
  }
  return out;
}

Report iota_action_check(const Apartment& ap) {
  if (ap.mode != Mode::OF) fail(ErrorKind::Precondition, "the iota action is checked in OF mode");
  if (!ap.has_basis()) fail(ErrorKind::Precondition, "iota action check needs a standard apartment");
  Report r;
  auto class_key = [&](const Word& w) { return make_vertex(subgroup_of({w}, ap.n, true), Mode::OF, std::nullopt).key; };
  bool sticks_fixed = true;
  for (int i = 1; i <= ap.n; ++i) {
    for (int j = i + 1; j <= ap.n; ++j) {
      const Word& bi = ap.basis_word(i);
      const Word& bj = ap.basis_word(j);
      for (auto [x, y] : {std::pair{bi, bj}, std::pair{bi.inverse(), bj}}) {
        Word w = x * y;
        Word img = x.inverse() * y.inverse();
        if (class_key(w) != class_key(img)) sticks_fixed = false;
      }
    }
  }
  r.add("iota fixes every stick class", sticks_fixed);

  // Supersticks: iota inverts every exponent of the product form
  // b_{p1}^{e1} b_{p2}^{e2} b_{p3}^{e3}; the image must be another superstick
  // class of the same face and never the same class.
  bool ss_moved = true;
  for (int i = 1; i <= ap.n; ++i) {
    for (int j = i + 1; j <= ap.n; ++j) {
      for (int k = j + 1; k <= ap.n; ++k) {
        std::set<std::string> face_classes;
        for (const auto& s : supersticks(ap, i, j, k)) face_classes.insert(s.vertex.key);
        for (auto p : std::vector<std::array<int, 3>>{{i, j, k}, {i, k, j}, {j, i, k}, {j, k, i}, {k, i, j}, {k, j, i}}) {
          for (int mask = 0; mask < 8; ++mask) {
            Word w, img;
            for (int t = 0; t < 3; ++t) {
              const Word& b = ap.basis_word(p[static_cast<size_t>(t)]);
              bool inv = (mask >> t) & 1;
              w = w * (inv ? b.inverse() : b);
              img = img * (inv ? b : b.inverse());
            }
            std::string kw = class_key(w), ki = class_key(img);
            if (kw == ki || !face_classes.count(ki)) ss_moved = false;
          }
        }
      }
    }
  }
  r.add("iota moves every superstick class within its face", ss_moved);
  return r;
}

Apartment nielsen_adjacent(const Apartment& ap, int i, int j) {
  if (!ap.has_basis()) fail(ErrorKind::Precondition, "nielsen_adjacent needs a standard apartment");
  if (i == j) fail(ErrorKind::Precondition, "nielsen_adjacent needs distinct indices");
  if (i < 1 || j < 1 || i > ap.n || j > ap.n) fail(ErrorKind::Precondition, "nielsen_adjacent index out of range");
  std::vector<Word> basis = *ap.basis;
  basis[static_cast<size_t>(i) - 1] = basis[static_cast<size_t>(i) - 1] * basis[static_cast<size_t>(j) - 1];
  return standard_apartment(basis, ap.mode, ap.n);
}

OverlapResult overlap_report(const Apartment& d0, const Apartment& d1) {
  if (d0.mode != d1.mode) fail(ErrorKind::Precondition, "overlap_report needs apartments of the same mode");
  if (d0.n != d1.n) fail(ErrorKind::Precondition, "overlap_report needs apartments of the same rank");
  if (!d0.has_basis() || !d1.has_basis()) fail(ErrorKind::Precondition, "overlap_report needs standard apartments");
  OverlapResult out;
  std::set<std::string> vertex_keys, stick_keys, superstick_keys;
  for (int i = 1; i <= d0.n; ++i) vertex_keys.insert(d0.at(1u << (i - 1)).key);
  for (const auto& s : all_sticks(d0)) stick_keys.insert(s.vertex.key);
  for (int i = 1; i <= d0.n; ++i) {
    for (int j = i + 1; j <= d0.n; ++j) {
      for (int k = j + 1; k <= d0.n; ++k) {
        for (const auto& s : supersticks(d0, i, j, k)) superstick_keys.insert(s.vertex.key);
      }
    }
  }
  auto classify = [&](const std::string& key) -> std::string {
    if (vertex_keys.count(key)) return "vertex";
    if (stick_keys.count(key)) return "stick";
    if (superstick_keys.count(key)) return "superstick";
    return "none";
  };

  bool rank1_ok = true;
  for (int i = 1; i <= d1.n; ++i) {
    const FactorVertex& v = d1.at(1u << (i - 1));
    std::string status = classify(v.key);
    if (status != "vertex" && status != "stick") rank1_ok = false;
    out.rank1.push_back({"rank1 vertex " + std::to_string(i), vertex_rank1_word(v), status, i, 0});
  }
  out.report.add("rank-1 vertices of d1 are vertices or sticks of d0", rank1_ok);

  for (const auto& s : all_sticks(d1)) {
    std::string status = classify(s.vertex.key);
    size_t idx = out.sticks.size();
    out.sticks.push_back({"stick at " + face_name(s.i, s.j), s.word, status, s.i, s.j});
    if (status == "none") out.exceptional.push_back(idx);
  }
  out.report.add("every stick of d1 classified",
                 true,
                 std::to_string(out.exceptional.size()) + " exceptional stick(s)");
  return out;
}

std::vector<Midpoint> midpoints(const Apartment& ap, int i, std::pair<int, int> jk) {
  if (ap.mode != Mode::OF) fail(ErrorKind::Precondition, "midpoints are an OF-mode construction");
  if (!ap.has_basis()) fail(ErrorKind::Precondition, "midpoints need a standard apartment");
  auto [j, k] = jk;
  if (i == j || i == k || j == k) fail(ErrorKind::Precondition, "midpoints need three distinct indices");
  for (int t : {i, j, k}) {
    if (t < 1 || t > ap.n) fail(ErrorKind::Precondition, "midpoint index out of range");
  }
  const Word& bi = ap.basis_word(i);
  const Word& bj = ap.basis_word(j);
  const Word& bk = ap.basis_word(k);
  std::vector<Midpoint> out;
  for (const Word& prod : {bj * bk, bk * bj}) {
    Subgroup m = subgroup_of({prod, bi}, ap.n, true);
    FactorVertex v = make_vertex(m, Mode::OF, std::nullopt);
    Midpoint mp;
    mp.vertex = v;
    int a = std::min({i, j, k}), c = std::max({i, j, k});
    int b = i + j + k - a - c;
    for (const auto& s : supersticks(ap, a, b, c)) {
      if (conjugate_into_class(s.vertex.subgroup, v.subgroup)) mp.carried_supersticks.push_back(s.word);
    }
    out.push_back(std::move(mp));
  }
  return out;
}

std::string apartment_dot(const Apartment& ap) {
  std::ostringstream os;
  os << "digraph apartment {\n  rankdir=BT;\n";
  for (const auto& [s, v] : ap.assignment) {
    os << "  s" << s << " [shape=box,label=\"" << subset_name(s, ap.n) << " rank " << v.subgroup.rank << "\"];\n";
  }
  for (const auto& [s, v] : ap.assignment) {
    for (int i = 1; i <= ap.n; ++i) {
      Subset t = s | (1u << (i - 1));
      if (t == s || t == full_set(ap.n) || !ap.assignment.count(t)) continue;
      os << "  s" << s << " -> s" << t << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string cube_dot(const Apartment& ap) {
  SnopCube cube = snops(ap);
  std::ostringstream os;
  os << "graph snop_cube {\n";
  for (size_t a = 0; a < cube.snops.size(); ++a) {
    os << "  n" << a << " [label=\"snop " << a << "\"];\n";
  }
  for (auto [a, b] : cube.edges) os << "  n" << a << " -- n" << b << ";\n";
  os << "}\n";
  return os.str();
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Standard:
      return "standard";
    case Verdict::Fake:
      return "fake";
    case Verdict::Inconclusive:
      return "inconclusive-at-bound";
  }
  return "?";
}

namespace {

Word word_pow_conj(const Word& g, const Word& x, int k) {
  Word p = power(g, k);
  return p * x * p.inverse();
}

}  // namespace

OneOffResult one_off_check(const Apartment& d0, const Apartment& d1) {
  if (d0.mode != Mode::OF || d1.mode != Mode::OF) fail(ErrorKind::Precondition, "one_off_check is an OF-mode check");
  if (d0.n != 3 || d1.n != 3) fail(ErrorKind::Precondition, "one_off_check is stated for rank 3");
  if (!d0.has_basis()) fail(ErrorKind::Precondition, "one_off_check needs a standard base apartment");
  Subset special = full_set(3) & ~1u;  // {2,3}, opposite index 1
  for (Subset s = 1; s < full_set(3); ++s) {
    if (s == special) continue;
    if (d0.at(s).key != d1.at(s).key) {
      fail(ErrorKind::Precondition, "one_off_check: apartments differ at " + subset_name(s, 3) +
                                        ", not only at the barycentre opposite vertex 1");
    }
  }
  const FactorVertex& v = d1.at(special);
  int kmax = static_cast<int>(v.subgroup.graph.edges.size()) / 2 + 1;
  const Word& b1 = d0.basis_word(1);
  const Word& b2 = d0.basis_word(2);
  const Word& b3 = d0.basis_word(3);
  for (int a = 0; a <= kmax; ++a) {
    for (int k : (a == 0 ? std::vector<int>{0} : std::vector<int>{a, -a})) {
      Subgroup cand = subgroup_of({word_pow_conj(b1, b2, k), b3}, 3, true);
      if (make_vertex(cand, Mode::OF, std::nullopt).key == v.key) return {true, k};
    }
  }
  return {false, 0};
}

FakeFamilyResult fake_family(int n) {
  if (n < 3) fail(ErrorKind::Precondition, "fake family needs n >= 3");
  FakeFamilyResult out;
  Word wn1 = build_w(n, n - 1);
  Word long_gen = wn1 * Word::single(n) * wn1.inverse();
  std::vector<Word> gens;
  for (int i = 1; i < n; ++i) gens.push_back(Word::single(i));
  gens.push_back(long_gen);

  out.h = subgroup_of(gens, n, true);

  Apartment ap;
  ap.n = n;
  ap.mode = Mode::OF;
  bool factors_ok = true;
  std::string factors_detail;
  for (Subset s = 1; s < full_set(n); ++s) {
    std::vector<Word> sub;
    for (int i = 1; i <= n; ++i) {
      if (s & (1u << (i - 1))) sub.push_back(gens[static_cast<size_t>(i) - 1]);
    }
    Subgroup h = subgroup_of(sub, n, true);
    std::vector<Word> complement;
    if (!(s & (1u << (n - 1)))) {
      for (int j = 1; j <= n; ++j) {
        if (!(s & (1u << (j - 1)))) complement.push_back(Word::single(j));
      }
    } else {
      int jstar = 0;
      for (int j = 1; j < n; ++j) {
        if (!(s & (1u << (j - 1)))) {
          jstar = j;
          break;
        }
      }
      if (jstar == 0) fail(ErrorKind::Internal, "proper subset with the long generator misses no letter");
      for (int j = 1; j < n; ++j) {
        if (j != jstar && !(s & (1u << (j - 1)))) complement.push_back(Word::single(j));
      }
      Word wj = build_w(n, jstar - 1);
      complement.push_back(wj * Word::single(jstar) * wj.inverse());
    }
    FactorWitness witness{h, complement};
    if (h.rank != subset_size(s) || !verify_factor(witness, n)) {
      factors_ok = false;
      factors_detail = "failed at subset " + subset_name(s, n);
    }
    ap.assignment.emplace(s, make_vertex(h, Mode::OF, std::move(witness)));
  }
  out.apartment = std::move(ap);
  out.report.add("(i) every proper subset generates a free factor of matching rank", factors_ok, factors_detail);

  bool antipodal_ok = true;
  for (int j = 1; j < n; ++j) {
    Subset mask = full_set(n) & ~(1u << (j - 1));
    const FactorVertex& vj = out.apartment.at(mask);
    Word wj = build_w(n, j - 1);
    Word u = wj * Word::single(j) * wj.inverse();
    LabeledGraph g = wedge(pointed_rep(vj.subgroup).graph, loop_graph(u, n));
    if (!iso(fold(g), rose(n), true)) antipodal_ok = false;
  }
  out.report.add("(ii) V_j is antipodal to <W_{j-1} a_j W_{j-1}^{-1}> by folding", antipodal_ok);

  bool an_missing = !contains(out.h, Word::single(n));
  out.report.add("(iii) a_n does not lie in H", an_missing);

  bool of_anti = true;
  for (int i = 1; i <= n; ++i) {
    Subset mask = full_set(n) & ~(1u << (i - 1));
    const FactorVertex& vi = out.apartment.at(mask);
    Word u;
    if (i < n) {
      Word wi = build_w(n, i - 1);
      u = wi * Word::single(i) * wi.inverse();
    } else {
      u = Word::single(n);
    }
    LabeledGraph g = wedge(pointed_rep(vi.subgroup).graph, loop_graph(u, n));
    if (!iso(fold(g), rose(n), true)) of_anti = false;
  }
  out.report.add("(iv) each rank-1 class is antipodal to the opposite barycentre (OF)", of_anti);

  Report va = verify_apartment(out.apartment);
  out.report.add("assignment is a valid apartment", va.all_pass());

  // Fakeness certificate: two codimension-1 barycentres with intersecting
  // representatives generate only H, never the whole group.
  bool generation_breaks = false;
  Subset m1 = full_set(n) & ~1u;
  Subset m2 = full_set(n) & ~2u;
  const Subgroup& va1 = out.apartment.at(m1).subgroup;
  const Subgroup& va2 = out.apartment.at(m2).subgroup;
  for (const auto& comp : pullback(va1.graph, va2.graph)) {
    if (!comp.has_cycle) continue;
    LabeledGraph g1 = va1.graph;
    g1.base = comp.sample_pair.first;
    LabeledGraph g2 = va2.graph;
    g2.base = comp.sample_pair.second;
    if (!iso(fold(wedge(g1, g2)), rose(n), true)) generation_breaks = true;
  }
  out.report.add("fake: intersecting barycentre representatives fail to generate F_n", generation_breaks);
  out.fake = an_missing && generation_breaks;
  return out;
}

}  // namespace ffc
