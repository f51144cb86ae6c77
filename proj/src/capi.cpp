#include "ffc/ffc.h"

#include <json.hpp>

#include <cstring>
#include <sstream>

#include "complex.hpp"
#include "suite.hpp"

using namespace ffc;

struct ffc_word {
  Word w;
};
struct ffc_graph {
  LabeledGraph g;
};
struct ffc_subgroup {
  Subgroup s;
};

namespace {

thread_local std::string tl_error;

ffc_status status_of(const Error& e) {
  switch (e.kind) {
    case ErrorKind::Parse:
      return FFC_ERROR_PARSE;
    case ErrorKind::Precondition:
      return FFC_ERROR_PRECONDITION;
    default:
      return FFC_ERROR_INTERNAL;
  }
}

template <typename Fn>
ffc_status guarded(Fn&& fn) {
  try {
    fn();
    return FFC_OK;
  } catch (const Error& e) {
    tl_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    tl_error = e.what();
    return FFC_ERROR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Mode mode_of(int of_mode) { return of_mode ? Mode::OF : Mode::AF; }

std::vector<Word> parse_gens(const char* csv, int rank) {
  if (!csv) fail(ErrorKind::Parse, "missing generator list");
  return parse_word_list(csv, rank);
}

std::string render(const Report& r, int as_json) { return as_json ? r.json_str() : r.text(); }

Apartment apartment_from_args(int rank, const char* basis_csv, const char* replacements, Mode mode) {
  Apartment ap = standard_apartment(parse_gens(basis_csv, rank), mode, rank);
  if (replacements && *replacements) {
    std::stringstream ss(replacements);
    std::string item;
    bool changed = false;
    while (std::getline(ss, item, ';')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) fail(ErrorKind::Parse, "replacement must look like `1,2=a,bab`");
      Subset s = 0;
      std::stringstream is(item.substr(0, eq));
      std::string tok;
      while (std::getline(is, tok, ',')) {
        int idx = std::stoi(tok);
        if (idx < 1 || idx > rank) fail(ErrorKind::Parse, "replacement subset index out of range");
        s |= 1u << (idx - 1);
      }
      if (s == 0 || s == full_set(rank)) fail(ErrorKind::Parse, "replacement subset must be nonempty and proper");
      Subgroup h = subgroup_of(parse_word_list(item.substr(eq + 1), rank), rank, true);
      ap.assignment.erase(s);
      ap.assignment.emplace(s, make_vertex(h, mode, std::nullopt));
      changed = true;
    }
    if (changed) ap.basis.reset();  // no longer known to be standard
  }
  return ap;
}

}  // namespace

extern "C" {

const char* ffc_version(void) { return "1.0.0"; }

const char* ffc_last_error(void) { return tl_error.c_str(); }

void ffc_string_free(char* s) { std::free(s); }
void ffc_word_free(ffc_word* w) { delete w; }
void ffc_graph_free(ffc_graph* g) { delete g; }
void ffc_subgroup_free(ffc_subgroup* h) { delete h; }

ffc_status ffc_word_parse(int rank, const char* text, ffc_word** out) {
  return guarded([&] {
    if (!text || !out) fail(ErrorKind::Precondition, "null argument");
    *out = new ffc_word{parse_word(text, rank)};
  });
}

ffc_status ffc_word_format(const ffc_word* w, int rank, char** out) {
  return guarded([&] {
    if (!w || !out) fail(ErrorKind::Precondition, "null argument");
    *out = dup_string(format_word(w->w, rank));
  });
}

int ffc_word_length(const ffc_word* w) { return w ? w->w.length() : -1; }

ffc_status ffc_graph_parse(const char* text, ffc_graph** out) {
  return guarded([&] {
    if (!text || !out) fail(ErrorKind::Precondition, "null argument");
    *out = new ffc_graph{parse_graph(text)};
  });
}

ffc_status ffc_graph_serialize(const ffc_graph* g, char** out) {
  return guarded([&] {
    if (!g || !out) fail(ErrorKind::Precondition, "null argument");
    *out = dup_string(serialize(g->g));
  });
}

ffc_status ffc_graph_dot(const ffc_graph* g, char** out) {
  return guarded([&] {
    if (!g || !out) fail(ErrorKind::Precondition, "null argument");
    *out = dup_string(to_dot(g->g));
  });
}

ffc_status ffc_graph_fold(const ffc_graph* g, ffc_graph** out) {
  return guarded([&] {
    if (!g || !out) fail(ErrorKind::Precondition, "null argument");
    *out = new ffc_graph{fold(g->g)};
  });
}

ffc_status ffc_graph_core(const ffc_graph* g, int pointed, ffc_graph** out) {
  return guarded([&] {
    if (!g || !out) fail(ErrorKind::Precondition, "null argument");
    LabeledGraph folded = g->g.folded ? g->g : fold(g->g);
    *out = new ffc_graph{core(folded, pointed != 0)};
  });
}

ffc_status ffc_graph_girth(const ffc_graph* g, int* out) {
  return guarded([&] {
    if (!g || !out) fail(ErrorKind::Precondition, "null argument");
    *out = graph_girth(g->g);
  });
}

ffc_status ffc_subgroup_create(int rank, const char* generators, int pointed, ffc_subgroup** out) {
  return guarded([&] {
    if (!out) fail(ErrorKind::Precondition, "null argument");
    *out = new ffc_subgroup{subgroup_of(parse_gens(generators, rank), rank, pointed != 0)};
  });
}

int ffc_subgroup_rank(const ffc_subgroup* h) { return h ? h->s.rank : -1; }

ffc_status ffc_subgroup_graph(const ffc_subgroup* h, ffc_graph** out) {
  return guarded([&] {
    if (!h || !out) fail(ErrorKind::Precondition, "null argument");
    *out = new ffc_graph{h->s.graph};
  });
}

ffc_status ffc_subgroup_contains(const ffc_subgroup* h, const char* word, int* result) {
  return guarded([&] {
    if (!h || !word || !result) fail(ErrorKind::Precondition, "null argument");
    *result = contains(h->s, parse_word(word, h->s.graph.rank)) ? 1 : 0;
  });
}

ffc_status ffc_op_intersect(int rank, const char* gens1, const char* gens2, int as_json, char** out) {
  return guarded([&] {
    if (!out) fail(ErrorKind::Precondition, "null argument");
    Subgroup h1 = subgroup_of(parse_gens(gens1, rank), rank, true);
    Subgroup h2 = subgroup_of(parse_gens(gens2, rank), rank, true);
    Intersection inter = intersect(h1, h2);
    auto gen_text = [&](const Subgroup& s) {
      std::ostringstream os;
      bool first = true;
      for (const Word& g : generators(s)) {
        if (!first) os << ",";
        os << format_word(g, rank);
        first = false;
      }
      return os.str();
    };
    if (as_json) {
      nlohmann::json j;
      j["based_rank"] = inter.based.rank;
      j["based_generators"] = gen_text(inter.based);
      j["other_classes"] = nlohmann::json::array();
      for (const auto& o : inter.others) {
        j["other_classes"].push_back({{"rank", o.rank}, {"generators", gen_text(o)}});
      }
      *out = dup_string(j.dump(2));
    } else {
      std::ostringstream os;
      os << "based rank: " << inter.based.rank << "\n";
      os << "based generators: " << (inter.based.rank ? gen_text(inter.based) : "(trivial)") << "\n";
      os << "other intersection classes: " << inter.others.size() << "\n";
      for (const auto& o : inter.others) {
        os << "  rank " << o.rank << ": " << gen_text(o) << "\n";
      }
      *out = dup_string(os.str());
    }
  });
}

ffc_status ffc_op_factor(int rank, const char* gens, int as_json, int* is_factor, char** out) {
  return guarded([&] {
    if (!out || !is_factor) fail(ErrorKind::Precondition, "null argument");
    Subgroup h = subgroup_of(parse_gens(gens, rank), rank, true);
    auto witness = is_free_factor(h, rank);
    *is_factor = witness ? 1 : 0;
    if (as_json) {
      nlohmann::json j;
      j["rank"] = h.rank;
      j["free_factor"] = witness.has_value();
      if (witness) {
        j["complement"] = nlohmann::json::array();
        for (const Word& c : witness->complement) j["complement"].push_back(format_word(c, rank));
      }
      *out = dup_string(j.dump(2));
    } else {
      std::ostringstream os;
      os << "rank: " << h.rank << "\n";
      os << "free factor: " << (witness ? "yes" : "no") << "\n";
      if (witness) {
        os << "complement:";
        for (const Word& c : witness->complement) os << " " << format_word(c, rank);
        os << "\n";
      }
      *out = dup_string(os.str());
    }
  });
}

ffc_status ffc_op_antipodal(int rank, const char* factor_gens, const char* word, int of_mode, int* antipodal,
                            char** out) {
  return guarded([&] {
    if (!out || !antipodal || !word) fail(ErrorKind::Precondition, "null argument");
    Subgroup a = subgroup_of(parse_gens(factor_gens, rank), rank, true);
    Word u = parse_word(word, rank);
    bool result = of_mode ? antipodal_of(a, u, rank) : antipodal_af(a, u, rank);
    *antipodal = result ? 1 : 0;
    std::ostringstream os;
    os << "antipodal: " << (result ? "true" : "false") << "\n";
    *out = dup_string(os.str());
  });
}

ffc_status ffc_op_apartment(int rank, const char* basis, const char* replacements, int of_mode, int bound,
                            int as_json, int* pass, char** out) {
  return guarded([&] {
    if (!out || !pass) fail(ErrorKind::Precondition, "null argument");
    Mode mode = mode_of(of_mode);
    Apartment ap = apartment_from_args(rank, basis, replacements, mode);
    Report r;
    Report va = verify_apartment(ap);
    r.merge("apartment", va);
    if (va.all_pass()) {
      r.merge("antipodal-faces", antipodal_faces_check(ap));
      if (mode == Mode::AF) {
        r.add("standard (rank-1 vertices form a basis)", is_standard_af(ap));
      } else {
        StandardnessResult sr = rank == 3 ? of3_standardness(ap, bound) : buildup_conditions(ap, bound);
        r.merge("standardness", sr.report);
      }
    }
    *pass = r.all_pass() ? 1 : 0;
    *out = dup_string(render(r, as_json));
  });
}

ffc_status ffc_op_sticks(int rank, const char* basis, int of_mode, int face_i, int face_j, int as_json, char** out) {
  return guarded([&] {
    if (!out) fail(ErrorKind::Precondition, "null argument");
    Apartment ap = standard_apartment(parse_gens(basis, rank), mode_of(of_mode), rank);
    std::vector<Stick> list;
    if (face_i == 0 && face_j == 0) {
      list = all_sticks(ap);
    } else {
      list = sticks_of(ap, face_i, face_j);
    }
    if (as_json) {
      nlohmann::json j;
      j["count"] = list.size();
      j["sticks"] = nlohmann::json::array();
      for (const auto& s : list) {
        j["sticks"].push_back({{"face", {s.i, s.j}}, {"word", format_word(s.word, rank)}});
      }
      *out = dup_string(j.dump(2));
    } else {
      std::ostringstream os;
      os << "sticks: " << list.size() << "\n";
      for (const auto& s : list) {
        os << "  (" << s.i << "," << s.j << ") " << format_word(s.word, rank) << "\n";
      }
      *out = dup_string(os.str());
    }
  });
}

ffc_status ffc_op_snops(int rank, const char* basis, int as_json, char** out) {
  return guarded([&] {
    if (!out) fail(ErrorKind::Precondition, "null argument");
    Apartment ap = standard_apartment(parse_gens(basis, rank), Mode::AF, rank);
    SnopCube cube = snops(ap);
    if (as_json) {
      nlohmann::json j;
      j["count"] = cube.snops.size();
      j["snops"] = nlohmann::json::array();
      for (const auto& s : cube.snops) {
        nlohmann::json words = nlohmann::json::array();
        for (const auto& st : s.sticks) words.push_back(format_word(st.word, rank));
        j["snops"].push_back(words);
      }
      j["cube_edges"] = nlohmann::json::array();
      for (auto [a, b] : cube.edges) j["cube_edges"].push_back({a, b});
      *out = dup_string(j.dump(2));
    } else {
      std::ostringstream os;
      os << "snops: " << cube.snops.size() << "\n";
      for (size_t i = 0; i < cube.snops.size(); ++i) {
        os << "  snop " << i << ":";
        for (const auto& st : cube.snops[i].sticks) os << " " << format_word(st.word, rank);
        os << "\n";
      }
      os << "cube edges: " << cube.edges.size() << "\n";
      for (auto [a, b] : cube.edges) os << "  " << a << " -- " << b << "\n";
      *out = dup_string(os.str());
    }
  });
}

ffc_status ffc_op_supersticks(int rank, const char* basis, int of_mode, int i, int j, int k, int as_json, char** out) {
  return guarded([&] {
    if (!out) fail(ErrorKind::Precondition, "null argument");
    Apartment ap = standard_apartment(parse_gens(basis, rank), mode_of(of_mode), rank);
    auto list = supersticks(ap, i, j, k);
    if (as_json) {
      nlohmann::json jj;
      jj["count"] = list.size();
      jj["supersticks"] = nlohmann::json::array();
      for (const auto& s : list) jj["supersticks"].push_back(format_word(s.word, rank));
      *out = dup_string(jj.dump(2));
    } else {
      std::ostringstream os;
      os << "supersticks: " << list.size() << "\n";
      for (const auto& s : list) os << "  " << format_word(s.word, rank) << "\n";
      *out = dup_string(os.str());
    }
  });
}

ffc_status ffc_op_overlap(int rank, const char* basis, int i, int j, int of_mode, int as_json, int* clean, char** out) {
  return guarded([&] {
    if (!out || !clean) fail(ErrorKind::Precondition, "null argument");
    Apartment d0 = standard_apartment(parse_gens(basis, rank), mode_of(of_mode), rank);
    Apartment d1 = nielsen_adjacent(d0, i, j);
    OverlapResult r = overlap_report(d0, d1);
    bool rank1_ok = true;
    for (const auto& item : r.rank1) {
      if (item.status != "vertex" && item.status != "stick") rank1_ok = false;
    }
    bool exceptions_on_face = true;
    for (size_t idx : r.exceptional) {
      if (r.sticks[idx].face_i != std::min(i, j) || r.sticks[idx].face_j != std::max(i, j)) exceptions_on_face = false;
    }
    *clean = (rank1_ok && exceptions_on_face) ? 1 : 0;
    if (as_json) {
      nlohmann::json jj;
      jj["rank1"] = nlohmann::json::array();
      for (const auto& item : r.rank1) jj["rank1"].push_back({{"word", format_word(item.word, rank)}, {"status", item.status}});
      jj["sticks"] = nlohmann::json::array();
      for (const auto& item : r.sticks) {
        jj["sticks"].push_back(
            {{"face", {item.face_i, item.face_j}}, {"word", format_word(item.word, rank)}, {"status", item.status}});
      }
      jj["exceptional_count"] = r.exceptional.size();
      jj["clean"] = *clean != 0;
      *out = dup_string(jj.dump(2));
    } else {
      std::ostringstream os;
      for (const auto& item : r.rank1) {
        os << "rank-1 " << format_word(item.word, rank) << ": " << item.status << "\n";
      }
      for (const auto& item : r.sticks) {
        os << "stick (" << item.face_i << "," << item.face_j << ") " << format_word(item.word, rank) << ": "
           << item.status << "\n";
      }
      os << "exceptional sticks: " << r.exceptional.size() << "\n";
      *out = dup_string(os.str());
    }
  });
}

ffc_status ffc_op_fake_family(int rank, int as_json, int* pass, char** out) {
  return guarded([&] {
    if (!out || !pass) fail(ErrorKind::Precondition, "null argument");
    FakeFamilyResult r = fake_family(rank);
    *pass = (r.report.all_pass() && r.fake) ? 1 : 0;
    *out = dup_string(render(r.report, as_json));
  });
}

ffc_status ffc_op_example68(int bound, int as_json, int* is_fake, char** out) {
  return guarded([&] {
    if (!out || !is_fake) fail(ErrorKind::Precondition, "null argument");
    Ex68Result r = example_68(bound);
    *is_fake = r.verdict == Verdict::Fake ? 1 : 0;
    *out = dup_string(render(r.report, as_json));
  });
}

ffc_status ffc_op_suite(int max_rank, unsigned long long seed, int bound, int with_timing, int as_json, int* all_pass,
                        char** out) {
  return guarded([&] {
    if (!out || !all_pass) fail(ErrorKind::Precondition, "null argument");
    SuiteOptions opt;
    opt.max_rank = max_rank;
    opt.seed = seed;
    opt.bound = bound;
    auto results = run_suite(opt);
    *all_pass = suite_all_pass(results) ? 1 : 0;
    *out = dup_string(as_json ? suite_json(results, with_timing != 0) : suite_text(results, with_timing != 0));
  });
}

ffc_status ffc_op_apartment_dot(int rank, const char* basis, int of_mode, char** out) {
  return guarded([&] {
    if (!out) fail(ErrorKind::Precondition, "null argument");
    Apartment ap = standard_apartment(parse_gens(basis, rank), mode_of(of_mode), rank);
    *out = dup_string(apartment_dot(ap));
  });
}

ffc_status ffc_op_cube_dot(int rank, const char* basis, char** out) {
  return guarded([&] {
    if (!out) fail(ErrorKind::Precondition, "null argument");
    Apartment ap = standard_apartment(parse_gens(basis, rank), Mode::AF, rank);
    *out = dup_string(cube_dot(ap));
  });
}

}  // extern "C"
