// ffc — command-line driver for the free-factor-complex toolkit.
// Talks to the core exclusively through the C API in ffc/ffc.h.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ffc/ffc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

int exit_for(ffc_status st) {
  switch (st) {
    case FFC_OK:
      return kExitOk;
    case FFC_ERROR_PARSE:
    case FFC_ERROR_PRECONDITION:
      return kExitUsage;
    default:
      return kExitCheckFailed;
  }
}

int report_error(ffc_status st) {
  std::cerr << "error: " << ffc_last_error() << "\n";
  return exit_for(st);
}

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { ffc_string_free(s); }
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(kExitUsage);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    std::exit(kExitUsage);
  }
  out << content;
}

// Build a graph handle from either a graph file or a comma-separated word
// list (the wedge of the word loops).
ffc_graph* graph_from_options(const std::string& graph_path, const std::string& words, int rank) {
  ffc_graph* g = nullptr;
  if (!graph_path.empty()) {
    std::string text = read_input(graph_path);
    ffc_status st = ffc_graph_parse(text.c_str(), &g);
    if (st != FFC_OK) std::exit(report_error(st));
    return g;
  }
  if (words.empty()) {
    std::cerr << "error: provide --graph <path|-> or --words <list>\n";
    std::exit(kExitUsage);
  }
  ffc_subgroup* h = nullptr;
  ffc_status st = ffc_subgroup_create(rank, words.c_str(), 1, &h);
  if (st != FFC_OK) std::exit(report_error(st));
  st = ffc_subgroup_graph(h, &g);
  ffc_subgroup_free(h);
  if (st != FFC_OK) std::exit(report_error(st));
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"free-factor-complex toolkit (Stallings cores, folding, apartments, sticks)"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags like -n may follow the subcommand
  app.failure_message(CLI::FailureMessage::help);

  int rank = 3;
  bool of_mode = false;
  bool as_json = false;
  int bound = 40;
  unsigned long long seed = 20250809ull;
  app.add_option("-n,--rank", rank, "ambient free group rank")->capture_default_str();
  std::string mode_name = "af";
  app.add_option("--mode", mode_name, "af (pointed factors) or of (conjugacy classes)")
      ->check(CLI::IsMember({"af", "of"}))
      ->capture_default_str();
  app.add_flag("--json", as_json, "machine-readable reports");
  app.add_option("--bound", bound, "loop-search bound for standardness checks")->capture_default_str();
  app.add_option("--seed", seed, "seed for the randomized suites")->capture_default_str();

  // fold
  auto* cmd_fold = app.add_subcommand("fold", "fold a labeled graph (or the wedge of word loops)");
  std::string fold_graph, fold_words;
  cmd_fold->add_option("--graph", fold_graph, "graph file, or - for stdin");
  cmd_fold->add_option("--words", fold_words, "comma-separated words");

  // core
  auto* cmd_core = app.add_subcommand("core", "pointed or unpointed core of a graph");
  std::string core_graph, core_words;
  bool core_unpointed = false;
  cmd_core->add_option("--graph", core_graph, "graph file, or - for stdin");
  cmd_core->add_option("--words", core_words, "comma-separated words");
  cmd_core->add_flag("--unpointed", core_unpointed, "strip every valence-1 vertex");

  // member
  auto* cmd_member = app.add_subcommand("member", "does the word lie in the subgroup?");
  std::string member_sub, member_word;
  cmd_member->add_option("--sub", member_sub, "subgroup generators")->required();
  cmd_member->add_option("--word", member_word, "query word")->required();

  // intersect
  auto* cmd_intersect = app.add_subcommand("intersect", "based and conjugate intersections of two subgroups");
  std::string int_sub1, int_sub2;
  cmd_intersect->add_option("--sub1", int_sub1, "first subgroup generators")->required();
  cmd_intersect->add_option("--sub2", int_sub2, "second subgroup generators")->required();

  // factor
  auto* cmd_factor = app.add_subcommand("factor", "free-factor test with complement witness");
  std::string factor_gens;
  cmd_factor->add_option("gens", factor_gens, "subgroup generators")->required();

  // antipodal
  auto* cmd_antipodal = app.add_subcommand("antipodal", "is the rank-1 factor antipodal to the rank n-1 factor?");
  std::string anti_factor, anti_word;
  cmd_antipodal->add_option("--factor", anti_factor, "rank n-1 factor generators")->required();
  cmd_antipodal->add_option("--word", anti_word, "rank-1 generator")->required();

  // apartment
  auto* cmd_apartment = app.add_subcommand("apartment", "verify an apartment built from a basis");
  std::string ap_basis, ap_replace;
  cmd_apartment->add_option("--basis", ap_basis, "comma-separated basis words")->required();
  cmd_apartment->add_option("--replace", ap_replace,
                            "semicolon-separated vertex replacements, e.g. \"1,2=a,bacAbaCAB\"");

  // sticks
  auto* cmd_sticks = app.add_subcommand("sticks", "sticks of a standard apartment");
  std::string sticks_basis, sticks_face;
  cmd_sticks->add_option("--basis", sticks_basis, "comma-separated basis words")->required();
  cmd_sticks->add_option("--face", sticks_face, "rank-2 face, e.g. 1,2 (default: all faces)");

  // snops
  auto* cmd_snops = app.add_subcommand("snops", "snops and the cube skeleton (AF mode)");
  std::string snops_basis;
  cmd_snops->add_option("--basis", snops_basis, "comma-separated basis words")->required();

  // supersticks
  auto* cmd_super = app.add_subcommand("supersticks", "supersticks of a rank-3 face");
  std::string super_basis, super_face = "1,2,3";
  cmd_super->add_option("--basis", super_basis, "comma-separated basis words")->required();
  cmd_super->add_option("--face", super_face, "rank-3 face, e.g. 1,2,3")->capture_default_str();

  // overlap
  auto* cmd_overlap = app.add_subcommand("overlap", "classify a Nielsen-adjacent apartment against the base one");
  std::string ov_basis, ov_nielsen = "1,2";
  cmd_overlap->add_option("--basis", ov_basis, "comma-separated basis words")->required();
  cmd_overlap->add_option("--nielsen", ov_nielsen, "indices i,j of the move b_i -> b_i b_j")->capture_default_str();

  // fake7
  auto* cmd_fake7 = app.add_subcommand("fake7", "build and verify the recursive fake-apartment family");

  // ex68
  auto* cmd_ex68 = app.add_subcommand("ex68", "the bridge-conjugated fake apartment example in rank 3");

  // suite
  auto* cmd_suite = app.add_subcommand("suite", "run the full verification suite");
  bool suite_timing = false;
  cmd_suite->add_flag("--timings", suite_timing, "include wall-clock timings (non-deterministic output)");

  // dot
  auto* cmd_dot = app.add_subcommand("dot", "DOT export for graphs, apartments and the snop cube");
  std::string dot_graph, dot_words, dot_basis, dot_out;
  bool dot_cube = false;
  cmd_dot->add_option("--graph", dot_graph, "graph file, or - for stdin");
  cmd_dot->add_option("--words", dot_words, "comma-separated words (graph of the folded subgroup)");
  cmd_dot->add_option("--basis", dot_basis, "apartment basis (poset diagram)");
  cmd_dot->add_flag("--cube", dot_cube, "emit the snop cube instead of the apartment poset");
  cmd_dot->add_option("--dot", dot_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const int of_flag = mode_name == "of" ? 1 : 0;
  of_mode = of_flag != 0;
  (void)of_mode;

  auto parse_face2 = [&](const std::string& s, int& i, int& j) {
    if (std::sscanf(s.c_str(), "%d,%d", &i, &j) != 2) {
      std::cerr << "error: face must look like i,j\n";
      std::exit(kExitUsage);
    }
  };

  if (cmd_fold->parsed()) {
    ffc_graph* g = graph_from_options(fold_graph, fold_words, rank);
    ffc_graph* folded = nullptr;
    ffc_status st = ffc_graph_fold(g, &folded);
    ffc_graph_free(g);
    if (st != FFC_OK) return report_error(st);
    OwnedString text;
    st = ffc_graph_serialize(folded, &text.s);
    ffc_graph_free(folded);
    if (st != FFC_OK) return report_error(st);
    std::cout << text.s;
    return kExitOk;
  }

  if (cmd_core->parsed()) {
    ffc_graph* g = graph_from_options(core_graph, core_words, rank);
    ffc_graph* c = nullptr;
    ffc_status st = ffc_graph_core(g, core_unpointed ? 0 : 1, &c);
    ffc_graph_free(g);
    if (st != FFC_OK) return report_error(st);
    OwnedString text;
    st = ffc_graph_serialize(c, &text.s);
    ffc_graph_free(c);
    if (st != FFC_OK) return report_error(st);
    std::cout << text.s;
    return kExitOk;
  }

  if (cmd_member->parsed()) {
    ffc_subgroup* h = nullptr;
    ffc_status st = ffc_subgroup_create(rank, member_sub.c_str(), 1, &h);
    if (st != FFC_OK) return report_error(st);
    int result = 0;
    st = ffc_subgroup_contains(h, member_word.c_str(), &result);
    ffc_subgroup_free(h);
    if (st != FFC_OK) return report_error(st);
    std::cout << "member: " << (result ? "true" : "false") << "\n";
    return result ? kExitOk : kExitCheckFailed;
  }

  if (cmd_intersect->parsed()) {
    OwnedString out;
    ffc_status st = ffc_op_intersect(rank, int_sub1.c_str(), int_sub2.c_str(), as_json, &out.s);
    if (st != FFC_OK) return report_error(st);
    std::cout << out.s;
    return kExitOk;
  }

  if (cmd_factor->parsed()) {
    OwnedString out;
    int is_factor = 0;
    ffc_status st = ffc_op_factor(rank, factor_gens.c_str(), as_json, &is_factor, &out.s);
    if (st != FFC_OK) return report_error(st);
    std::cout << out.s;
    return is_factor ? kExitOk : kExitCheckFailed;
  }

  if (cmd_antipodal->parsed()) {
    OwnedString out;
    int anti = 0;
    ffc_status st = ffc_op_antipodal(rank, anti_factor.c_str(), anti_word.c_str(), of_flag, &anti, &out.s);
    if (st != FFC_OK) return report_error(st);
    std::cout << out.s;
    return anti ? kExitOk : kExitCheckFailed;
  }

  if (cmd_apartment->parsed()) {
    OwnedString out;
    int pass = 0;
    ffc_status st = ffc_op_apartment(rank, ap_basis.c_str(), ap_replace.empty() ? nullptr : ap_replace.c_str(),
                                     of_flag, bound, as_json, &pass, &out.s);
    if (st != FFC_OK) return report_error(st);
    std::cout << out.s;
    return pass ? kExitOk : kExitCheckFailed;
  }

  if (cmd_sticks->parsed()) {
    int i = 0, j = 0;
    if (!sticks_face.empty()) parse_face2(sticks_face, i, j);
    OwnedString out;
    ffc_status st = ffc_op_sticks(rank, sticks_basis.c_str(), of_flag, i, j, as_json, &out.s);
    if (st != FFC_OK) return report_error(st);
    std::cout << out.s;
    return kExitOk;
  }

  if (cmd_snops->parsed()) {
    OwnedString out;
    ffc_status st = ffc_op_snops(rank, snops_basis.c_str(), as_json, &out.s);
    if (st != FFC_OK) return report_error(st);
    std::cout << out.s;
    return kExitOk;
  }

  if (cmd_super->parsed()) {
    int i = 0, j = 0, k = 0;
    if (std::sscanf(super_face.c_str(), "%d,%d,%d", &i, &j, &k) != 3) {
      std::cerr << "error: face must look like i,j,k\n";
      return kExitUsage;
    }
    OwnedString out;
    ffc_status st = ffc_op_supersticks(rank, super_basis.c_str(), of_flag, i, j, k, as_json, &out.s);
    if (st != FFC_OK) return report_error(st);
    std::cout << out.s;
    return kExitOk;
  }

  if (cmd_overlap->parsed()) {
    int i = 0, j = 0;
    parse_face2(ov_nielsen, i, j);
    OwnedString out;
    int clean = 0;
    ffc_status st = ffc_op_overlap(rank, ov_basis.c_str(), i, j, of_flag, as_json, &clean, &out.s);
    if (st != FFC_OK) return report_error(st);
    std::cout << out.s;
    return clean ? kExitOk : kExitCheckFailed;
  }

  if (cmd_fake7->parsed()) {
    OwnedString out;
    int pass = 0;
    ffc_status st = ffc_op_fake_family(rank, as_json, &pass, &out.s);
    if (st != FFC_OK) return report_error(st);
    std::cout << out.s;
    return pass ? kExitOk : kExitCheckFailed;
  }

  if (cmd_ex68->parsed()) {
    OwnedString out;
    int fake = 0;
    ffc_status st = ffc_op_example68(bound, as_json, &fake, &out.s);
    if (st != FFC_OK) return report_error(st);
    std::cout << out.s;
    return fake ? kExitOk : kExitCheckFailed;
  }

  if (cmd_suite->parsed()) {
    OwnedString out;
    int all_pass = 0;
    int max_rank = app.count("--rank") ? rank : 5;  // full suite by default
    ffc_status st = ffc_op_suite(max_rank, seed, bound, suite_timing ? 1 : 0, as_json, &all_pass, &out.s);
    if (st != FFC_OK) return report_error(st);
    std::cout << out.s;
    return all_pass ? kExitOk : kExitCheckFailed;
  }

  if (cmd_dot->parsed()) {
    OwnedString out;
    ffc_status st;
    if (!dot_basis.empty()) {
      st = dot_cube ? ffc_op_cube_dot(rank, dot_basis.c_str(), &out.s)
                    : ffc_op_apartment_dot(rank, dot_basis.c_str(), of_flag, &out.s);
    } else {
      ffc_graph* g = graph_from_options(dot_graph, dot_words, rank);
      st = ffc_graph_dot(g, &out.s);
      ffc_graph_free(g);
    }
    if (st != FFC_OK) return report_error(st);
    write_output(dot_out, out.s);
    return kExitOk;
  }

  std::cerr << "error: no subcommand\n";
  return kExitUsage;
}
