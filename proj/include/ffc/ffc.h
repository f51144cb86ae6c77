/*
 * ffc — free-factor-complex toolkit.
 *
 * C interface to the core library: opaque handles, integer status codes, and
 * heap-allocated strings released through ffc_string_free. All functions are
 * safe to call from multiple threads; error messages are thread local.
 */
#ifndef FFC_H
#define FFC_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ffc_status {
  FFC_OK = 0,
  FFC_ERROR_PARSE = 1,        /* malformed word/graph/flag input */
  FFC_ERROR_PRECONDITION = 2, /* operation preconditions violated */
  FFC_ERROR_INTERNAL = 3,     /* invariant breakage inside the library */
} ffc_status;

typedef struct ffc_word ffc_word;
typedef struct ffc_graph ffc_graph;
typedef struct ffc_subgroup ffc_subgroup;

const char* ffc_version(void);

/* Message for the most recent failure on this thread. */
const char* ffc_last_error(void);

void ffc_string_free(char* s);
void ffc_word_free(ffc_word* w);
void ffc_graph_free(ffc_graph* g);
void ffc_subgroup_free(ffc_subgroup* h);

/* ---- words ---------------------------------------------------------- */
/* Text syntax: `abA` (uppercase = inverse) for rank <= 26, or spaced
 * `a1 A2` tokens; `1` is the empty word. */
ffc_status ffc_word_parse(int rank, const char* text, ffc_word** out);
ffc_status ffc_word_format(const ffc_word* w, int rank, char** out);
int ffc_word_length(const ffc_word* w);

/* ---- labeled graphs -------------------------------------------------- */
/* Serialization: header `n=<rank> base=<vertex|none>`, then `src dst label`
 * lines. */
ffc_status ffc_graph_parse(const char* text, ffc_graph** out);
ffc_status ffc_graph_serialize(const ffc_graph* g, char** out);
ffc_status ffc_graph_dot(const ffc_graph* g, char** out);
ffc_status ffc_graph_fold(const ffc_graph* g, ffc_graph** out);
ffc_status ffc_graph_core(const ffc_graph* g, int pointed, ffc_graph** out);
ffc_status ffc_graph_girth(const ffc_graph* g, int* out);

/* ---- subgroups -------------------------------------------------------- */
/* Generator lists are comma-separated words, e.g. "a,bab" */
ffc_status ffc_subgroup_create(int rank, const char* generators, int pointed, ffc_subgroup** out);
int ffc_subgroup_rank(const ffc_subgroup* h);
ffc_status ffc_subgroup_graph(const ffc_subgroup* h, ffc_graph** out);
ffc_status ffc_subgroup_contains(const ffc_subgroup* h, const char* word, int* result);

/* ---- operation-level entry points ------------------------------------ */
/* Reports are rendered text (as_json = 0) or JSON (as_json = 1). */

ffc_status ffc_op_intersect(int rank, const char* gens1, const char* gens2, int as_json, char** out);

ffc_status ffc_op_factor(int rank, const char* gens, int as_json, int* is_factor, char** out);

/* of_mode = 0: pointed factors and fold test; 1: conjugacy classes. */
ffc_status ffc_op_antipodal(int rank, const char* factor_gens, const char* word, int of_mode, int* antipodal,
                            char** out);

/* Builds the standard apartment on `basis`, optionally replacing vertices
 * ("2,3=b,cbC;1=a" replaces the subsets {2,3} and {1}), then verifies the
 * apartment axioms, the opposite-face antipodality, and standardness. */
ffc_status ffc_op_apartment(int rank, const char* basis, const char* replacements, int of_mode, int bound,
                            int as_json, int* pass, char** out);

/* face_i = face_j = 0 lists every rank-2 face. */
ffc_status ffc_op_sticks(int rank, const char* basis, int of_mode, int face_i, int face_j, int as_json, char** out);

ffc_status ffc_op_snops(int rank, const char* basis, int as_json, char** out);

ffc_status ffc_op_supersticks(int rank, const char* basis, int of_mode, int i, int j, int k, int as_json, char** out);

/* Overlap of the apartment on `basis` with its Nielsen image b_i -> b_i b_j. */
ffc_status ffc_op_overlap(int rank, const char* basis, int i, int j, int of_mode, int as_json, int* clean, char** out);

ffc_status ffc_op_fake_family(int rank, int as_json, int* pass, char** out);

ffc_status ffc_op_example68(int bound, int as_json, int* is_fake, char** out);

ffc_status ffc_op_suite(int max_rank, unsigned long long seed, int bound, int with_timing, int as_json, int* all_pass,
                        char** out);

ffc_status ffc_op_apartment_dot(int rank, const char* basis, int of_mode, char** out);
ffc_status ffc_op_cube_dot(int rank, const char* basis, char** out);

#ifdef __cplusplus
}
#endif

#endif /* FFC_H */
