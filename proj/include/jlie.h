/* C interface to the Jacobi / Lie-systems library.
 *
 * Every function is safe to call from C: no exceptions cross this boundary.
 * Failures return a status code and leave a message in jlie_last_error(),
 * which is thread-local and valid until the next API call on that thread.
 * Strings returned through char** are heap copies; release them with
 * jlie_string_free. Handles are released with their matching _free call.
 */
#ifndef JLIE_H
#define JLIE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum jlie_status {
  JLIE_OK = 0,           /* success; for jlie_run, every check positive */
  JLIE_CHECK_FAILED = 1, /* the operation ran but a check came out negative */
  JLIE_BAD_INPUT = 2,    /* parse, schema or argument error */
  JLIE_FATAL = 3         /* unexpected internal failure */
} jlie_status;

const char* jlie_version(void);
const char* jlie_last_error(void);
void jlie_string_free(char* s);

/* A parsed system description: chart, structure pair, named fields and
 * functions. The input is the JSON manifest text, not a file path. */
typedef struct jlie_manifest_s jlie_manifest;

jlie_status jlie_manifest_parse(const char* json_text, jlie_manifest** out);
void jlie_manifest_free(jlie_manifest* m);
/* Canonical JSON form of the parsed manifest. */
char* jlie_manifest_print(const jlie_manifest* m);

/* A (bivector, vector field) pair with both compatibility residuals already
 * tested. Operations that need a genuine structure fail with
 * JLIE_CHECK_FAILED when a residual did not test zero. */
typedef struct jlie_structure_s jlie_structure;

jlie_status jlie_structure_check(const jlie_manifest* m, uint64_t seed,
                                 jlie_structure** out);
void jlie_structure_free(jlie_structure* s);
int jlie_structure_usable(const jlie_structure* s);     /* 1 or 0 */
int jlie_structure_is_poisson(const jlie_structure* s); /* 1 or 0 */

/* {f,g} in canonical printed form. f and g are expression texts over the
 * manifest's chart. */
jlie_status jlie_bracket(const jlie_structure* s, const char* f, const char* g,
                         char** out_expr);

/* The field attached to f, printed canonically. *out_good reports whether f
 * is invariant along the structure's vector field (1) or not (0). */
jlie_status jlie_hamiltonian(const jlie_structure* s, const char* f,
                             char** out_field, int* out_good);

/* Runs one named command (check, bracket, hamiltonian, closure, com, table,
 * integrate) with a JSON argument object; this is the whole CLI surface.
 * *out_report receives the JSON report, set on every status except
 * JLIE_FATAL. *out_csv may be NULL; when given and the command produced
 * trajectory data, it receives CSV text, else NULL. The status is the
 * command's exit code. */
jlie_status jlie_run(const char* command, const char* args_json,
                     char** out_report, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* JLIE_H */
