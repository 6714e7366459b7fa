#ifndef NP3_H
#define NP3_H

#ifdef __cplusplus
extern "C" {
#endif

/* Status values double as process exit codes. */
enum {
    NP3_OK = 0,
    NP3_CHECK_FAILED = 1,
    NP3_USAGE = 2,
    NP3_NUMERIC = 3
};

typedef struct np3_context np3_context;

/* Never returns NULL except on allocation failure. */
np3_context* np3_context_new(void);
void np3_context_free(np3_context* ctx);

/* Runs one command described by a JSON config string (see library docs for
 * the schema). Returns a status value; the textual results stay owned by the
 * context until the next np3_run call or np3_context_free. */
int np3_run(np3_context* ctx, const char* config_json);

/* JSON (or table) output of the last run; empty string when none. */
const char* np3_output(const np3_context* ctx);

/* CSV trace of the last flow run; empty string otherwise. */
const char* np3_csv(const np3_context* ctx);

/* Diagnostic message of the last run; empty string on success. */
const char* np3_error(const np3_context* ctx);

const char* np3_version(void);

#ifdef __cplusplus
}
#endif

#endif /* NP3_H */
