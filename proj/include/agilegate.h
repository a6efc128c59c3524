/* agilegate C API
 *
 * Agile-practice applicability engine for mission/life-critical systems:
 * stage 1 gates on organizational success factors, stage 2 discards
 * practices that conflict with system characteristics or preclude desired
 * qualities, stage 3 assesses per-practice organizational readiness and
 * builds a dependency-ordered adoption plan.
 *
 * All handles are opaque. Functions return AGILEGATE_OK (0) or an error
 * code; when an error message is produced it is placed in *errmsg as a
 * malloc()ed string the caller releases with agilegate_free(). All document
 * parameters are UTF-8 JSON text.
 */

#ifndef AGILEGATE_H_
#define AGILEGATE_H_

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct agilegate_catalog_t agilegate_catalog_t;
typedef struct agilegate_report_t agilegate_report_t;

enum {
    AGILEGATE_OK = 0,
    AGILEGATE_PARSE_ERROR = 1,      /* malformed JSON */
    AGILEGATE_INVALID_CATALOG = 2,  /* catalog violates its invariants */
    AGILEGATE_INVALID_INPUT = 3,    /* other input document invalid */
    AGILEGATE_UNKNOWN_ID = 4,       /* an identifier does not resolve */
    AGILEGATE_BAD_ARGUMENT = 5,     /* null pointer / contract misuse */
    AGILEGATE_INTERNAL_ERROR = 6
};

enum {
    AGILEGATE_FORMAT_HUMAN = 0,
    AGILEGATE_FORMAT_MACHINE = 1
};

/* Gate verdict of a report (agilegate_report_gate_verdict). */
enum {
    AGILEGATE_VERDICT_NOGO = 0,
    AGILEGATE_VERDICT_GO = 1,
    AGILEGATE_VERDICT_ASSUMED = 2
};

extern const char* agilegate_version(void);

/* Releases strings returned through char** out-parameters. */
extern void agilegate_free(char* ptr);

/* Parses and validates a catalog document. On validation failure the
 * message lists every violation, one per line. */
extern int agilegate_catalog_open(const char* data, size_t len,
                                  agilegate_catalog_t** out, char** errmsg);

extern void agilegate_catalog_close(agilegate_catalog_t* catalog);

/* Deterministic re-serialization of a loaded catalog. */
extern int agilegate_catalog_to_json(const agilegate_catalog_t* catalog,
                                     char** out, char** errmsg);

/* Objectives, transitive prerequisites, required characteristics, and every
 * conflict/preclusion rule touching one practice, as plain text. */
extern int agilegate_explain(const agilegate_catalog_t* catalog,
                             const char* practice_id, char** out, char** errmsg);

/* Full three-stage pipeline. policies_json may be NULL (defaults: gate
 * threshold 0.8, strict readiness). */
extern int agilegate_run(const agilegate_catalog_t* catalog,
                         const char* profile_json,
                         const char* objectives_json,
                         const char* responses_json,
                         const char* policies_json,
                         agilegate_report_t** out, char** errmsg);

/* Full pipeline with stage-3 what-if overrides: characteristic ids paired
 * with hypothetical degrees in [0,1]. */
extern int agilegate_what_if(const agilegate_catalog_t* catalog,
                             const char* profile_json,
                             const char* objectives_json,
                             const char* responses_json,
                             const char* policies_json,
                             const char* const* override_ids,
                             const double* override_degrees,
                             size_t override_count,
                             agilegate_report_t** out, char** errmsg);

/* Single stages. Later stages consume machine reports from earlier ones:
 * stage2 takes a stage-1 report (or assume_go != 0), stage3 always needs a
 * report whose suitability section completed. */
extern int agilegate_run_stage1(const agilegate_catalog_t* catalog,
                                const char* responses_json,
                                const char* policies_json,
                                agilegate_report_t** out, char** errmsg);

extern int agilegate_run_stage2(const agilegate_catalog_t* catalog,
                                const char* profile_json,
                                const char* stage1_report_json, /* NULL with assume_go */
                                int assume_go,
                                agilegate_report_t** out, char** errmsg);

extern int agilegate_run_stage3(const agilegate_catalog_t* catalog,
                                const char* objectives_json,
                                const char* responses_json,
                                const char* policies_json,
                                const char* stage2_report_json,
                                agilegate_report_t** out, char** errmsg);

/* Re-opens a machine-format report (for stage chaining and round-trips). */
extern int agilegate_report_parse(const char* data, size_t len,
                                  agilegate_report_t** out, char** errmsg);

extern void agilegate_report_close(agilegate_report_t* report);

extern int agilegate_report_render(const agilegate_report_t* report, int format,
                                   char** out, char** errmsg);

/* AGILEGATE_VERDICT_*; negative on bad argument. */
extern int agilegate_report_gate_verdict(const agilegate_report_t* report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* AGILEGATE_H_ */
