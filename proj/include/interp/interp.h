#ifndef INTERP_INTERP_H
#define INTERP_INTERP_H

/* C interface to the interpolation toolkit.
 *
 * Every entry point returns an interp_status. Strings handed out through
 * `char** out` parameters are owned by the caller and released with
 * interp_string_free. On failure, interp_last_error() and
 * interp_last_error_details() describe the most recent error on the calling
 * thread; details are JSON text (possibly "null"). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define INTERP_API __declspec(dllexport)
#else
#define INTERP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum interp_status {
  INTERP_OK = 0,
  INTERP_INVALID_ARGUMENT = 1,
  INTERP_OUT_OF_RANGE = 2,
  INTERP_EMPTY_SET = 3,
  INTERP_DOMAIN = 4,
  INTERP_PRECONDITION = 5,
  INTERP_IO = 6,
  INTERP_CONSTRUCTION_FAILED = 7,
  INTERP_INTERNAL = 8
} interp_status;

typedef struct interp_set interp_set;
typedef struct interp_construction interp_construction;

INTERP_API const char* interp_version(void);
INTERP_API const char* interp_status_name(interp_status status);
INTERP_API const char* interp_last_error(void);
INTERP_API const char* interp_last_error_details(void);
INTERP_API void interp_string_free(char* text);

/* Integer sets. */
INTERP_API interp_status interp_set_parse(const char* spec, interp_set** out);
INTERP_API void interp_set_free(interp_set* set);
INTERP_API interp_status interp_set_contains(const interp_set* set, int64_t n, int* out);
INTERP_API interp_status interp_set_describe(const interp_set* set, char** out);
/* Elements in [1, bound] in the set-file text format. */
INTERP_API interp_status interp_set_elements_text(const interp_set* set, int64_t bound, char** out);

/* JSON-in, JSON-out reports. `passed` (optional) receives 1 when every
 * verdict in the report holds. */
INTERP_API interp_status interp_analyze(const interp_set* set, const char* request_json, char** report_json,
                                        int* passed);
INTERP_API interp_status interp_count(const char* request_json, char** report_json, int* passed);
INTERP_API interp_status interp_verify_f(const char* request_json, char** report_json, int* passed);
/* `word_text` is in the word-file format. */
INTERP_API interp_status interp_word_stats(const char* word_text, const char* request_json, char** report_json);

/* Constructions. */
INTERP_API interp_status interp_construct(const char* problem_json, const char* options_json,
                                          interp_construction** out);
INTERP_API void interp_construction_free(interp_construction* c);
INTERP_API int interp_construction_passed(const interp_construction* c);
INTERP_API interp_status interp_construction_report(const interp_construction* c, char** out);
INTERP_API interp_status interp_construction_trace(const interp_construction* c, char** out);
INTERP_API size_t interp_construction_word_count(const interp_construction* c);
/* Word i as (file name, word-file text). */
INTERP_API interp_status interp_construction_word(const interp_construction* c, size_t index, char** name,
                                                  char** text);

#ifdef __cplusplus
}
#endif

#endif /* INTERP_INTERP_H */
