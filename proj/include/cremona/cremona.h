#ifndef CREMONA_CREMONA_H
#define CREMONA_CREMONA_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define CRM_API __attribute__((visibility("default")))
#else
#define CRM_API
#endif

typedef enum crm_status {
  CRM_OK = 0,
  CRM_ERR_DOMAIN = 1,
  CRM_ERR_PARSE = 2,
  CRM_ERR_MALFORMED = 3,
  CRM_ERR_CAP_EXCEEDED = 4,
  CRM_ERR_RANK_MISMATCH = 5,
  CRM_ERR_INVALID_CLASS = 6,
  CRM_ERR_NON_SPANNING = 7,
  CRM_ERR_NON_INTEGRAL = 8,
  CRM_ERR_INCONSISTENT = 9,
  CRM_ERR_FORM_VIOLATION = 10,
  CRM_ERR_CANONICAL_VIOLATION = 11,
  CRM_ERR_INFINITE_ORDER = 12,
  CRM_ERR_UNSUPPORTED = 13,
  CRM_ERR_USAGE = 14,
  CRM_ERR_INTERNAL = 15
} crm_status;

typedef struct crm_context crm_context;
typedef struct crm_map crm_map;
typedef struct crm_model crm_model;
typedef struct crm_group crm_group;

CRM_API const char* crm_version(void);
CRM_API const char* crm_status_name(crm_status status);

/* Every handle-producing call reports failures through the context: the
   status is returned and crm_last_error describes it until the next call. */
CRM_API crm_context* crm_context_new(void);
CRM_API void crm_context_free(crm_context* ctx);
CRM_API const char* crm_last_error(const crm_context* ctx);

/* Largest cyclotomic conductor arithmetic may create (process-wide). */
CRM_API crm_status crm_set_conductor_cap(crm_context* ctx, int cap);
CRM_API int crm_conductor_cap(void);

/* Strings returned through char** are owned by the caller. */
CRM_API void crm_string_free(char* s);

/* Runs a command-line verb on a JSON document. input_json and options_json
   may be NULL. *output receives the JSON result (or an error object) and
   *exit_code 0 (success), 1 (check failure) or 2 (usage or parse error). */
CRM_API crm_status crm_run_command(crm_context* ctx, const char* command, const char* input_json,
                                   const char* options_json, char** output, int* exit_code);
/* Same, with the human-readable rendering in *output. */
CRM_API crm_status crm_run_command_text(crm_context* ctx, const char* command, const char* input_json,
                                        const char* options_json, char** output, int* exit_code);

/* Maps of the plane from three homogeneous polynomial strings. */
CRM_API crm_status crm_map_parse(crm_context* ctx, const char* x, const char* y, const char* z, crm_map** out);
CRM_API crm_status crm_map_compose(crm_context* ctx, const crm_map* f, const crm_map* g, crm_map** out);
CRM_API int crm_map_degree(const crm_map* f);
CRM_API int crm_map_equal(const crm_map* f, const crm_map* g);
CRM_API crm_status crm_map_to_string(crm_context* ctx, const crm_map* f, char** out);
CRM_API void crm_map_free(crm_map* f);

/* Blow-up models from the JSON model schema. */
CRM_API crm_status crm_model_from_json(crm_context* ctx, const char* json, crm_model** out);
CRM_API int crm_model_rank(const crm_model* m);
CRM_API crm_status crm_model_curve_count(crm_context* ctx, const crm_model* m, size_t* count);
CRM_API crm_status crm_model_curves_json(crm_context* ctx, const crm_model* m, char** out);
CRM_API void crm_model_free(crm_model* m);

/* Finite groups generated by maps. */
CRM_API crm_status crm_map_group_closure(crm_context* ctx, const crm_map* const* generators, size_t count,
                                         size_t cap, crm_group** out);
CRM_API size_t crm_group_order(const crm_group* g);
CRM_API int crm_group_is_abelian(const crm_group* g);
CRM_API crm_status crm_group_element(crm_context* ctx, const crm_group* g, size_t index, crm_map** out);
CRM_API void crm_group_free(crm_group* g);

#ifdef __cplusplus
}
#endif

#endif
