#ifndef CARTANSYM_H
#define CARTANSYM_H

/* C interface to the symmetry checker. All objects are opaque handles owned
 * by the caller and released with the matching *_free function. Functions
 * return CS_OK or an error status; cs_last_error() then describes the
 * failure for the calling thread. Strings returned by accessors stay valid
 * until the owning handle is freed. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(CARTANSYM_BUILDING_LIBRARY)
#define CARTANSYM_API __attribute__((visibility("default")))
#else
#define CARTANSYM_API
#endif

typedef enum cs_status {
  CS_OK = 0,
  CS_ERR_ARGUMENT = 1,   /* null handle, bad option value */
  CS_ERR_PARSE = 2,      /* expression syntax */
  CS_ERR_VALIDATION = 3, /* schema violation, chart mismatch, failed load check */
  CS_ERR_DOMAIN = 4,     /* evaluation left an expression's domain */
  CS_ERR_SINGULAR = 5,   /* singular or ill-conditioned matrix */
  CS_ERR_IO = 6,         /* unreadable file, unknown name */
  CS_ERR_INTERNAL = 7
} cs_status;

typedef enum cs_mode { CS_MODE_DIRECT = 0, CS_MODE_CARTAN = 1, CS_MODE_BOTH = 2 } cs_mode;

typedef enum cs_verdict {
  CS_SYMMETRIC = 0,
  CS_NOT_SYMMETRIC = 1,
  CS_INCONCLUSIVE = 2, /* both modes: a decisive residual in (tol, 10 tol] */
  CS_DISAGREEMENT = 3  /* both modes: verdicts differ */
} cs_verdict;

typedef struct cs_geometry cs_geometry;
typedef struct cs_vector cs_vector;
typedef struct cs_report cs_report;
typedef struct cs_text cs_text;

typedef struct cs_check_config {
  double tolerance;
  uint32_t samples;
  uint32_t frames;
  uint64_t seed;
  cs_mode mode;
  uint32_t threads; /* 0: CARTANSYM_THREADS or the hardware count */
} cs_check_config;

CARTANSYM_API const char* cs_version(void);
CARTANSYM_API const char* cs_last_error(void);
CARTANSYM_API const char* cs_status_name(cs_status status);
CARTANSYM_API void cs_check_config_default(cs_check_config* cfg);

/* Catalog name first, then a file path. */
CARTANSYM_API cs_status cs_geometry_load(const char* name_or_path, cs_geometry** out);
CARTANSYM_API cs_status cs_geometry_parse(const char* text, cs_geometry** out);
CARTANSYM_API void cs_geometry_free(cs_geometry* geometry);
CARTANSYM_API const char* cs_geometry_name(const cs_geometry* geometry);
CARTANSYM_API const char* cs_geometry_kind(const cs_geometry* geometry);
CARTANSYM_API size_t cs_geometry_dim(const cs_geometry* geometry);

CARTANSYM_API cs_status cs_vector_load(const char* name_or_path, cs_vector** out);
CARTANSYM_API cs_status cs_vector_parse(const char* text, cs_vector** out);
CARTANSYM_API void cs_vector_free(cs_vector* vector);
CARTANSYM_API const char* cs_vector_name(const cs_vector* vector);

CARTANSYM_API cs_status cs_check(const cs_geometry* geometry, const cs_vector* vector, const cs_check_config* cfg,
                                 cs_report** out);
CARTANSYM_API void cs_report_free(cs_report* report);
CARTANSYM_API cs_verdict cs_report_verdict(const cs_report* report);
/* Looks in the direct report first, then the Cartan one. */
CARTANSYM_API cs_status cs_report_residual(const cs_report* report, const char* name, double* raw,
                                           double* normalized);
CARTANSYM_API const char* cs_report_json(const cs_report* report);
CARTANSYM_API const char* cs_report_text(const cs_report* report);

/* Catalog listing. */
CARTANSYM_API cs_status cs_catalog_list(int json, cs_text** out);
/* Flow-oracle convergence for a geometry/vector pair, or the builtin pair set
 * when both names are null. all_pass receives 1 when every pair meets the
 * error and slope targets. */
CARTANSYM_API cs_status cs_oracle_table(const char* geometry, const char* vector, uint32_t points, uint64_t seed,
                                        int json, cs_text** out, int* all_pass);
/* Both modes over every catalog pair with a Cartan model. all_agree receives
 * 1 when every pair agrees and none is inconclusive. */
CARTANSYM_API cs_status cs_catalog_matrix(const cs_check_config* cfg, int json, cs_text** out, int* all_agree);
CARTANSYM_API const char* cs_text_data(const cs_text* text);
CARTANSYM_API void cs_text_free(cs_text* text);

#ifdef __cplusplus
}
#endif

#endif
