/* C interface to libdicke: Gaussian ground states of the Dicke model, their
 * quantum Fisher information and the Fisher information of local probes.
 *
 * All functions return a dicke_status. On failure the message of the last
 * error on the calling thread is available from dicke_last_error(). Strings
 * returned through char** out-parameters must be released with
 * dicke_string_free(). */
#ifndef DICKE_DICKE_H
#define DICKE_DICKE_H

#include <stddef.h>

#if defined(_WIN32)
#define DICKE_API __declspec(dllexport)
#elif defined(__GNUC__)
#define DICKE_API __attribute__((visibility("default")))
#else
#define DICKE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dicke_status {
    DICKE_OK = 0,
    DICKE_INVALID_ARGUMENT = 1,
    DICKE_CONFIG = 2,
    DICKE_CRITICAL_POINT = 3,
    DICKE_STEP_CROSSES_CRITICAL = 4,
    DICKE_SINGULAR = 5,
    DICKE_UNPHYSICAL = 6,
    DICKE_NOT_CONVERGED = 7,
    DICKE_NUMERICAL = 8,
    DICKE_INTERNAL = 9
} dicke_status;

typedef enum dicke_command {
    DICKE_CMD_ENTANGLEMENT = 0,
    DICKE_CMD_QFI = 1,
    DICKE_CMD_WIGNER = 2,
    DICKE_CMD_FI_HOMODYNE = 3,
    DICKE_CMD_PHOTON = 4,
    DICKE_CMD_FI_PHOTON = 5
} dicke_command;

typedef enum dicke_format { DICKE_FORMAT_CSV = 0, DICKE_FORMAT_JSON = 1 } dicke_format;

typedef enum dicke_target { DICKE_TARGET_RADIATION = 0, DICKE_TARGET_ATOMS = 1 } dicke_target;

typedef struct dicke_params {
    double omega;
    double omega0;
    double lambda;
    int n_atoms;
    /* Half-width of the excluded interval around the critical coupling; a
     * value <= 0 selects the library default. */
    double singularity_window;
} dicke_params;

typedef struct dicke_qfi_result {
    double qfi;
    double quadratic_term;
    double displacement_term;
} dicke_qfi_result;

typedef struct dicke_config dicke_config;
typedef struct dicke_table dicke_table;

DICKE_API const char* dicke_version(void);
DICKE_API const char* dicke_status_string(dicke_status status);
/* Message of the most recent failure on this thread, or "" if none. */
DICKE_API const char* dicke_last_error(void);
DICKE_API void dicke_string_free(char* s);

/* Fills p with omega = omega0 = 1, lambda = 0, n_atoms = 100 and the default window. */
DICKE_API void dicke_params_default(dicke_params* p);
DICKE_API dicke_status dicke_critical_coupling(const dicke_params* p, double* out);

/* Ground-state moments in the order (x1, p1, x2, p2): mean[4], cov[16] row-major. */
DICKE_API dicke_status dicke_ground_state(const dicke_params* p, double* mean, double* cov);
/* Ground state and derived model constants as a JSON document. */
DICKE_API dicke_status dicke_state_json(const dicke_params* p, char** out);
DICKE_API dicke_status dicke_log_negativity(const dicke_params* p, double* out);
DICKE_API dicke_status dicke_qfi(const dicke_params* p, dicke_qfi_result* out);
DICKE_API dicke_status dicke_fi_homodyne(const dicke_params* p, double phi, dicke_target target, double* out);
DICKE_API dicke_status dicke_fi_photon_counting(const dicke_params* p, double* fi, int* n_max);

/* Sweep configuration. */
DICKE_API dicke_status dicke_config_create(dicke_config** out);
DICKE_API void dicke_config_destroy(dicke_config* cfg);
/* Overlays the keys of a JSON object onto the configuration. */
DICKE_API dicke_status dicke_config_merge_json(dicke_config* cfg, const char* json);
/* Sets a scalar option by its JSON key, e.g. "omega", "points", "exclusion". */
DICKE_API dicke_status dicke_config_set_number(dicke_config* cfg, const char* key, double value);
/* Sets an enumerated option by its JSON key: "format", "target", "photon_table". */
DICKE_API dicke_status dicke_config_set_string(dicke_config* cfg, const char* key, const char* value);
DICKE_API dicke_status dicke_config_set_lambdas(dicke_config* cfg, const double* values, size_t n);
DICKE_API dicke_status dicke_config_set_phis(dicke_config* cfg, const double* values, size_t n);
DICKE_API dicke_status dicke_config_validate(const dicke_config* cfg);
DICKE_API dicke_status dicke_config_format(const dicke_config* cfg, dicke_format* out);

DICKE_API dicke_status dicke_parse_command(const char* name, dicke_command* out);

/* Runs a sweep. Per-row failures are recorded in the table, not returned. */
DICKE_API dicke_status dicke_run(const dicke_config* cfg, dicke_command cmd, dicke_table** out);
DICKE_API void dicke_table_destroy(dicke_table* t);
DICKE_API size_t dicke_table_rows(const dicke_table* t);
DICKE_API size_t dicke_table_columns(const dicke_table* t);
DICKE_API size_t dicke_table_failed_rows(const dicke_table* t);
DICKE_API dicke_status dicke_table_value(const dicke_table* t, size_t row, size_t col, double* out);
DICKE_API dicke_status dicke_table_render(const dicke_table* t, dicke_format format, char** out);

#ifdef __cplusplus
}
#endif

#endif /* DICKE_DICKE_H */
