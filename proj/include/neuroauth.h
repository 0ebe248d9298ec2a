/*
 * neuroauth C API
 *
 * Shared-library surface over the neural-network password authentication
 * engine. Passwords are enrolled by training a small feedforward network to
 * map their 7-bit binary encoding to 0.5; verification recomputes the
 * activations with the stored weights and compares them against the stored
 * mapped values. Profiles add a four-layer access guard (trail, length,
 * time, network), an append-only intrusion log, a three-password reset
 * protocol, and a two-factor split of the trained weights.
 *
 * Conventions:
 *   - every fallible call returns na_status; NA_OK is 0
 *   - na_last_error_message() describes the most recent failure on the
 *     calling thread
 *   - na_profile is an opaque handle; release it with na_profile_close
 *   - state-changing profile calls (access, reset, export) commit the
 *     profile file before returning
 */

#ifndef NEUROAUTH_H
#define NEUROAUTH_H

#include <stddef.h>
#include <stdint.h>

#ifndef NA_API
#  if defined(_WIN32)
#    define NA_API __declspec(dllexport)
#  elif defined(__GNUC__)
#    define NA_API __attribute__((visibility("default")))
#  else
#    define NA_API
#  endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum na_status {
    NA_OK = 0,
    NA_ERR_EMPTY_PASSWORD = 1,
    NA_ERR_UNSUPPORTED_CHARACTER = 2,
    NA_ERR_INVALID_INPUT_COUNT = 3,
    NA_ERR_DIMENSION_MISMATCH = 4,
    NA_ERR_NO_CONVERGENCE = 5,
    NA_ERR_IO = 6,
    NA_ERR_SERIALIZATION_OVERFLOW = 7,
    NA_ERR_CHECKSUM_MISMATCH = 8,
    NA_ERR_VERSION_UNSUPPORTED = 9,
    NA_ERR_MALFORMED_FIELD = 10,
    NA_ERR_MALFORMED_LOG_LINE = 11,
    NA_ERR_RESET_DENIED = 12,
    NA_ERR_MISSING_TOKEN = 13,
    NA_ERR_INVALID_ARGUMENT = 14,
    NA_ERR_INTERNAL = 99
} na_status;

/* Guard layers in evaluation order; NA_LAYER_NONE means "no layer failed". */
typedef enum na_layer {
    NA_LAYER_NONE = 0,
    NA_LAYER_TRAIL = 1,
    NA_LAYER_LENGTH = 2,
    NA_LAYER_TIME = 3,
    NA_LAYER_ANN = 4
} na_layer;

typedef struct na_profile na_profile;

typedef struct na_timed_password {
    const char* password;  /* NUL-terminated */
    uint64_t insertion_ms; /* wall-clock time the entry took */
} na_timed_password;

typedef struct na_enroll_options {
    double eta;               /* learning rate, default 0.5 */
    double epsilon;           /* stop threshold on |0.5 - output|, default 1e-5 */
    double lambda;            /* sigmoid steepness, default 0.2 */
    uint64_t max_epochs;      /* default 100000 */
    uint64_t seed;            /* per-template seeds derive from this */
    uint32_t max_trials;      /* failed attempts before lockout, default 3 */
    uint64_t time_min_ms;     /* accepted entry-time window, default [50, 30000] */
    uint64_t time_max_ms;
    int time_layer_enabled;   /* nonzero = enforce the window, default 1 */
} na_enroll_options;

/* Fills every field with its default. */
NA_API void na_enroll_options_init(na_enroll_options* options);

typedef struct na_decision {
    int granted;              /* nonzero = access granted */
    na_layer failed_layer;    /* NA_LAYER_NONE when granted */
    int intruder_declared;    /* nonzero only on the transition into locked */
    int locked;               /* profile lock state after the attempt */
    uint32_t failed_count;    /* consecutive failures after the attempt */
    uint32_t ann_invocations; /* layer-4 verifications run for this attempt */
} na_decision;

typedef struct na_resource_info {
    char role[16];            /* "provider", "user" or "reset" */
    uint32_t input_count;
    uint32_t hidden_count;
    int has_hidden_weights;   /* zero once the token part has been exported */
} na_resource_info;

/*
 * Enrolls one or two resource passwords plus the reset password, trains one
 * network per password, and writes the profile to profile_path. log_path
 * NULL derives "<profile_path>.log". options NULL means all defaults.
 * On success *out owns the open profile.
 */
NA_API na_status na_profile_create(const char* profile_path, const char* log_path,
                                   const char* const* resource_passwords,
                                   size_t resource_count, const char* reset_password,
                                   const na_enroll_options* options, na_profile** out);

NA_API na_status na_profile_open(const char* profile_path, na_profile** out);

/* Writes the profile to a new path (atomic temp-and-rename). */
NA_API na_status na_profile_save(na_profile* profile, const char* path);

NA_API void na_profile_close(na_profile* profile);

/*
 * Resource-mode access attempt: one candidate per enrolled resource password,
 * in enrollment order. Evaluates the four guard layers, appends intrusion
 * records for failures, commits the updated guard state, and reports the
 * decision. A locked profile may be called with candidate_count 0; the
 * attempt is then denied at the trail layer without consuming passwords.
 * Denial is reported through *decision, not as an error status.
 */
NA_API na_status na_profile_access(na_profile* profile, const na_timed_password* candidates,
                                   size_t candidate_count, na_decision* decision);

/*
 * Two-factor access: the layer-4 check reconstitutes the network from the
 * server part and token files instead of a stored template.
 */
NA_API na_status na_profile_access_two_factor(na_profile* profile, const char* server_path,
                                              const char* token_path,
                                              const na_timed_password* candidate,
                                              na_decision* decision);

/*
 * Reset protocol: every currently enrolled password (resources in order, then
 * the reset password) must verify; lockout does not block this path. On
 * success every template is retrained with seeds derived from new_seed --
 * with replacement passwords when given (same shape as current), otherwise
 * with the same passwords -- the guard state is cleared, and the profile is
 * committed. Any wrong password yields NA_ERR_RESET_DENIED and no change.
 */
NA_API na_status na_profile_reset(na_profile* profile, const char* const* current_passwords,
                                  size_t current_count, const char* const* new_passwords,
                                  size_t new_count, uint64_t new_seed);

/*
 * Returns the intrusion log as text, one record per line, after the same
 * credential check as the reset protocol. Free *out_text with na_string_free.
 */
NA_API na_status na_profile_read_log(na_profile* profile, const char* const* current_passwords,
                                     size_t current_count, char** out_text);

/*
 * Splits the template enrolled under role ("provider", "user" or "reset")
 * into a token file (hidden-layer weights) and a server file (output-layer
 * weights plus mapped values), removes the hidden weights from the stored
 * profile, and commits it. Afterwards that password verifies only through
 * na_profile_access_two_factor.
 */
NA_API na_status na_profile_export_token(na_profile* profile, const char* role,
                                         const char* token_path, const char* server_path);

/* Profile introspection. Indexes 0..resource_count-1 address the resource
 * templates in enrollment order; index == resource_count addresses the reset
 * template. */
NA_API int na_profile_is_locked(const na_profile* profile);
NA_API uint32_t na_profile_failed_count(const na_profile* profile);
NA_API size_t na_profile_resource_count(const na_profile* profile);
NA_API na_status na_profile_resource_info(const na_profile* profile, size_t index,
                                          na_resource_info* out);

/* Reruns the two reference experiments, writing CSVs into out_dir. */
NA_API na_status na_replicate_experiments(const char* out_dir);

NA_API const char* na_status_name(na_status status);

/* Message for the most recent failure on this thread; never NULL. */
NA_API const char* na_last_error_message(void);

NA_API void na_string_free(char* text);

NA_API const char* na_version_string(void);

#ifdef __cplusplus
}
#endif

#endif /* NEUROAUTH_H */
