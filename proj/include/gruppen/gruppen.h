/* C interface to the gruppen multiple-secret-sharing library.
 *
 * All objects are opaque handles released with their *_destroy function.
 * Functions return a gruppen_status; on failure gruppen_last_error() holds a
 * message for the calling thread. Strings returned through char** outputs
 * are heap-allocated and must be released with gruppen_string_free().
 */
#ifndef GRUPPEN_GRUPPEN_H
#define GRUPPEN_GRUPPEN_H

#include <stddef.h>
#include <stdint.h>

#if defined(GRUPPEN_BUILDING)
#define GRUPPEN_API __attribute__((visibility("default")))
#else
#define GRUPPEN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gruppen_status {
  GRUPPEN_OK = 0,
  GRUPPEN_CHECK_FAILED = 1, /* an analysis ran and its verdict is negative */
  GRUPPEN_ERR_USAGE = 2,
  GRUPPEN_ERR_REFUSED = 3,
  GRUPPEN_ERR_IO = 4,
  GRUPPEN_ERR_INTERNAL = 5
} gruppen_status;

typedef struct gruppen_params gruppen_params;
typedef struct gruppen_dealing gruppen_dealing;
typedef struct gruppen_bundle gruppen_bundle;
typedef struct gruppen_transcript gruppen_transcript;

GRUPPEN_API const char* gruppen_last_error(void);
GRUPPEN_API const char* gruppen_status_name(gruppen_status status);
GRUPPEN_API void gruppen_string_free(char* s);

/* field: "p=<prime>" or "gf2=<s>[:<poly hex>]".
 * layout: "participant-major", "secrets-first" or "compact"; NULL = participant-major.
 * The compact layout also accepts fields with only k(n-k+1) elements; such
 * parameters serve exhaustive analysis and cannot be dealt with. */
GRUPPEN_API gruppen_status gruppen_params_create(unsigned n, unsigned k, const char* field, const char* layout,
                                                 gruppen_params** out);
GRUPPEN_API void gruppen_params_destroy(gruppen_params* params);
GRUPPEN_API unsigned gruppen_params_share_size(const gruppen_params* params);
GRUPPEN_API unsigned gruppen_params_degree_bound(const gruppen_params* params);

/* Dealer-based sharing. secrets_hex may be NULL (random secrets) or hold n entries. */
GRUPPEN_API gruppen_status gruppen_deal(const gruppen_params* params, uint64_t seed, const char* const* secrets_hex,
                                        size_t secret_count, gruppen_dealing** out);
/* Dealerless setup over the simulated network. secrets_hex holds n entries, one per
 * participant; transcript may be NULL. */
GRUPPEN_API gruppen_status gruppen_setup(const gruppen_params* params, uint64_t seed, const char* const* secrets_hex,
                                         size_t secret_count, gruppen_dealing** out,
                                         gruppen_transcript** transcript);
GRUPPEN_API void gruppen_dealing_destroy(gruppen_dealing* dealing);
GRUPPEN_API gruppen_status gruppen_dealing_summary(const gruppen_dealing* dealing, char** out);
GRUPPEN_API gruppen_status gruppen_dealing_bundle(const gruppen_dealing* dealing, unsigned participant,
                                                  gruppen_bundle** out);
/* Writes bundle_<i>.txt for every participant into dir (created if missing). */
GRUPPEN_API gruppen_status gruppen_dealing_write(const gruppen_dealing* dealing, const char* dir);

GRUPPEN_API gruppen_status gruppen_bundle_read(const char* path, gruppen_bundle** out);
GRUPPEN_API gruppen_status gruppen_bundle_parse(const char* text, gruppen_bundle** out);
GRUPPEN_API gruppen_status gruppen_bundle_format(const gruppen_bundle* bundle, char** out);
GRUPPEN_API void gruppen_bundle_destroy(gruppen_bundle* bundle);
GRUPPEN_API unsigned gruppen_bundle_participant(const gruppen_bundle* bundle);
GRUPPEN_API size_t gruppen_bundle_share_size(const gruppen_bundle* bundle);
/* Parameters and layout recorded in the bundle header. */
GRUPPEN_API gruppen_status gruppen_bundle_params(const gruppen_bundle* bundle, gruppen_params** out);
/* GRUPPEN_ERR_USAGE when the bundle carries no secret. */
GRUPPEN_API gruppen_status gruppen_bundle_secret_hex(const gruppen_bundle* bundle, char** out);
GRUPPEN_API gruppen_status gruppen_bundle_share_hex(const gruppen_bundle* bundle, size_t index, char** out);

/* Reconstructs every secret from at least k bundles; report lists them in participant order. */
GRUPPEN_API gruppen_status gruppen_reconstruct(const gruppen_bundle* const* bundles, size_t count, char** report);

/* mode: "naive", "masked" or "full-state". gate_path (may be NULL) names a
 * gate-state file that is read if present and rewritten on success; naive
 * recoveries it rejects return GRUPPEN_ERR_REFUSED. */
GRUPPEN_API gruppen_status gruppen_recover(const gruppen_bundle* const* bundles, size_t count, unsigned requester,
                                           const unsigned* quorum, size_t quorum_size, const char* mode,
                                           uint64_t seed, const char* gate_path, char** report,
                                           gruppen_transcript** transcript);

/* A transcript with no sessions: the view of a freshly dealt scheme. */
GRUPPEN_API gruppen_status gruppen_transcript_create(const gruppen_params* params, gruppen_transcript** out);
GRUPPEN_API gruppen_status gruppen_transcript_read(const char* path, gruppen_transcript** out);
GRUPPEN_API gruppen_status gruppen_transcript_write(const gruppen_transcript* transcript, const char* path);
GRUPPEN_API gruppen_status gruppen_transcript_format(const gruppen_transcript* transcript, char** out);
GRUPPEN_API void gruppen_transcript_destroy(gruppen_transcript* transcript);

/* Rank analysis of a coalition's view of a transcript. */
GRUPPEN_API gruppen_status gruppen_analyze_transcript(const gruppen_transcript* transcript, const unsigned* coalition,
                                                      size_t coalition_size, const unsigned* granted,
                                                      size_t granted_size, char** report, unsigned* codimension);
/* Exhaustive check of a scheme. scheme: "gruppen" or "xor-sabotage";
 * check: "entropy" or "perfectness". Returns GRUPPEN_CHECK_FAILED (with the
 * report filled in) when the verdict is negative. */
GRUPPEN_API gruppen_status gruppen_analyze_scheme(const gruppen_params* params, const char* scheme,
                                                  const char* check, char** report);

/* Naive-recovery leak walkthrough on n=3, k=2. Returns GRUPPEN_CHECK_FAILED
 * if the extracted value disagrees with the expected combination. */
GRUPPEN_API gruppen_status gruppen_demo_leak(const char* field, uint64_t seed, char** report);

#ifdef __cplusplus
}
#endif

#endif
