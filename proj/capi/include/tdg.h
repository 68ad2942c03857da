#ifndef TDG_H
#define TDG_H

/* C interface to the transversal-digraph toolkit. All functions return a
 * tdg_status; rich results come back as JSON documents behind an opaque
 * tdg_result handle. Rational parameters (eps, delta, ...) are passed as
 * decimal or fraction strings ("0.125", "1/8") and compared exactly inside.
 * On any non-OK status, tdg_last_error() carries a message (thread-local,
 * valid until the next failing call on the same thread). */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tdg_status {
    TDG_OK = 0,
    TDG_ERR_INVALID = 2,  /* malformed input, bad arguments, shape errors */
    TDG_ERR_BUDGET = 3,   /* refused above budget */
    TDG_ERR_INTERNAL = 4  /* internal invariant violation */
} tdg_status;

typedef struct tdg_collection tdg_collection; /* digraph or bipartite instance */
typedef struct tdg_result tdg_result;         /* JSON document */

/* Scalar color arguments are 0-based; colors inside JSON documents
 * (certificates, witnesses, payloads) use the 1-based external form. */

const char* tdg_version(void);
const char* tdg_last_error(void);

/* -------- results -------- */
const char* tdg_result_json(const tdg_result* r);
void tdg_result_free(tdg_result* r);

/* -------- instances -------- */
tdg_status tdg_collection_from_json(const char* json_text, tdg_collection** out);
tdg_status tdg_collection_to_json(const tdg_collection* c, tdg_result** out);
void tdg_collection_free(tdg_collection* c);
int tdg_collection_order(const tdg_collection* c);
int tdg_collection_colors(const tdg_collection* c);
int tdg_collection_is_bipartite(const tdg_collection* c);
tdg_status tdg_collection_semi_degree(const tdg_collection* c, int* out);

/* -------- generators -------- */
tdg_status tdg_gen_random(int n, int m, double p, int min_semidegree /* <0: none */,
                          uint64_t seed, tdg_collection** out);
tdg_status tdg_gen_bradshaw(int n, int m, double p, uint64_t seed, tdg_collection** out);
tdg_status tdg_gen_tight_witness(int n, tdg_collection** out);
/* kind in {"EC1","EC2","EC3"}; zeta is required for EC3, pass NULL otherwise;
 * the planted partition lands in the instance meta. */
tdg_status tdg_gen_extremal(const char* kind, int n, const char* eps, const char* zeta,
                            const char* defect, uint64_t seed, tdg_collection** out);

/* -------- solvers and oracle --------
 * problem in {"thc","thp","tpm","cover","maxrm"}; config_json is optional:
 * {"time_budget_ms":N,"node_budget":N,"parallel":B,"seed":N,"symmetry_break":B} */
tdg_status tdg_solve(const tdg_collection* c, const char* problem, const char* config_json,
                     tdg_result** out);
tdg_status tdg_oracle_thc(const tdg_collection* c, int bound, tdg_result** out);
tdg_status tdg_validate_certificate(const tdg_collection* c, const char* certificate_json,
                                    tdg_result** out);

/* -------- extremal structures and stability -------- */
tdg_status tdg_is_eps_nice(const tdg_collection* c, int color, const char* eps, const char* mode,
                           uint64_t seed, tdg_result** out);
tdg_status tdg_classify_extremal(const tdg_collection* c, int color, const char* eps,
                                 const char* zeta_grid_csv, uint64_t seed, tdg_result** out);
/* records_json: optional JSON array, one partition object or null per color;
 * when NULL, records are derived with the classifier and echoed back. */
tdg_status tdg_classify_stability(const tdg_collection* c, const char* gamma, const char* alpha,
                                  const char* eps, const char* delta, const char* records_json,
                                  uint64_t seed, tdg_result** out);
/* Collection-level niceness of a bipartite instance: every floor(n/2)-sized
 * left/right pair must span at least mu * n^3 edges across all colors. */
tdg_status tdg_collection_mu_nice(const tdg_collection* c, const char* mu, const char* mode,
                                  uint64_t seed, tdg_result** out);

/* -------- absorption --------
 * kind in {"type-I","type-II"}; cycle/witness/payload are JSON documents.
 * payload_json: {"vertices":[...],"colors":[...]} with 1-based colors. */
tdg_status tdg_enumerate_absorbers(const tdg_collection* c, const char* cycle_json, int color,
                                   int v, int u, const char* kind, tdg_result** out);
tdg_status tdg_absorb(const tdg_collection* c, const char* cycle_json, const char* witness_json,
                      const char* payload_json, tdg_result** out);
/* params_csv: "delta,delta_prime,gamma,gamma_prime" as ratio strings. */
tdg_status tdg_verify_absorbing_cycle(const tdg_collection* c, const char* cycle_json,
                                      const char* colors_csv, const char* params_csv,
                                      const char* kind, tdg_result** out);

/* -------- regularity tools -------- */
tdg_status tdg_slice_density(const tdg_collection* c, const char* v1_csv, const char* v2_csv,
                             const char* colors_csv, tdg_result** out);
tdg_status tdg_check_regular_slice(const tdg_collection* c, const char* v1_csv,
                                   const char* v2_csv, const char* colors_csv, const char* eps,
                                   const char* d, const char* mode, uint64_t seed,
                                   tdg_result** out);
/* vparts/cparts: JSON arrays of arrays; index 0 is the exceptional set. */
tdg_status tdg_build_reduced(const tdg_collection* c, const char* vparts_json,
                             const char* cparts_json, const char* eps, const char* d,
                             const char* mode, uint64_t seed, tdg_result** out);
tdg_status tdg_aux4_stats(const tdg_collection* c, tdg_result** out);

/* -------- campaigns --------
 * config_json: {"n_min":N,"n_max":N,"trials":N,"seed":N,"workers":N,
 *               "time_budget_ms":N,"node_budget":N,"oracle_bound":N,
 *               "artifact_dir":"path"} */
tdg_status tdg_sweep_threshold(const char* config_json, tdg_result** out);
tdg_status tdg_sweep_bradshaw(const char* config_json, tdg_result** out);
tdg_status tdg_oracle_corpus(uint64_t seed, int random_trials, int workers, tdg_result** out);

#ifdef __cplusplus
}
#endif

#endif /* TDG_H */
