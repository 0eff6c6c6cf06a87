/* ndsap.h -- C interface to the networked-DES sensor-activation library.
 *
 * All objects are opaque handles created and destroyed by this API. Calls
 * return NDSAP_OK on success; on failure they return a status code and leave
 * a message retrievable with ndsap_last_error(). Strings returned through
 * out-parameters are heap-allocated and must be released with
 * ndsap_string_free(). Out-parameters stay untouched on failure, with one
 * exception: check-style calls also produce their report/witness strings on
 * NDSAP_ERR_CHECK_FAILED. Handles are immutable after creation and safe to
 * share between threads; the error message is thread-local.
 */

#ifndef NDSAP_H_
#define NDSAP_H_

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ndsap_status {
    NDSAP_OK = 0,
    NDSAP_ERR_CHECK_FAILED = 1,  /* feasibility/spec/diagnosability violated */
    NDSAP_ERR_USAGE = 2,
    NDSAP_ERR_UNSAT = 3,     /* spec unsatisfiable even under full activation */
    NDSAP_ERR_STATE_CAP = 4, /* state cap exceeded during construction */
    NDSAP_ERR_PARSE = 5,
    NDSAP_ERR_INVALID_MODEL = 6,
    NDSAP_ERR_IO = 7,
    NDSAP_ERR_INTERNAL = 8
} ndsap_status;

typedef struct ndsap_plant ndsap_plant;
/* A communication context: the communication automaton and its refinement
 * for one (plant, delay bounds) pair. */
typedef struct ndsap_comm ndsap_comm;

const char* ndsap_version(void);
const char* ndsap_last_error(void);
void ndsap_string_free(char* s);

/* ---- models ---- */

ndsap_status ndsap_plant_parse(const char* json, ndsap_plant** out);
ndsap_status ndsap_plant_load(const char* path, ndsap_plant** out);
void ndsap_plant_free(ndsap_plant* plant);
ndsap_status ndsap_plant_to_json(const ndsap_plant* plant, char** out_json);
ndsap_status ndsap_plant_to_dot(const ndsap_plant* plant, char** out_dot);

/* ---- communication automaton ---- */

ndsap_status ndsap_comm_build(const ndsap_plant* plant, unsigned n_o, unsigned n_c,
                              size_t state_cap /* 0 = default */, ndsap_comm** out);
void ndsap_comm_free(ndsap_comm* comm);
ndsap_status ndsap_comm_states(const ndsap_comm* comm, size_t* comm_states, size_t* w_states);
ndsap_status ndsap_comm_to_json(const ndsap_comm* comm, char** out_json);
/* which: 0 = communication automaton, 1 = refined automaton W. */
ndsap_status ndsap_comm_to_dot(const ndsap_comm* comm, int which, char** out_dot);

/* ---- feasibility and synthesis ---- */

/* NDSAP_OK when feasible, NDSAP_ERR_CHECK_FAILED when not; the report JSON
 * is produced either way. */
ndsap_status ndsap_check_feasibility(const ndsap_comm* comm, const char* policy_json,
                                     char** report_json);

/* Maximal delay-feasible subpolicy and its confusable plant pairs. */
ndsap_status ndsap_max_subpolicy(const ndsap_comm* comm, const char* policy_json,
                                 char** policy_out, char** pairs_out);

/* Greedy minimization against a pair specification. `order` is "desc",
 * "asc", or a JSON array of ["state","event"] picks tried first.
 * pairs_out may be NULL; trace_out may be NULL. */
ndsap_status ndsap_synthesize(const ndsap_comm* comm, const char* spec_pairs_json,
                              const char* order, char** policy_out, char** trace_out);

/* ---- delay K-diagnosability ---- */

/* faults: JSON array [{"name":"f","events":["f"]}] */
ndsap_status ndsap_diag_refine(const ndsap_plant* plant, const char* faults_json, unsigned k,
                               int add_liveness_loops, ndsap_plant** refined_out);
ndsap_status ndsap_diag_spec(const ndsap_plant* plant, const char* faults_json, unsigned k,
                             int add_liveness_loops, char** pairs_out);
/* Lifts a base-state policy onto the refined plant produced by the same
 * fault specification. */
ndsap_status ndsap_diag_lift_policy(const ndsap_plant* plant, const char* faults_json,
                                    unsigned k, int add_liveness_loops,
                                    const char* base_policy_json, char** refined_policy_out);
/* NDSAP_OK when delay K-diagnosable, NDSAP_ERR_CHECK_FAILED with witness
 * pairs otherwise. `policy_is_refined` selects whether the policy addresses
 * refined states directly or base states (lifted internally). */
ndsap_status ndsap_diag_check(const ndsap_plant* plant, const char* faults_json, unsigned k,
                              unsigned n_o, unsigned n_c, const char* policy_json,
                              int policy_is_refined, int add_liveness_loops, size_t state_cap,
                              char** witnesses_out);

/* ---- decentralized ---- */

/* agents: JSON array [{"id":1,"observable":["a"],"no":1,"nc":2}]
 * joint spec: JSON array of (n+1)-tuples of state names. */
ndsap_status ndsap_synthesize_dec(const ndsap_plant* plant, const char* agents_json,
                                  const char* joint_spec_json, int randomize,
                                  unsigned long long seed, size_t state_cap,
                                  char** policies_out);
/* engine: 0 = product verifier, 1 = bounded brute force at `horizon`. */
ndsap_status ndsap_joint_check(const ndsap_plant* plant, const char* agents_json,
                               const char* policies_json, const char* joint_spec_json,
                               int engine, unsigned horizon, size_t state_cap,
                               char** witnesses_out);

/* ---- simulation ---- */

ndsap_status ndsap_simulate(const ndsap_comm* comm, const char* policy_json, unsigned runs,
                            unsigned long long seed, unsigned max_len, char** summary_json,
                            char** trace_log_out /* NULL to skip per-run logs */);

#ifdef __cplusplus
}
#endif

#endif /* NDSAP_H_ */
