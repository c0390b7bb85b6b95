#ifndef CDKERNEL_H
#define CDKERNEL_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes mirror the library's error taxonomy. On any nonzero status,
 * cdk_last_error() returns a thread-local description of what went wrong. */
typedef enum {
  CDK_OK = 0,
  CDK_ERR_ARGUMENT = 1,
  CDK_ERR_DOMAIN = 2,
  CDK_ERR_BRANCH = 3,
  CDK_ERR_SINGULAR = 4,
  CDK_ERR_UNSUPPORTED_ORDER = 5,
  CDK_ERR_SYMMETRY = 6,
  CDK_ERR_STEP = 7,
  CDK_ERR_PARSE = 8,
  CDK_ERR_INTERNAL = 9
} cdk_status;

/* Opaque handle for a powered kernel: a domain ("disc", "polydisc:n",
 * "ball:n", "matrix-ball:rxs", "omega2", "omega2:normalized", "omega3"),
 * the power lambda > 0, and a series truncation (omega3 only; pass 0 for
 * the default). */
typedef struct cdk_kernel cdk_kernel;

cdk_status cdk_kernel_create(const char* domain, double lambda, int truncation,
                             cdk_kernel** out);
void cdk_kernel_destroy(cdk_kernel* k);

/* Thread-local message for the most recent failure in this thread. */
const char* cdk_last_error(void);

/* All JSON results are heap strings owned by the caller. */
void cdk_string_free(char* s);

/* Points are comma-separated complex literals: "0.1+0.2i,0.3". */
cdk_status cdk_eval(const cdk_kernel* k, const char* point_z,
                    const char* point_w, char** json_out);
cdk_status cdk_jet_gram(const cdk_kernel* k, const char* point, int order,
                        char** json_out);
cdk_status cdk_curvature(const cdk_kernel* k, const char* point,
                         char** json_out);
cdk_status cdk_local_tuple(const cdk_kernel* k, const char* point,
                           char** json_out);
cdk_status cdk_wallach(const cdk_kernel* k, const char* point, int max_order,
                       char** json_out);

/* Test names: omega2-contract, omega2-cc, omega3-contract, omega3-cc,
 * ball:N, nu:RxS, nu-cc:RxS. */
cdk_status cdk_contract_test(const char* test_name, double lambda,
                             char** json_out);

/* values: comma-separated complex literals, r*s of them, row-major. */
cdk_status cdk_pa_norm(const char* values, double lambda, int r, int s,
                       char** json_out);

/* Disc Möbius transformation-rule residual; a, z, w single complex literals. */
cdk_status cdk_check_transform(const char* a, const char* z, const char* w,
                               char** json_out);

/* entries: r*s comma-separated complex literals, row-major. */
cdk_status cdk_det_expansion(int r, int s, const char* entries,
                             char** json_out);

/* Full conformance suite. all_ok is set to 1 when no criterion hard-fails. */
cdk_status cdk_verify_all(uint64_t seed, char** json_out, int* all_ok);

#ifdef __cplusplus
}
#endif

#endif /* CDKERNEL_H */
