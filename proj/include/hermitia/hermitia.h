#ifndef HERMITIA_H
#define HERMITIA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HM_API __declspec(dllexport)
#else
#define HM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct hm_session hm_session;

typedef enum {
    HM_OK = 0,
    HM_ERR_ARGUMENT = 1,      /* null pointer, malformed number */
    HM_ERR_PRECONDITION = 2,  /* norm delta, out of scope (d, s), bad d or k */
    HM_ERR_CONSISTENCY = 3,   /* two independent computations disagreed */
    HM_ERR_INTERNAL = 4
} hm_status;

HM_API hm_session* hm_session_new(void);
HM_API void hm_session_free(hm_session* s);

/* defaults: 128 bits, seed 0 */
HM_API hm_status hm_set_precision(hm_session* s, int bits);
HM_API hm_status hm_set_seed(hm_session* s, uint64_t seed);
HM_API int hm_precision(const hm_session* s);

/* owned by the session, valid until the next call on it */
HM_API const char* hm_last_error(const hm_session* s);
HM_API const char* hm_result_json(const hm_session* s);

/* big integers are passed as decimal strings, rationals as "p/q" */
HM_API hm_status hm_alpha(hm_session* s, int d, int k, const char* delta);
HM_API hm_status hm_theta(hm_session* s, int d, long delta, int sarg);
HM_API hm_status hm_rcount(hm_session* s, int d, long delta, long n);
/* delta <= 0 picks the smallest non-norm */
HM_API hm_status hm_lvalue(hm_session* s, int d, int sarg, long delta);
HM_API hm_status hm_bench(hm_session* s, int d, int sarg, const long* deltas, size_t count, int repeats);
/* in-scope failures set the report and return HM_ERR_CONSISTENCY */
HM_API hm_status hm_hconst(hm_session* s, int d, int k, long delta, int trials);
HM_API hm_status hm_average(hm_session* s, int d, int k, long delta, int grid, long a_max);
HM_API hm_status hm_cfrac(hm_session* s, int d, const char* re, const char* im, int steps, int float_path);
HM_API hm_status hm_dims(hm_session* s, int d, int kmin, int kmax, int odd_only);
HM_API hm_status hm_basis(hm_session* s, int d, int k);
HM_API hm_status hm_expandp(hm_session* s, int d, int k, const char* delta);
HM_API hm_status hm_selftest(hm_session* s);
HM_API hm_status hm_is_norm(hm_session* s, int d, const char* delta, int* out);

#ifdef __cplusplus
}
#endif

#endif
