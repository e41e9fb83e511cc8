/* C interface to the monosob library.
 *
 * Every fallible function returns a monosob_status; on failure the message
 * is available from monosob_last_error() (thread-local, valid until the
 * next failing call on the same thread). Handles are opaque and owned by
 * the caller; strings returned through char** are released with
 * monosob_string_free(). A NULL options pointer selects the defaults.
 */
#ifndef MONOSOB_MONOSOB_H
#define MONOSOB_MONOSOB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MONOSOB_API __declspec(dllexport)
#else
#define MONOSOB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum monosob_status {
    MONOSOB_OK = 0,
    MONOSOB_ERR_INPUT = 1,
    MONOSOB_ERR_DOMAIN = 2,
    MONOSOB_ERR_NUMERICAL = 3,
    MONOSOB_ERR_INTERNAL = 4
} monosob_status;

enum { MONOSOB_CONSTANTS_CORRECTED = 0, MONOSOB_CONSTANTS_PRINTED = 1 };
enum { MONOSOB_TRACE_LITERAL = 0, MONOSOB_TRACE_CORRECTED = 1 };
enum { MONOSOB_REPORT_PASS = 0, MONOSOB_REPORT_FAIL = 1, MONOSOB_REPORT_INCONCLUSIVE = 2 };

typedef struct monosob_tuple monosob_tuple;
typedef struct monosob_profile monosob_profile;
typedef struct monosob_psi monosob_psi;
typedef struct monosob_report monosob_report;
typedef struct monosob_report_list monosob_report_list;
typedef struct monosob_campaign monosob_campaign;

typedef struct monosob_options {
    int constant_form;      /* MONOSOB_CONSTANTS_* */
    int trace_variant;      /* MONOSOB_TRACE_* */
    double slack;           /* pass iff ratio <= 1 + slack */
    double quad_rel_tol;
    int quad_max_panels;
    double min_truncation_radius; /* decaying profiles integrated at least this far */
} monosob_options;

typedef struct monosob_trace_bounds {
    double m;
    double q_factor;
    double w_lower;
    double w_upper;
    int q_at_least_p;
} monosob_trace_bounds;

typedef struct monosob_norm_result {
    double value;
    int panels;
    double achieved_rel_error;
    double truncation_radius;
} monosob_norm_result;

typedef struct monosob_supremum {
    double value; /* +inf when infinite != 0 */
    double argmax;
    int infinite;
    int at_boundary;
    int evaluations;
} monosob_supremum;

typedef struct monosob_morrey {
    double value;
    int inconclusive;
    double gradient_norm;
    double fundamental;
} monosob_morrey;

typedef struct monosob_scaling_fit {
    double slope_lhs;
    double slope_rhs;
    double expected_lhs;
    double expected_rhs;
    int balanced;
    int failed_points;
} monosob_scaling_fit;

MONOSOB_API void monosob_options_init(monosob_options* options);
MONOSOB_API const char* monosob_last_error(void);
MONOSOB_API const char* monosob_version(void);
MONOSOB_API void monosob_string_free(char* s);

/* Exponent tuples and exponent algebra. */
MONOSOB_API monosob_status monosob_tuple_create(const double* entries, size_t m, monosob_tuple** out);
MONOSOB_API monosob_status monosob_tuple_parse(const char* text, monosob_tuple** out);
MONOSOB_API void monosob_tuple_destroy(monosob_tuple* t);
/* JSON array of the entries, 17 significant digits. */
MONOSOB_API monosob_status monosob_tuple_json(const monosob_tuple* t, char** out);
MONOSOB_API size_t monosob_tuple_dimension(const monosob_tuple* t);
MONOSOB_API size_t monosob_tuple_positive_count(const monosob_tuple* t);
MONOSOB_API monosob_status monosob_effective_dimension(const monosob_tuple* a, double* out);
MONOSOB_API monosob_status monosob_monomial_weight(const monosob_tuple* a, const double* x, size_t m, double* out);
MONOSOB_API monosob_status monosob_sobolev_exponent(const monosob_tuple* a, const monosob_tuple* b, double p,
                                                    double* out);
MONOSOB_API monosob_status monosob_sobolev_p_of_q(double dim, double q, double* out);
MONOSOB_API monosob_status monosob_trace_exponent(const monosob_tuple* a, const monosob_tuple* b, double p,
                                                  double* out);
/* JSON {"A":..,"B":..,"p":..,"q":..,"valid":..}; q <= 0 selects the scaling q. */
MONOSOB_API monosob_status monosob_sobolev_four_json(const monosob_tuple* a, const monosob_tuple* b, double p,
                                                     double q, char** out);

/* Constants. */
MONOSOB_API monosob_status monosob_gamma(double x, double* out);
MONOSOB_API monosob_status monosob_log_gamma(double x, double* out);
MONOSOB_API monosob_status monosob_talenti(int m, double p, double* out);
MONOSOB_API monosob_status monosob_c1(const monosob_tuple* a, int form, double* out);
MONOSOB_API monosob_status monosob_c1_relaxed(const monosob_tuple* a, int form, double* out);
MONOSOB_API monosob_status monosob_c(const monosob_tuple* a, double p, int form, double* out);
MONOSOB_API monosob_status monosob_trace_bounds_eval(const monosob_tuple* a, const monosob_tuple* b, double p,
                                                     double q, int variant, monosob_trace_bounds* out);
MONOSOB_API monosob_status monosob_angular_mass(const monosob_tuple* a, double* out);

/* Radial profiles, e.g. "bump:1", "gaussian:0.5", "extremal:5,2". */
MONOSOB_API monosob_status monosob_profile_parse(const char* spec, monosob_profile** out);
MONOSOB_API monosob_status monosob_profile_dilate(const monosob_profile* u, double lambda, monosob_profile** out);
MONOSOB_API monosob_status monosob_profile_scale(const monosob_profile* u, double c, monosob_profile** out);
MONOSOB_API monosob_status monosob_profile_eval(const monosob_profile* u, double rho, double* value,
                                                double* derivative);
MONOSOB_API const char* monosob_profile_name(const monosob_profile* u);
MONOSOB_API void monosob_profile_destroy(monosob_profile* u);
/* Samples `count` profiles of a family into out[0..count); box holds
 * 2*box_dim bounds (lo, hi pairs) or is NULL for the default box. */
MONOSOB_API monosob_status monosob_family_sample(const char* name, const double* box, size_t box_dim,
                                                 size_t count, uint64_t seed, monosob_profile** out);

MONOSOB_API monosob_status monosob_lp_norm(const monosob_profile* u, const monosob_tuple* a, double p,
                                           const monosob_options* options, monosob_norm_result* out);
MONOSOB_API monosob_status monosob_gradient_norm(const monosob_profile* u, const monosob_tuple* a, double p,
                                                 const monosob_options* options, monosob_norm_result* out);

/* Generating functions of Grand Lebesgue Spaces. */
MONOSOB_API monosob_status monosob_psi_parse(const char* json, monosob_psi** out);
MONOSOB_API monosob_status monosob_psi_eval(const monosob_psi* psi, double p, double* out);
MONOSOB_API void monosob_psi_support(const monosob_psi* psi, double* a, double* b);
MONOSOB_API void monosob_psi_destroy(monosob_psi* psi);
MONOSOB_API monosob_status monosob_zeta_transform(const monosob_psi* psi, const monosob_tuple* a, int form,
                                                  monosob_psi** out);
MONOSOB_API monosob_status monosob_psi_d_transform(const monosob_psi* psi, double dim, double c2,
                                                   monosob_psi** out);

/* gradient != 0 takes the norm of |u'| instead of |u|. */
MONOSOB_API monosob_status monosob_gls_norm(const monosob_profile* u, const monosob_psi* psi,
                                            const monosob_tuple* a, int gradient, const monosob_options* options,
                                            monosob_supremum* out);
MONOSOB_API monosob_status monosob_fundamental(const monosob_psi* psi, double delta, monosob_supremum* out);
MONOSOB_API monosob_status monosob_morrey_bound(const monosob_profile* u, const monosob_psi* psi,
                                                const monosob_tuple* a, double c2, double delta,
                                                const monosob_options* options, monosob_morrey* out);
MONOSOB_API monosob_status monosob_measured_modulus(const monosob_profile* u, double delta, double* out);
MONOSOB_API monosob_status monosob_calibrate_c2(const monosob_profile* const* profiles, size_t n,
                                                const monosob_psi* psi, const monosob_tuple* a,
                                                const double* deltas, size_t n_deltas,
                                                const monosob_options* options, double* out);

/* Verification checks. */
MONOSOB_API monosob_status monosob_check_sobolev(const monosob_profile* u, const monosob_tuple* a, double p,
                                                 const monosob_options* options, monosob_report** out);
MONOSOB_API monosob_status monosob_check_gls(const monosob_profile* u, const monosob_psi* psi,
                                             const monosob_tuple* a, const monosob_options* options,
                                             monosob_report** out);
MONOSOB_API monosob_status monosob_check_trace(const monosob_profile* g, const monosob_tuple* a,
                                               const monosob_tuple* b, double p, const monosob_options* options,
                                               monosob_report** out);
MONOSOB_API monosob_status monosob_check_morrey(const monosob_profile* u, const monosob_psi* psi,
                                                const monosob_tuple* a, double c2, double delta,
                                                const monosob_options* options, monosob_report** out);
/* q <= 0 selects the scaling q; n_lambdas == 0 selects the default grid. */
MONOSOB_API monosob_status monosob_fit_scaling(const monosob_profile* u, const monosob_tuple* a,
                                               const monosob_tuple* b, double p, double q, const double* lambdas,
                                               size_t n_lambdas, const monosob_options* options,
                                               monosob_scaling_fit* out);
MONOSOB_API monosob_status monosob_check_scaling(const monosob_profile* u, const monosob_tuple* a,
                                                 const monosob_tuple* b, double p, double q,
                                                 const double* lambdas, size_t n_lambdas,
                                                 const monosob_options* options, monosob_report** out);

MONOSOB_API int monosob_report_status(const monosob_report* r);
MONOSOB_API double monosob_report_lhs(const monosob_report* r);
MONOSOB_API double monosob_report_rhs(const monosob_report* r);
MONOSOB_API double monosob_report_constant(const monosob_report* r);
MONOSOB_API double monosob_report_ratio(const monosob_report* r);
MONOSOB_API monosob_status monosob_report_json(const monosob_report* r, char** out);
MONOSOB_API monosob_status monosob_report_csv(const monosob_report* r, int with_header, char** out);
MONOSOB_API void monosob_report_destroy(monosob_report* r);

/* Campaigns. */
MONOSOB_API monosob_status monosob_campaign_parse(const char* text, monosob_campaign** out);
MONOSOB_API monosob_status monosob_campaign_load(const char* path, monosob_campaign** out);
MONOSOB_API void monosob_campaign_set_seed(monosob_campaign* c, uint64_t seed);
MONOSOB_API void monosob_campaign_set_options(monosob_campaign* c, const monosob_options* options);
MONOSOB_API void monosob_campaign_get_options(const monosob_campaign* c, monosob_options* options);
MONOSOB_API size_t monosob_campaign_check_count(const monosob_campaign* c);
MONOSOB_API void monosob_campaign_destroy(monosob_campaign* c);
MONOSOB_API monosob_status monosob_campaign_run(const monosob_campaign* c, monosob_report_list** out);

MONOSOB_API size_t monosob_report_list_size(const monosob_report_list* list);
MONOSOB_API const monosob_report* monosob_report_list_get(const monosob_report_list* list, size_t i);
MONOSOB_API monosob_status monosob_report_list_jsonl(const monosob_report_list* list, char** out);
MONOSOB_API monosob_status monosob_report_list_csv(const monosob_report_list* list, char** out);
MONOSOB_API void monosob_report_list_destroy(monosob_report_list* list);

#ifdef __cplusplus
}
#endif

#endif
