/* Exercises the C interface from plain C. */
#include <monosob/monosob.h>

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                       \
    do {                                                                   \
        if (!(cond)) {                                                     \
            fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                    \
        }                                                                  \
    } while (0)

#define OK(call) EXPECT((call) == MONOSOB_OK)

static int close_rel(double a, double b, double tol) { return fabs(a - b) <= tol * fabs(b); }

static void test_algebra(void) {
    const double e[] = {1.0, 2.0};
    monosob_tuple* a = NULL;
    OK(monosob_tuple_create(e, 2, &a));
    EXPECT(monosob_tuple_dimension(a) == 2);
    EXPECT(monosob_tuple_positive_count(a) == 2);
    double d = 0.0, q = 0.0, w = 0.0;
    OK(monosob_effective_dimension(a, &d));
    EXPECT(d == 5.0);
    OK(monosob_sobolev_exponent(a, a, 2.0, &q));
    EXPECT(close_rel(q, 10.0 / 3.0, 1e-15));
    const double x[] = {-2.0, 3.0};
    OK(monosob_monomial_weight(a, x, 2, &w));
    EXPECT(w == 18.0);
    EXPECT(monosob_monomial_weight(a, x, 1, &w) == MONOSOB_ERR_INPUT);
    EXPECT(monosob_sobolev_exponent(a, a, 5.0, &q) == MONOSOB_ERR_DOMAIN);
    EXPECT(strlen(monosob_last_error()) > 0);

    char* json = NULL;
    OK(monosob_sobolev_four_json(a, a, 2.0, 0.0, &json));
    EXPECT(strstr(json, "\"valid\":true") != NULL);
    monosob_string_free(json);
    OK(monosob_tuple_json(a, &json));
    EXPECT(strcmp(json, "[1,2]") == 0);
    monosob_string_free(json);

    monosob_tuple* bad = NULL;
    const double neg[] = {-1.0};
    EXPECT(monosob_tuple_create(neg, 1, &bad) == MONOSOB_ERR_INPUT);
    EXPECT(bad == NULL);
    EXPECT(monosob_tuple_parse("[1, x]", &bad) == MONOSOB_ERR_INPUT);

    double c = 0.0, c1 = 0.0, k = 0.0, g = 0.0;
    OK(monosob_c(a, 2.0, MONOSOB_CONSTANTS_CORRECTED, &c));
    OK(monosob_c1(a, MONOSOB_CONSTANTS_CORRECTED, &c1));
    EXPECT(c > 0.0 && c1 > 0.0);
    OK(monosob_talenti(3, 2.0, &k));
    EXPECT(close_rel(k, 0.42726054286252666, 1e-13));
    OK(monosob_gamma(5.0, &g));
    EXPECT(close_rel(g, 24.0, 1e-14));
    EXPECT(monosob_talenti(3, 3.0, &k) == MONOSOB_ERR_DOMAIN);
    EXPECT(monosob_c(a, 2.0, 7, &c) == MONOSOB_ERR_INPUT);
    monosob_tuple_destroy(a);
}

static void test_norms_and_checks(void) {
    monosob_tuple* a = NULL;
    OK(monosob_tuple_parse("1,2", &a));
    monosob_profile* u = NULL;
    OK(monosob_profile_parse("bump:1", &u));
    EXPECT(strcmp(monosob_profile_name(u), "bump:1") == 0);
    monosob_norm_result n;
    OK(monosob_lp_norm(u, a, 2.0, NULL, &n));
    EXPECT(n.value > 0.0 && n.panels > 0);

    monosob_profile* v = NULL;
    OK(monosob_profile_dilate(u, 2.0, &v));
    monosob_norm_result nv;
    OK(monosob_lp_norm(v, a, 2.0, NULL, &nv));
    EXPECT(close_rel(nv.value, pow(2.0, -2.5) * n.value, 1e-9));

    monosob_report* r = NULL;
    OK(monosob_check_sobolev(u, a, 2.0, NULL, &r));
    EXPECT(monosob_report_status(r) == MONOSOB_REPORT_PASS);
    EXPECT(monosob_report_ratio(r) < 1.0);
    char* s = NULL;
    OK(monosob_report_json(r, &s));
    EXPECT(strstr(s, "\"id\":\"sobolev-1.6a\"") != NULL);
    monosob_string_free(s);
    OK(monosob_report_csv(r, 1, &s));
    EXPECT(strncmp(s, "inequality-id,ratio,pass,diagnostics\nsobolev-1.6a,", 50) == 0);
    monosob_string_free(s);
    monosob_report_destroy(r);

    monosob_scaling_fit fit;
    OK(monosob_fit_scaling(u, a, a, 2.0, 0.0, NULL, 0, NULL, &fit));
    EXPECT(fit.balanced);
    EXPECT(fabs(fit.slope_rhs + 1.5) < 1e-8);

    monosob_psi* psi = NULL;
    OK(monosob_psi_parse("{\"family\":\"constant\",\"a\":4,\"b\":8}", &psi));
    monosob_tuple* h = NULL;
    OK(monosob_tuple_parse("[0.5,0.5]", &h));
    monosob_morrey mb;
    OK(monosob_morrey_bound(u, psi, h, 1.0, 0.1, NULL, &mb));
    EXPECT(mb.value > 0.0 && !mb.inconclusive);
    double omega = 0.0;
    OK(monosob_measured_modulus(u, 0.1, &omega));
    EXPECT(omega <= mb.value);
    monosob_psi* bad = NULL;
    EXPECT(monosob_psi_parse("{\"family\":\"constant\",\"a\":4}", &bad) == MONOSOB_ERR_INPUT);

    monosob_profile* fam[4] = {NULL, NULL, NULL, NULL};
    OK(monosob_family_sample("bump", NULL, 0, 4, 9, fam));
    for (int i = 0; i < 4; ++i) {
        EXPECT(fam[i] != NULL);
        monosob_profile_destroy(fam[i]);
    }

    monosob_psi_destroy(psi);
    monosob_tuple_destroy(h);
    monosob_profile_destroy(v);
    monosob_profile_destroy(u);
    monosob_tuple_destroy(a);
}

static void test_campaign(const char* path) {
    monosob_campaign* c = NULL;
    OK(monosob_campaign_load(path, &c));
    EXPECT(monosob_campaign_check_count(c) > 0);
    monosob_report_list* l1 = NULL;
    monosob_report_list* l2 = NULL;
    OK(monosob_campaign_run(c, &l1));
    OK(monosob_campaign_run(c, &l2));
    char* j1 = NULL;
    char* j2 = NULL;
    OK(monosob_report_list_jsonl(l1, &j1));
    OK(monosob_report_list_jsonl(l2, &j2));
    EXPECT(strcmp(j1, j2) == 0);
    EXPECT(monosob_report_list_size(l1) > 0);
    for (size_t i = 0; i < monosob_report_list_size(l1); ++i)
        EXPECT(monosob_report_status(monosob_report_list_get(l1, i)) == MONOSOB_REPORT_PASS);
    monosob_string_free(j1);
    monosob_string_free(j2);
    monosob_report_list_destroy(l1);
    monosob_report_list_destroy(l2);

    monosob_options o;
    monosob_campaign_get_options(c, &o);
    EXPECT(o.slack == 1e-6);
    monosob_campaign_destroy(c);

    monosob_campaign* bad = NULL;
    EXPECT(monosob_campaign_parse("{\"checks\": 3}", &bad) == MONOSOB_ERR_INPUT);
    EXPECT(monosob_campaign_load("/nonexistent/monosob.cfg", &bad) == MONOSOB_ERR_INPUT);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        fprintf(stderr, "usage: %s CONFIG\n", argv[0]);
        return 2;
    }
    monosob_options o;
    monosob_options_init(&o);
    EXPECT(o.constant_form == MONOSOB_CONSTANTS_CORRECTED);
    EXPECT(o.trace_variant == MONOSOB_TRACE_LITERAL);
    EXPECT(strlen(monosob_version()) > 0);
    test_algebra();
    test_norms_and_checks();
    test_campaign(argv[1]);
    if (failures) fprintf(stderr, "%d C API expectation(s) failed\n", failures);
    else printf("C API: all expectations met\n");
    return failures ? 1 : 0;
}
