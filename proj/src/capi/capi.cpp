#include "monosob/monosob.h"

#include "monosob/campaign.hpp"
#include "monosob/errors.hpp"
#include "monosob/grand_lebesgue.hpp"
#include "monosob/sharp_constants.hpp"
#include "monosob/special_functions.hpp"
#include "monosob/verifier.hpp"
#include "monosob/weighted_calculus.hpp"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

struct monosob_tuple {
    monosob::ExponentTuple value;
};
struct monosob_profile {
    monosob::RadialProfile value;
};
struct monosob_psi {
    monosob::PsiFunction value;
};
struct monosob_report {
    monosob::VerificationReport value;
};
struct monosob_report_list {
    std::vector<monosob_report> items;
};
struct monosob_campaign {
    monosob::CampaignConfig value;
};

namespace {

thread_local std::string last_error;

template <class F>
monosob_status guarded(F&& f) {
    try {
        f();
        return MONOSOB_OK;
    } catch (const monosob::Error& e) {
        last_error = e.what();
        switch (e.kind()) {
        case monosob::ErrorKind::input: return MONOSOB_ERR_INPUT;
        case monosob::ErrorKind::domain: return MONOSOB_ERR_DOMAIN;
        case monosob::ErrorKind::numerical: return MONOSOB_ERR_NUMERICAL;
        }
        return MONOSOB_ERR_INTERNAL;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return MONOSOB_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return MONOSOB_ERR_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (p == nullptr) throw monosob::InputError(std::string(what) + " must not be NULL");
}

char* dup(const std::string& s) {
    auto* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

monosob::CheckOptions to_check_options(const monosob_options* o) {
    monosob_options d;
    monosob_options_init(&d);
    if (o == nullptr) o = &d;
    monosob::CheckOptions c;
    if (o->constant_form != MONOSOB_CONSTANTS_CORRECTED && o->constant_form != MONOSOB_CONSTANTS_PRINTED)
        throw monosob::InputError("unknown constant form");
    if (o->trace_variant != MONOSOB_TRACE_LITERAL && o->trace_variant != MONOSOB_TRACE_CORRECTED)
        throw monosob::InputError("unknown trace formula variant");
    if (!(o->slack >= 0.0) || !(o->quad_rel_tol > 0.0) || o->quad_max_panels < 1 || !(o->min_truncation_radius >= 0.0))
        throw monosob::InputError("options hold an invalid tolerance");
    c.constant_form = o->constant_form == MONOSOB_CONSTANTS_PRINTED ? monosob::ConstantForm::printed
                                                                    : monosob::ConstantForm::corrected;
    c.trace_variant = o->trace_variant == MONOSOB_TRACE_CORRECTED ? monosob::TraceFormulaVariant::corrected
                                                                  : monosob::TraceFormulaVariant::literal;
    c.slack = o->slack;
    c.quadrature.rel_tol = o->quad_rel_tol;
    c.quadrature.max_panels = o->quad_max_panels;
    c.quadrature.min_truncation_radius = o->min_truncation_radius;
    return c;
}

monosob::ConstantForm form_of(int form) {
    if (form == MONOSOB_CONSTANTS_CORRECTED) return monosob::ConstantForm::corrected;
    if (form == MONOSOB_CONSTANTS_PRINTED) return monosob::ConstantForm::printed;
    throw monosob::InputError("unknown constant form");
}

void fill(monosob_supremum* out, const monosob::SupremumResult& s) {
    out->value = s.value;
    out->argmax = s.argmax;
    out->infinite = s.infinite;
    out->at_boundary = s.at_boundary;
    out->evaluations = s.evaluations;
}

void fill(monosob_norm_result* out, const monosob::NormResult& n) {
    out->value = n.value;
    out->panels = n.diagnostics.panels;
    out->achieved_rel_error = n.diagnostics.achieved_rel_error;
    out->truncation_radius = n.diagnostics.truncation_radius;
}

std::vector<double> lambda_grid(const double* lambdas, std::size_t n) {
    if (n == 0) return monosob::default_lambda_grid();
    need(lambdas, "lambdas");
    return {lambdas, lambdas + n};
}

} // namespace

extern "C" {

void monosob_options_init(monosob_options* o) {
    if (o == nullptr) return;
    const monosob::CheckOptions c;
    o->constant_form = MONOSOB_CONSTANTS_CORRECTED;
    o->trace_variant = MONOSOB_TRACE_LITERAL;
    o->slack = c.slack;
    o->quad_rel_tol = c.quadrature.rel_tol;
    o->quad_max_panels = c.quadrature.max_panels;
    o->min_truncation_radius = c.quadrature.min_truncation_radius;
}

const char* monosob_last_error(void) { return last_error.c_str(); }
const char* monosob_version(void) { return "1.0.0"; }
void monosob_string_free(char* s) { std::free(s); }

monosob_status monosob_tuple_create(const double* entries, size_t m, monosob_tuple** out) {
    return guarded([&] {
        need(out, "out");
        if (m > 0) need(entries, "entries");
        *out = new monosob_tuple{monosob::ExponentTuple(std::vector<double>(entries, entries + m))};
    });
}

monosob_status monosob_tuple_parse(const char* text, monosob_tuple** out) {
    return guarded([&] {
        need(text, "text");
        need(out, "out");
        *out = new monosob_tuple{monosob::parse_exponent_tuple(text)};
    });
}

void monosob_tuple_destroy(monosob_tuple* t) { delete t; }

monosob_status monosob_tuple_json(const monosob_tuple* t, char** out) {
    return guarded([&] {
        need(t, "tuple");
        need(out, "out");
        *out = dup(monosob::to_json(t->value));
    });
}
size_t monosob_tuple_dimension(const monosob_tuple* t) { return t ? t->value.dimension() : 0; }
size_t monosob_tuple_positive_count(const monosob_tuple* t) { return t ? t->value.positive_count() : 0; }

monosob_status monosob_effective_dimension(const monosob_tuple* a, double* out) {
    return guarded([&] {
        need(a, "a");
        need(out, "out");
        *out = monosob::effective_dimension(a->value);
    });
}

monosob_status monosob_monomial_weight(const monosob_tuple* a, const double* x, size_t m, double* out) {
    return guarded([&] {
        need(a, "a");
        need(x, "x");
        need(out, "out");
        *out = monosob::monomial_weight(a->value, std::span<const double>(x, m));
    });
}

monosob_status monosob_sobolev_exponent(const monosob_tuple* a, const monosob_tuple* b, double p, double* out) {
    return guarded([&] {
        need(a, "a");
        need(b, "b");
        need(out, "out");
        *out = monosob::sobolev_exponent(a->value, b->value, p);
    });
}

monosob_status monosob_sobolev_p_of_q(double dim, double q, double* out) {
    return guarded([&] {
        need(out, "out");
        *out = monosob::sobolev_p_of_q(dim, q);
    });
}

monosob_status monosob_trace_exponent(const monosob_tuple* a, const monosob_tuple* b, double p, double* out) {
    return guarded([&] {
        need(a, "a");
        need(b, "b");
        need(out, "out");
        *out = monosob::trace_exponent(a->value, b->value, p);
    });
}

monosob_status monosob_sobolev_four_json(const monosob_tuple* a, const monosob_tuple* b, double p, double q,
                                         char** out) {
    return guarded([&] {
        need(a, "a");
        need(b, "b");
        need(out, "out");
        const auto four = q > 0.0 ? monosob::SobolevFour::with_q(a->value, b->value, p, q)
                                  : monosob::SobolevFour::from_scaling(a->value, b->value, p);
        *out = dup(four.to_json());
    });
}

monosob_status monosob_gamma(double x, double* out) {
    return guarded([&] {
        need(out, "out");
        *out = monosob::gamma_fn(x);
    });
}

monosob_status monosob_log_gamma(double x, double* out) {
    return guarded([&] {
        need(out, "out");
        *out = monosob::log_gamma(x);
    });
}

monosob_status monosob_talenti(int m, double p, double* out) {
    return guarded([&] {
        need(out, "out");
        *out = monosob::talenti_constant(m, p);
    });
}

monosob_status monosob_c1(const monosob_tuple* a, int form, double* out) {
    return guarded([&] {
        need(a, "a");
        need(out, "out");
        *out = monosob::monomial_c1(a->value, form_of(form));
    });
}

monosob_status monosob_c1_relaxed(const monosob_tuple* a, int form, double* out) {
    return guarded([&] {
        need(a, "a");
        need(out, "out");
        *out = monosob::monomial_c1_relaxed(a->value, form_of(form));
    });
}

monosob_status monosob_c(const monosob_tuple* a, double p, int form, double* out) {
    return guarded([&] {
        need(a, "a");
        need(out, "out");
        *out = monosob::monomial_c(a->value, p, form_of(form));
    });
}

monosob_status monosob_trace_bounds_eval(const monosob_tuple* a, const monosob_tuple* b, double p, double q,
                                         int variant, monosob_trace_bounds* out) {
    return guarded([&] {
        need(a, "a");
        need(b, "b");
        need(out, "out");
        if (variant != MONOSOB_TRACE_LITERAL && variant != MONOSOB_TRACE_CORRECTED)
            throw monosob::InputError("unknown trace formula variant");
        const auto t = monosob::trace_bounds(a->value, b->value, p, q,
                                             variant == MONOSOB_TRACE_CORRECTED
                                                 ? monosob::TraceFormulaVariant::corrected
                                                 : monosob::TraceFormulaVariant::literal);
        *out = {t.m, t.q_factor, t.w_lower, t.w_upper, t.q_at_least_p};
    });
}

monosob_status monosob_angular_mass(const monosob_tuple* a, double* out) {
    return guarded([&] {
        need(a, "a");
        need(out, "out");
        *out = monosob::angular_mass(a->value);
    });
}

monosob_status monosob_profile_parse(const char* spec, monosob_profile** out) {
    return guarded([&] {
        need(spec, "spec");
        need(out, "out");
        *out = new monosob_profile{monosob::parse_profile(spec)};
    });
}

monosob_status monosob_profile_dilate(const monosob_profile* u, double lambda, monosob_profile** out) {
    return guarded([&] {
        need(u, "u");
        need(out, "out");
        *out = new monosob_profile{monosob::dilate(u->value, lambda)};
    });
}

monosob_status monosob_profile_scale(const monosob_profile* u, double c, monosob_profile** out) {
    return guarded([&] {
        need(u, "u");
        need(out, "out");
        *out = new monosob_profile{u->value.scaled(c)};
    });
}

monosob_status monosob_profile_eval(const monosob_profile* u, double rho, double* value, double* derivative) {
    return guarded([&] {
        need(u, "u");
        if (!(rho >= 0.0)) throw monosob::InputError("rho must be non-negative");
        if (value) *value = u->value.value(rho);
        if (derivative) *derivative = u->value.derivative(rho);
    });
}

const char* monosob_profile_name(const monosob_profile* u) { return u ? u->value.name().c_str() : ""; }
void monosob_profile_destroy(monosob_profile* u) { delete u; }

monosob_status monosob_family_sample(const char* name, const double* box, size_t box_dim, size_t count,
                                     uint64_t seed, monosob_profile** out) {
    return guarded([&] {
        need(name, "name");
        if (count > 0) need(out, "out");
        std::vector<std::pair<double, double>> b;
        if (box != nullptr)
            for (size_t i = 0; i < box_dim; ++i) b.emplace_back(box[2 * i], box[2 * i + 1]);
        auto profiles = monosob::make_family(name, b).sample(count, seed);
        std::vector<monosob_profile*> made;
        try {
            for (auto& p : profiles) made.push_back(new monosob_profile{std::move(p)});
        } catch (...) {
            for (auto* p : made) delete p;
            throw;
        }
        for (size_t i = 0; i < made.size(); ++i) out[i] = made[i];
    });
}

monosob_status monosob_lp_norm(const monosob_profile* u, const monosob_tuple* a, double p,
                               const monosob_options* options, monosob_norm_result* out) {
    return guarded([&] {
        need(u, "u");
        need(a, "a");
        need(out, "out");
        fill(out, monosob::weighted_lp_norm_ex(u->value, a->value, p, to_check_options(options).quadrature));
    });
}

monosob_status monosob_gradient_norm(const monosob_profile* u, const monosob_tuple* a, double p,
                                     const monosob_options* options, monosob_norm_result* out) {
    return guarded([&] {
        need(u, "u");
        need(a, "a");
        need(out, "out");
        fill(out, monosob::weighted_gradient_norm_ex(u->value, a->value, p, to_check_options(options).quadrature));
    });
}

monosob_status monosob_psi_parse(const char* json, monosob_psi** out) {
    return guarded([&] {
        need(json, "json");
        need(out, "out");
        *out = new monosob_psi{monosob::parse_psi(json)};
    });
}

monosob_status monosob_psi_eval(const monosob_psi* psi, double p, double* out) {
    return guarded([&] {
        need(psi, "psi");
        need(out, "out");
        *out = psi->value(p);
    });
}

void monosob_psi_support(const monosob_psi* psi, double* a, double* b) {
    if (psi == nullptr) return;
    if (a) *a = psi->value.lower();
    if (b) *b = psi->value.upper();
}

void monosob_psi_destroy(monosob_psi* psi) { delete psi; }

monosob_status monosob_zeta_transform(const monosob_psi* psi, const monosob_tuple* a, int form, monosob_psi** out) {
    return guarded([&] {
        need(psi, "psi");
        need(a, "a");
        need(out, "out");
        *out = new monosob_psi{monosob::zeta_transform(psi->value, a->value, form_of(form))};
    });
}

monosob_status monosob_psi_d_transform(const monosob_psi* psi, double dim, double c2, monosob_psi** out) {
    return guarded([&] {
        need(psi, "psi");
        need(out, "out");
        *out = new monosob_psi{monosob::psi_d_transform(psi->value, dim, c2)};
    });
}

monosob_status monosob_gls_norm(const monosob_profile* u, const monosob_psi* psi, const monosob_tuple* a,
                                int gradient, const monosob_options* options, monosob_supremum* out) {
    return guarded([&] {
        need(u, "u");
        need(psi, "psi");
        need(a, "a");
        need(out, "out");
        const auto q = to_check_options(options).quadrature;
        fill(out, gradient ? monosob::gls_gradient_norm(u->value, psi->value, a->value, q)
                           : monosob::gls_norm(u->value, psi->value, a->value, q));
    });
}

monosob_status monosob_fundamental(const monosob_psi* psi, double delta, monosob_supremum* out) {
    return guarded([&] {
        need(psi, "psi");
        need(out, "out");
        fill(out, monosob::fundamental_function_ex(psi->value, delta));
    });
}

monosob_status monosob_morrey_bound(const monosob_profile* u, const monosob_psi* psi, const monosob_tuple* a,
                                    double c2, double delta, const monosob_options* options, monosob_morrey* out) {
    return guarded([&] {
        need(u, "u");
        need(psi, "psi");
        need(a, "a");
        need(out, "out");
        const auto m = monosob::morrey_bound(u->value, psi->value, a->value, c2, delta,
                                             to_check_options(options).quadrature);
        *out = {m.value, m.inconclusive, m.gradient_norm, m.fundamental};
    });
}

monosob_status monosob_measured_modulus(const monosob_profile* u, double delta, double* out) {
    return guarded([&] {
        need(u, "u");
        need(out, "out");
        *out = monosob::measured_modulus(u->value, delta);
    });
}

monosob_status monosob_calibrate_c2(const monosob_profile* const* profiles, size_t n, const monosob_psi* psi,
                                    const monosob_tuple* a, const double* deltas, size_t n_deltas,
                                    const monosob_options* options, double* out) {
    return guarded([&] {
        need(psi, "psi");
        need(a, "a");
        need(out, "out");
        if (n > 0) need(profiles, "profiles");
        if (n_deltas > 0) need(deltas, "deltas");
        std::vector<monosob::RadialProfile> battery;
        for (size_t i = 0; i < n; ++i) {
            need(profiles[i], "profile");
            battery.push_back(profiles[i]->value);
        }
        *out = monosob::calibrate_morrey_c2(battery, psi->value, a->value,
                                            std::span<const double>(deltas, n_deltas),
                                            to_check_options(options).quadrature)
                   .c2;
    });
}

monosob_status monosob_check_sobolev(const monosob_profile* u, const monosob_tuple* a, double p,
                                     const monosob_options* options, monosob_report** out) {
    return guarded([&] {
        need(u, "u");
        need(a, "a");
        need(out, "out");
        *out = new monosob_report{monosob::check_sobolev(u->value, a->value, p, to_check_options(options))};
    });
}

monosob_status monosob_check_gls(const monosob_profile* u, const monosob_psi* psi, const monosob_tuple* a,
                                 const monosob_options* options, monosob_report** out) {
    return guarded([&] {
        need(u, "u");
        need(psi, "psi");
        need(a, "a");
        need(out, "out");
        *out = new monosob_report{monosob::verify_gls_sobolev(u->value, psi->value, a->value, to_check_options(options))};
    });
}

monosob_status monosob_check_trace(const monosob_profile* g, const monosob_tuple* a, const monosob_tuple* b,
                                   double p, const monosob_options* options, monosob_report** out) {
    return guarded([&] {
        need(g, "g");
        need(a, "a");
        need(b, "b");
        need(out, "out");
        *out = new monosob_report{monosob::check_trace_radial(g->value, a->value, b->value, p, to_check_options(options))};
    });
}

monosob_status monosob_check_morrey(const monosob_profile* u, const monosob_psi* psi, const monosob_tuple* a,
                                    double c2, double delta, const monosob_options* options, monosob_report** out) {
    return guarded([&] {
        need(u, "u");
        need(psi, "psi");
        need(a, "a");
        need(out, "out");
        *out = new monosob_report{
            monosob::check_morrey(u->value, psi->value, a->value, c2, delta, to_check_options(options))};
    });
}

monosob_status monosob_fit_scaling(const monosob_profile* u, const monosob_tuple* a, const monosob_tuple* b,
                                   double p, double q, const double* lambdas, size_t n_lambdas,
                                   const monosob_options* options, monosob_scaling_fit* out) {
    return guarded([&] {
        need(u, "u");
        need(a, "a");
        need(b, "b");
        need(out, "out");
        const double qq = q > 0.0 ? q : monosob::sobolev_exponent(a->value, b->value, p);
        const auto grid = lambda_grid(lambdas, n_lambdas);
        const auto fit = monosob::fit_scaling_exponents(u->value, a->value, b->value, p, qq, grid,
                                                        to_check_options(options).quadrature);
        int failed = 0;
        for (const auto& pt : fit.points) failed += pt.ok ? 0 : 1;
        *out = {fit.slope_lhs, fit.slope_rhs, fit.expected_lhs, fit.expected_rhs, fit.balanced, failed};
    });
}

monosob_status monosob_check_scaling(const monosob_profile* u, const monosob_tuple* a, const monosob_tuple* b,
                                     double p, double q, const double* lambdas, size_t n_lambdas,
                                     const monosob_options* options, monosob_report** out) {
    return guarded([&] {
        need(u, "u");
        need(a, "a");
        need(b, "b");
        need(out, "out");
        const double qq = q > 0.0 ? q : monosob::sobolev_exponent(a->value, b->value, p);
        const auto grid = lambda_grid(lambdas, n_lambdas);
        *out = new monosob_report{
            monosob::check_scaling(u->value, a->value, b->value, p, qq, grid, to_check_options(options))};
    });
}

int monosob_report_status(const monosob_report* r) {
    if (r == nullptr) return MONOSOB_REPORT_INCONCLUSIVE;
    switch (r->value.status) {
    case monosob::CheckStatus::pass: return MONOSOB_REPORT_PASS;
    case monosob::CheckStatus::fail: return MONOSOB_REPORT_FAIL;
    case monosob::CheckStatus::inconclusive: return MONOSOB_REPORT_INCONCLUSIVE;
    }
    return MONOSOB_REPORT_INCONCLUSIVE;
}

double monosob_report_lhs(const monosob_report* r) { return r ? r->value.lhs : 0.0; }
double monosob_report_rhs(const monosob_report* r) { return r ? r->value.rhs : 0.0; }
double monosob_report_constant(const monosob_report* r) { return r ? r->value.constant : 0.0; }
double monosob_report_ratio(const monosob_report* r) { return r ? r->value.ratio : 0.0; }

monosob_status monosob_report_json(const monosob_report* r, char** out) {
    return guarded([&] {
        need(r, "report");
        need(out, "out");
        *out = dup(r->value.to_json());
    });
}

monosob_status monosob_report_csv(const monosob_report* r, int with_header, char** out) {
    return guarded([&] {
        need(r, "report");
        need(out, "out");
        std::string s = with_header ? monosob::VerificationReport::csv_header() + "\n" : std::string();
        *out = dup(s + r->value.to_csv_row() + "\n");
    });
}

void monosob_report_destroy(monosob_report* r) { delete r; }

monosob_status monosob_campaign_parse(const char* text, monosob_campaign** out) {
    return guarded([&] {
        need(text, "text");
        need(out, "out");
        *out = new monosob_campaign{monosob::parse_campaign_config(text)};
    });
}

monosob_status monosob_campaign_load(const char* path, monosob_campaign** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new monosob_campaign{monosob::load_campaign_config(path)};
    });
}

void monosob_campaign_set_seed(monosob_campaign* c, uint64_t seed) {
    if (c) c->value.seed = seed;
}

void monosob_campaign_set_options(monosob_campaign* c, const monosob_options* options) {
    if (c == nullptr || options == nullptr) return;
    try {
        c->value.options = to_check_options(options);
    } catch (const monosob::Error& e) {
        last_error = e.what();
    }
}

void monosob_campaign_get_options(const monosob_campaign* c, monosob_options* o) {
    if (c == nullptr || o == nullptr) return;
    const auto& v = c->value.options;
    o->constant_form = v.constant_form == monosob::ConstantForm::printed ? MONOSOB_CONSTANTS_PRINTED
                                                                         : MONOSOB_CONSTANTS_CORRECTED;
    o->trace_variant = v.trace_variant == monosob::TraceFormulaVariant::corrected ? MONOSOB_TRACE_CORRECTED
                                                                                  : MONOSOB_TRACE_LITERAL;
    o->slack = v.slack;
    o->quad_rel_tol = v.quadrature.rel_tol;
    o->quad_max_panels = v.quadrature.max_panels;
    o->min_truncation_radius = v.quadrature.min_truncation_radius;
}

size_t monosob_campaign_check_count(const monosob_campaign* c) { return c ? c->value.checks.size() : 0; }
void monosob_campaign_destroy(monosob_campaign* c) { delete c; }

monosob_status monosob_campaign_run(const monosob_campaign* c, monosob_report_list** out) {
    return guarded([&] {
        need(c, "campaign");
        need(out, "out");
        auto list = std::make_unique<monosob_report_list>();
        for (auto& r : monosob::run_campaign(c->value)) list->items.push_back({std::move(r)});
        *out = list.release();
    });
}

size_t monosob_report_list_size(const monosob_report_list* list) { return list ? list->items.size() : 0; }

const monosob_report* monosob_report_list_get(const monosob_report_list* list, size_t i) {
    if (list == nullptr || i >= list->items.size()) return nullptr;
    return &list->items[i];
}

namespace {

std::vector<monosob::VerificationReport> plain(const monosob_report_list* list) {
    std::vector<monosob::VerificationReport> v;
    for (const auto& r : list->items) v.push_back(r.value);
    return v;
}

} // namespace

monosob_status monosob_report_list_jsonl(const monosob_report_list* list, char** out) {
    return guarded([&] {
        need(list, "list");
        need(out, "out");
        *out = dup(monosob::reports_to_jsonl(plain(list)));
    });
}

monosob_status monosob_report_list_csv(const monosob_report_list* list, char** out) {
    return guarded([&] {
        need(list, "list");
        need(out, "out");
        *out = dup(monosob::reports_to_csv(plain(list)));
    });
}

void monosob_report_list_destroy(monosob_report_list* list) { delete list; }

} // extern "C"
