#include "monosob/sharp_constants.hpp"

#include "monosob/errors.hpp"
#include "monosob/json_writer.hpp"
#include "monosob/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace monosob {
namespace {

// Requests closer than this (relative) to an open endpoint are refused.
constexpr double endpoint_guard = 1e-12;

// log of (p-1)^(1-1/p) (x)^(-(1-1/p)) with the p = 1 limit taken as 0.
double log_ratio_power(double p, double numerator, double denominator) {
    if (numerator == 0.0) return 0.0; // (p-1)^(1-1/p) -> 1 as p -> 1
    return (1.0 - 1.0 / p) * std::log(numerator / denominator);
}

double log_gamma_product(const ExponentTuple& a) {
    double s = 0.0;
    for (double ai : a.entries()) s += log_gamma((1.0 + ai) / 2.0);
    return s;
}

double log_c1(const ExponentTuple& a, ConstantForm form) {
    const double d = effective_dimension(a);
    const double k = static_cast<double>(a.positive_count());
    const double lp = log_gamma_product(a);
    switch (form) {
    case ConstantForm::printed:
        return std::log(d) + (lp - k * std::numbers::ln2 - log_gamma((1.0 + d) / 2.0)) / d;
    case ConstantForm::corrected:
        break;
    }
    return -std::log(d) + (k * std::numbers::ln2 + log_gamma(1.0 + d / 2.0) - lp) / d;
}

} // namespace

std::string_view to_string(ConstantForm f) noexcept { return f == ConstantForm::printed ? "printed" : "corrected"; }

std::string_view to_string(TraceFormulaVariant v) noexcept {
    return v == TraceFormulaVariant::corrected ? "corrected" : "literal";
}

ConstantForm parse_constant_form(std::string_view s) {
    if (s == "corrected") return ConstantForm::corrected;
    if (s == "printed") return ConstantForm::printed;
    throw InputError("unknown constant form '" + std::string(s) + "' (expected corrected|printed)");
}

TraceFormulaVariant parse_trace_variant(std::string_view s) {
    if (s == "literal") return TraceFormulaVariant::literal;
    if (s == "corrected") return TraceFormulaVariant::corrected;
    throw InputError("unknown trace-formula-variant '" + std::string(s) + "' (expected literal|corrected)");
}

double talenti_constant(int m, double p) {
    if (m < 3) throw DomainError("talenti_constant requires m >= 3, got " + std::to_string(m));
    const double md = m;
    if (!std::isfinite(p) || p < 1.0) throw DomainError("talenti_constant requires p >= 1");
    if (p >= md * (1.0 - endpoint_guard))
        throw DomainError("talenti_constant requires p < m, got p = " + format_double(p));
    const double bracket =
        log_gamma(1.0 + md / 2.0) + log_gamma(md) - log_gamma(md / p) - log_gamma(1.0 + md - md / p);
    const double log_k = -0.5 * std::log(std::numbers::pi) - std::log(md) / p +
                         log_ratio_power(p, p - 1.0, md - p) + bracket / md;
    return std::exp(log_k);
}

double monomial_c1(const ExponentTuple& a, ConstantForm form) {
    const double d = effective_dimension(a);
    if (d <= 1.0) throw DomainError("monomial_c1 requires D(A) > 1, got " + format_double(d));
    return std::exp(log_c1(a, form));
}

double monomial_c1_relaxed(const ExponentTuple& a, ConstantForm form) { return std::exp(log_c1(a, form)); }

double monomial_c(const ExponentTuple& a, double p, ConstantForm form) {
    const double d = effective_dimension(a);
    if (d <= 1.0) throw DomainError("monomial_c requires D(A) > 1, got " + format_double(d));
    if (!std::isfinite(p) || p <= 1.0 * (1.0 + endpoint_guard))
        throw DomainError("monomial_c requires p > 1, got " + format_double(p));
    if (p >= d * (1.0 - endpoint_guard))
        throw DomainError("monomial_c requires p < D(A) = " + format_double(d) + ", got " + format_double(p));

    const double pc = p / (p - 1.0); // conjugate exponent
    const double d_power = form == ConstantForm::printed ? 1.0 / d - 1.0 - 1.0 / p : 1.0 - 1.0 / d - 1.0 / p;
    const double gamma_part = std::log(pc) + log_gamma(d) - log_gamma(d / p) - log_gamma(d / pc);
    const double log_c = log_c1(a, form) + d_power * std::log(d) + std::log((p - 1.0) / (d - p)) / pc + gamma_part / d;
    return std::exp(log_c);
}

TraceBoundPair trace_bounds(const ExponentTuple& a, const ExponentTuple& b, double p, double q,
                            TraceFormulaVariant variant) {
    const std::size_t r = b.dimension();
    if (r >= a.dimension()) throw InputError("trace block dimension r must be below d");
    const double d = effective_dimension(a);
    const double dr = effective_dimension(b);
    const double rd = static_cast<double>(r);
    if (d <= rd) throw DomainError("trace_bounds requires D(A) > r");
    if (!std::isfinite(p) || p <= 1.0) throw DomainError("trace_bounds requires p > 1");
    if (p >= d) throw DomainError("trace_bounds requires p < D(A)");
    if (!std::isfinite(q) || q <= 1.0) throw DomainError("trace_bounds requires finite q > 1");

    const double pc_inv = 1.0 - 1.0 / p;
    double log_m = 0.0;
    if (variant == TraceFormulaVariant::literal) {
        log_m = -std::log(dr) / rd + pc_inv * std::log((p - 1.0) / (d - rd));
    } else {
        log_m = -std::log(dr) / q + pc_inv * std::log((p - 1.0) / (d - p));
    }
    const double log_q = pc_inv * std::log(q / (q - 1.0)) + std::log(q) / q;

    TraceBoundPair out{};
    out.m = std::exp(log_m);
    out.q_factor = std::exp(log_q);
    out.w_lower = out.m;
    out.w_upper = std::exp(log_m + log_q);
    out.q_at_least_p = q >= p;
    return out;
}

} // namespace monosob
