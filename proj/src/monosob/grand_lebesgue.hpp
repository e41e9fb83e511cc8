#pragma once

#include "monosob/exponent_tuple.hpp"
#include "monosob/psi_function.hpp"
#include "monosob/quadrature.hpp"
#include "monosob/radial_profile.hpp"
#include "monosob/sharp_constants.hpp"

#include <functional>

namespace monosob {

/// Supremum of a function over an open exponent interval.
struct SupremumResult {
    double value = 0.0;     // +inf when `infinite`
    double argmax = 0.0;    // exponent where the reported value was attained
    bool infinite = false;  // divergence detected along the grid or at an endpoint
    bool at_boundary = false; // maximiser on the edge of the inset interval
    int evaluations = 0;
};

/// sup of g over (a, b), b possibly infinite. The interval is inset by
/// eps = max(1e-8, 1e-8 (b - a)) (in t = 1/p for b = inf), scanned on a
/// 64-point grid (log-spaced in p, uniform in t) and refined by golden
/// section to 1e-8 relative around the best point. g may return +inf; a
/// DomainError from g is read as +inf. Monotone unbounded growth towards an
/// endpoint is reported as an infinite supremum.
SupremumResult open_interval_supremum(const std::function<double(double)>& g, double a, double b);

/// ||f||_{G(psi)} = sup_p |f|_{p, mu_A} / psi(p).
SupremumResult gls_norm(const RadialProfile& f, const PsiFunction& psi, const ExponentTuple& a,
                        const QuadratureOptions& options = {});
/// The same supremum for |grad f|.
SupremumResult gls_gradient_norm(const RadialProfile& f, const PsiFunction& psi, const ExponentTuple& a,
                                 const QuadratureOptions& options = {});

/// phi(delta) = sup_p delta^(1/p) / psi(p).
SupremumResult fundamental_function_ex(const PsiFunction& psi, double delta);
inline double fundamental_function(const PsiFunction& psi, double delta) {
    return fundamental_function_ex(psi, delta).value;
}

/// q(p) = D p / (D - p) and its inverse p(q) = D q / (D + q).
double zeta_q_of_p(double dim, double p);
double zeta_p_of_q(double dim, double q);

/// zeta(q) = C(p(q)) psi(p(q)) on the image of supp psi under q(p).
/// Requires supp psi within [1, D].
PsiFunction zeta_transform(const PsiFunction& psi, const ExponentTuple& a,
                           ConstantForm form = ConstantForm::corrected);

/// psi^(D)(p) = C2 p / (p - D) psi(p). Requires supp psi within [D, inf).
PsiFunction psi_d_transform(const PsiFunction& psi, double dim, double c2);

struct MorreyBound {
    double value = 0.0;
    bool inconclusive = false;
    double gradient_norm = 0.0; // ||grad u||_{G(psi)}
    double fundamental = 0.0;   // phi(G(psi^(D)), delta^D)
    SupremumResult gradient_detail;
};

/// Modulus-of-continuity bound ||grad u||_{G(psi)} delta / phi(psi^(D), delta^D).
/// Inconclusive when the gradient norm is infinite.
MorreyBound morrey_bound(const RadialProfile& u, const PsiFunction& psi, const ExponentTuple& a, double c2,
                         double delta, const QuadratureOptions& options = {});

} // namespace monosob
