#include "monosob/grand_lebesgue.hpp"

#include "monosob/errors.hpp"
#include "monosob/json_writer.hpp"
#include "monosob/weighted_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace monosob {
namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr int grid_points = 64;
constexpr double golden = 0.6180339887498948482;

// Works in a coordinate x with p = to_p(x); for b = inf, x = 1/p.
struct Search {
    const std::function<double(double)>& g;
    bool reciprocal;
    int evaluations = 0;
    bool saw_infinite = false;

    double p_of(double x) const { return reciprocal ? 1.0 / x : x; }
    double eval(double x) {
        ++evaluations;
        double v;
        try {
            v = g(p_of(x));
        } catch (const DomainError&) {
            v = inf;
        }
        if (std::isnan(v)) throw NumericalError("supremum objective returned NaN at p = " + format_double(p_of(x)));
        if (std::isinf(v) && v > 0.0) saw_infinite = true;
        return v;
    }
};

// Strictly increasing values with non-shrinking increments while the
// probe approaches the endpoint.
bool grows_without_bound(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) return false;
    for (std::size_t i = 2; i < v.size(); ++i)
        if (v[i] - v[i - 1] < 0.9 * (v[i - 1] - v[i - 2])) return false;
    return true;
}

} // namespace

SupremumResult open_interval_supremum(const std::function<double(double)>& g, double a, double b) {
    if (!(b > a) || !std::isfinite(a)) throw InputError("supremum needs a finite a < b");
    const bool reciprocal = std::isinf(b);
    if (reciprocal && !(a > 0.0)) throw InputError("infinite interval needs a > 0");
    Search s{g, reciprocal};

    // Interval in the search coordinate.
    const double lo = reciprocal ? 0.0 : a;
    const double hi = reciprocal ? 1.0 / a : b;
    const double eps = std::max(1e-8, 1e-8 * (hi - lo));
    const double x0 = lo + eps;
    const double x1 = hi - eps;
    if (!(x1 > x0)) throw InputError("interval too narrow for the endpoint inset");

    std::vector<double> xs(grid_points), vs(grid_points);
    const bool log_grid = !reciprocal && x0 > 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double t = static_cast<double>(i) / (grid_points - 1);
        xs[i] = log_grid ? std::exp(std::log(x0) + t * (std::log(x1) - std::log(x0))) : x0 + t * (x1 - x0);
        if (i == grid_points - 1) xs[i] = x1;
    }
    for (int i = 0; i < grid_points; ++i) vs[i] = s.eval(xs[i]);

    SupremumResult out;
    if (s.saw_infinite) {
        const auto it = std::find(vs.begin(), vs.end(), inf);
        out.value = inf;
        out.infinite = true;
        out.argmax = s.p_of(xs[it - vs.begin()]);
        out.evaluations = s.evaluations;
        return out;
    }
    const int best = static_cast<int>(std::max_element(vs.begin(), vs.end()) - vs.begin());
    double best_x = xs[best];
    double best_v = vs[best];

    // Golden-section search on the bracket around the best grid point.
    double l = xs[std::max(best - 1, 0)];
    double r = xs[std::min(best + 1, grid_points - 1)];
    double c = r - golden * (r - l);
    double d = l + golden * (r - l);
    double fc = s.eval(c);
    double fd = s.eval(d);
    for (int it = 0; it < 200 && (r - l) > 1e-8 * std::max(std::abs(l), std::abs(r)); ++it) {
        if (fc >= fd) {
            r = d;
            d = c;
            fd = fc;
            c = r - golden * (r - l);
            fc = s.eval(c);
        } else {
            l = c;
            c = d;
            fc = fd;
            d = l + golden * (r - l);
            fd = s.eval(d);
        }
    }
    for (auto [x, v] : {std::pair{c, fc}, std::pair{d, fd}})
        if (v > best_v) {
            best_v = v;
            best_x = x;
        }
    if (s.saw_infinite) {
        out.value = inf;
        out.infinite = true;
        out.argmax = s.p_of(best_x);
        out.evaluations = s.evaluations;
        return out;
    }

    const double spacing = xs[1] - xs[0];
    const bool lower_edge = best == 0 && best_x - x0 <= 1e-3 * spacing;
    const double top_spacing = xs[grid_points - 1] - xs[grid_points - 2];
    const bool upper_edge = best == grid_points - 1 && x1 - best_x <= 1e-3 * top_spacing;
    out.at_boundary = lower_edge || upper_edge;

    if (out.at_boundary) {
        // Probe towards the true endpoint at offsets 1e-2 .. 1e-8 of the width.
        std::vector<double> probe;
        for (int k = 2; k <= 8; ++k) {
            const double off = std::pow(10.0, -k) * (hi - lo);
            const double x = lower_edge ? lo + off : hi - off;
            const double v = s.eval(x);
            probe.push_back(v);
            if (v > best_v) {
                best_v = v;
                best_x = x;
            }
        }
        if (s.saw_infinite || grows_without_bound(probe)) {
            out.value = inf;
            out.infinite = true;
            out.argmax = s.p_of(lower_edge ? x0 : x1);
            out.evaluations = s.evaluations;
            return out;
        }
    }
    out.value = best_v;
    out.argmax = s.p_of(best_x);
    out.evaluations = s.evaluations;
    return out;
}

namespace {

SupremumResult gls_impl(const RadialProfile& f, const PsiFunction& psi, const ExponentTuple& a,
                        const QuadratureOptions& options, bool gradient) {
    auto g = [&](double p) {
        const double n = gradient ? weighted_gradient_norm_ex(f, a, p, options).value
                                  : weighted_lp_norm_ex(f, a, p, options).value;
        return n / psi(p);
    };
    return open_interval_supremum(g, psi.lower(), psi.upper());
}

} // namespace

SupremumResult gls_norm(const RadialProfile& f, const PsiFunction& psi, const ExponentTuple& a,
                        const QuadratureOptions& options) {
    return gls_impl(f, psi, a, options, false);
}

SupremumResult gls_gradient_norm(const RadialProfile& f, const PsiFunction& psi, const ExponentTuple& a,
                                 const QuadratureOptions& options) {
    return gls_impl(f, psi, a, options, true);
}

SupremumResult fundamental_function_ex(const PsiFunction& psi, double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw InputError("fundamental function needs finite delta > 0");
    const double ld = std::log(delta);
    return open_interval_supremum([&](double p) { return std::exp(ld / p) / psi(p); }, psi.lower(), psi.upper());
}

double zeta_q_of_p(double dim, double p) { return dim * p / (dim - p); }
double zeta_p_of_q(double dim, double q) { return dim * q / (dim + q); }

PsiFunction zeta_transform(const PsiFunction& psi, const ExponentTuple& a, ConstantForm form) {
    const double dim = effective_dimension(a);
    if (!(dim > 1.0)) throw DomainError("zeta transform needs D(A) > 1");
    if (psi.lower() < 1.0 || psi.upper() > dim)
        throw InputError("zeta transform needs supp psi inside (1, " + format_double(dim) + ")");
    const double qa = zeta_q_of_p(dim, psi.lower());
    const double qb = psi.upper() == dim ? inf : zeta_q_of_p(dim, psi.upper());
    auto eval = [psi, a, form, dim](double q) {
        // Round-off may push p(q) just outside supp psi at the inset edges.
        const double p = std::clamp(zeta_p_of_q(dim, q), psi.lower(), psi.upper());
        return monomial_c(a, p, form) * psi(p);
    };
    JsonWriter w;
    w.begin_object().field("family", "zeta").key("A").raw(to_json(a)).key("psi").raw(psi.to_json());
    w.field("constant_form", to_string(form)).end_object();
    return PsiFunction::transformed(qa, qb, eval, w.str());
}

PsiFunction psi_d_transform(const PsiFunction& psi, double dim, double c2) {
    if (!(c2 > 0.0) || !std::isfinite(c2)) throw InputError("C2 must be positive and finite");
    if (!(dim > 0.0)) throw InputError("psi^(D) needs D > 0");
    if (psi.lower() < dim)
        throw InputError("psi^(D) needs supp psi inside (" + format_double(dim) + ", inf)");
    auto eval = [psi, dim, c2](double p) { return c2 * p / (p - dim) * psi(p); };
    JsonWriter w;
    w.begin_object().field("family", "psi-D").field("D", dim).field("C2", c2).key("psi").raw(psi.to_json());
    w.end_object();
    return PsiFunction::transformed(psi.lower(), psi.upper(), eval, w.str());
}

MorreyBound morrey_bound(const RadialProfile& u, const PsiFunction& psi, const ExponentTuple& a, double c2,
                         double delta, const QuadratureOptions& options) {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw InputError("Morrey bound needs finite delta > 0");
    const double dim = effective_dimension(a);
    const auto psi_d = psi_d_transform(psi, dim, c2);
    MorreyBound out;
    out.gradient_detail = gls_gradient_norm(u, psi, a, options);
    out.gradient_norm = out.gradient_detail.value;
    if (out.gradient_detail.infinite) {
        out.inconclusive = true;
        out.value = inf;
        return out;
    }
    out.fundamental = fundamental_function(psi_d, std::pow(delta, dim));
    out.value = out.gradient_norm * delta / out.fundamental;
    return out;
}

} // namespace monosob
