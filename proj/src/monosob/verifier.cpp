#include "monosob/verifier.hpp"

#include "monosob/errors.hpp"
#include "monosob/json_writer.hpp"
#include "monosob/weighted_calculus.hpp"

#include <boost/random/sobol.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace monosob {
namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

void add_tolerances(VerificationReport& r, const CheckOptions& o) {
    r.tolerances.push_back({"slack", r.slack});
    r.tolerances.push_back({"quad_rel_tol", o.quadrature.rel_tol});
}

void add_quadrature(VerificationReport& r, const std::string& side, const QuadratureDiagnostics& d) {
    r.add_diagnostic(side + "_panels", static_cast<double>(d.panels));
    r.add_diagnostic(side + "_rel_error", d.achieved_rel_error);
    r.add_diagnostic(side + "_truncation_radius", d.truncation_radius);
}

} // namespace

RadialProfile extremal_profile(double dim, double p) {
    if (!std::isfinite(dim) || !std::isfinite(p) || !(p > 1.0) || !(p < dim))
        throw InputError("extremal profile needs 1 < p < D, got D = " + format_double(dim) + ", p = " +
                         format_double(p));
    const double pc = p / (p - 1.0);
    const double e = (p - dim) / p;
    auto value = [=](double r) { return std::pow(1.0 + std::pow(r, pc), e); };
    auto deriv = [=](double r) {
        if (r == 0.0) return 0.0;
        const double rp = std::pow(r, pc);
        return e * pc * std::pow(1.0 + rp, e - 1.0) * rp / r;
    };
    return RadialProfile("extremal:" + format_double(dim) + "," + format_double(p), value, deriv,
                         SupportHint::decaying(1.0, pc * (dim - p) / p));
}

VerificationReport check_sobolev(const RadialProfile& u, const ExponentTuple& a, double p,
                                 const CheckOptions& options) {
    JsonWriter in;
    in.begin_object().field("check", "sobolev").field("profile", u.name()).key("A").raw(to_json(a));
    in.field("p", p).field("constant_form", to_string(options.constant_form)).end_object();

    const double dim = effective_dimension(a);
    if (!(p > 1.0)) throw DomainError("Sobolev check needs p > 1");
    const double q = sobolev_exponent(a, a, p);
    const double c = monomial_c(a, p, options.constant_form);

    NormResult lhs, rhs;
    try {
        lhs = weighted_lp_norm_ex(u, a, q, options.quadrature);
        rhs = weighted_gradient_norm_ex(u, a, p, options.quadrature);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::input) throw;
        auto r = inconclusive_report(InequalityId::sobolev, in.str(), e.what());
        add_tolerances(r, options);
        return r;
    }
    auto r = make_report(InequalityId::sobolev, lhs.value, rhs.value, c, options.slack, in.str());
    add_tolerances(r, options);
    if (rhs.value == 0.0) r.add_diagnostic("reason", std::string("gradient norm vanishes"));
    r.add_diagnostic("D", dim);
    r.add_diagnostic("q", q);
    add_quadrature(r, "lhs", lhs.diagnostics);
    add_quadrature(r, "rhs", rhs.diagnostics);
    if (!u.is_compact()) r.add_diagnostic("decaying_extension", true);
    if (a.is_zero() && a.dimension() >= 3 && p < static_cast<double>(a.dimension()))
        r.add_diagnostic("talenti", talenti_constant(static_cast<int>(a.dimension()), p));
    return r;
}

VerificationReport verify_gls_sobolev(const RadialProfile& u, const PsiFunction& psi, const ExponentTuple& a,
                                      const CheckOptions& options) {
    JsonWriter in;
    in.begin_object().field("check", "gls").field("profile", u.name()).key("A").raw(to_json(a));
    in.key("psi").raw(psi.to_json()).field("constant_form", to_string(options.constant_form)).end_object();

    const auto zeta = zeta_transform(psi, a, options.constant_form);
    SupremumResult lhs, rhs;
    try {
        rhs = gls_gradient_norm(u, psi, a, options.quadrature);
        lhs = gls_norm(u, zeta, a, options.quadrature);
    } catch (const NumericalError& e) {
        auto r = inconclusive_report(InequalityId::gls, in.str(), e.what());
        add_tolerances(r, options);
        return r;
    }
    auto r = make_report(InequalityId::gls, lhs.value, rhs.value, 1.0, options.slack, in.str());
    add_tolerances(r, options);
    if (rhs.infinite) r.add_diagnostic("reason", std::string("right-hand side GLS norm is infinite"));
    else if (lhs.infinite) r.add_diagnostic("reason", std::string("left-hand side GLS norm is infinite"));
    else if (rhs.value == 0.0) r.add_diagnostic("reason", std::string("gradient norm vanishes"));
    r.add_diagnostic("lhs_argmax_q", lhs.argmax);
    r.add_diagnostic("rhs_argmax_p", rhs.argmax);
    r.add_diagnostic("lhs_at_boundary", lhs.at_boundary);
    r.add_diagnostic("rhs_at_boundary", rhs.at_boundary);
    r.add_diagnostic("evaluations", static_cast<double>(lhs.evaluations + rhs.evaluations));
    if (!u.is_compact()) r.add_diagnostic("decaying_extension", true);
    return r;
}

std::vector<double> default_lambda_grid() {
    std::vector<double> out;
    for (int i = -4; i <= 4; ++i) out.push_back(std::pow(2.0, 0.75 * i));
    return out;
}

namespace {

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

} // namespace

ScalingFit fit_scaling_exponents(const RadialProfile& u, const ExponentTuple& a, const ExponentTuple& b, double p,
                                 double q, std::span<const double> lambdas, const QuadratureOptions& options) {
    if (lambdas.size() < 2) throw InputError("scaling fit needs at least two dilation factors");
    for (double l : lambdas)
        if (!(l > 0.0) || !std::isfinite(l)) throw InputError("dilation factors must be positive and finite");
    if (std::all_of(lambdas.begin(), lambdas.end(), [&](double l) { return l == lambdas[0]; }))
        throw InputError("scaling fit needs at least two distinct dilation factors");
    if (!(p >= 1.0) || !(q >= 1.0)) throw DomainError("scaling fit needs p, q >= 1");

    ScalingFit fit;
    fit.expected_lhs = -effective_dimension(b) / q;
    fit.expected_rhs = 1.0 - effective_dimension(a) / p;
    std::vector<double> x, yl, yr;
    for (double l : lambdas) {
        ScalingPoint pt;
        pt.lambda = l;
        try {
            const auto ul = dilate(u, l);
            pt.lhs = weighted_lp_norm_ex(ul, b, q, options).value;
            pt.rhs = weighted_gradient_norm_ex(ul, a, p, options).value;
            pt.ok = pt.lhs > 0.0 && pt.rhs > 0.0;
            if (!pt.ok) pt.error = "vanishing norm";
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::input) throw;
            pt.error = e.what();
        }
        if (pt.ok) {
            x.push_back(std::log(l));
            yl.push_back(std::log(pt.lhs));
            yr.push_back(std::log(pt.rhs));
        }
        fit.points.push_back(std::move(pt));
    }
    const bool distinct = x.size() >= 2 && std::any_of(x.begin(), x.end(), [&](double v) { return v != x[0]; });
    if (!distinct) throw NumericalError("scaling fit has fewer than two usable dilation factors");
    fit.slope_lhs = ls_slope(x, yl);
    fit.slope_rhs = ls_slope(x, yr);
    fit.balanced = std::abs(fit.slope_lhs - fit.slope_rhs) <= 1e-8;
    return fit;
}

VerificationReport check_scaling(const RadialProfile& u, const ExponentTuple& a, const ExponentTuple& b, double p,
                                 double q, std::span<const double> lambdas, const CheckOptions& options) {
    JsonWriter in;
    in.begin_object().field("check", "scaling").field("profile", u.name()).key("A").raw(to_json(a));
    in.key("B").raw(to_json(b)).field("p", p).field("q", q).key("lambdas").value(lambdas).end_object();
    ScalingFit fit;
    try {
        fit = fit_scaling_exponents(u, a, b, p, q, lambdas, options.quadrature);
    } catch (const NumericalError& e) {
        auto r = inconclusive_report(InequalityId::scaling, in.str(), e.what());
        add_tolerances(r, options);
        return r;
    }
    auto r = make_report(InequalityId::scaling, std::abs(fit.slope_lhs - fit.slope_rhs), 1e-8, 1.0, 0.0, in.str());
    add_tolerances(r, options);
    r.add_diagnostic("slope_lhs", fit.slope_lhs);
    r.add_diagnostic("slope_rhs", fit.slope_rhs);
    r.add_diagnostic("expected_lhs", fit.expected_lhs);
    r.add_diagnostic("expected_rhs", fit.expected_rhs);
    r.add_diagnostic("balanced", fit.balanced);
    const auto failed = std::count_if(fit.points.begin(), fit.points.end(), [](const auto& pt) { return !pt.ok; });
    r.add_diagnostic("failed_points", static_cast<double>(failed));
    return r;
}

VerificationReport check_trace_radial(const RadialProfile& g, const ExponentTuple& a, const ExponentTuple& b,
                                      double p, const CheckOptions& options) {
    JsonWriter in;
    in.begin_object().field("check", "trace").field("profile", g.name()).key("A").raw(to_json(a));
    in.key("B").raw(to_json(b)).field("p", p).field("variant", to_string(options.trace_variant)).end_object();

    const double q = trace_exponent(a, b, p);
    const auto bounds = trace_bounds(a, b, p, q, options.trace_variant);
    const double dim = effective_dimension(a);
    const double dim_r = effective_dimension(b);

    RadialMoment lhs, rhs;
    try {
        lhs = radial_moment(g, ProfileChannel::value, dim_r - 1.0, q, options.quadrature);
        rhs = radial_moment(g, ProfileChannel::derivative, dim - 1.0, p, options.quadrature);
    } catch (const NumericalError& e) {
        auto r = inconclusive_report(InequalityId::trace, in.str(), e.what());
        add_tolerances(r, options);
        return r;
    }
    const double l = lhs.root(1.0, q);
    const double rr = rhs.root(1.0, p);
    auto r = make_report(InequalityId::trace, l, rr, bounds.m * bounds.q_factor, options.slack, in.str());
    add_tolerances(r, options);
    r.add_diagnostic("q", q);
    r.add_diagnostic("M", bounds.m);
    r.add_diagnostic("Q", bounds.q_factor);
    r.add_diagnostic("W_sample", rr > 0.0 ? l / rr : nan);
    r.add_diagnostic("q_at_least_p", bounds.q_at_least_p);
    r.add_diagnostic("variant", std::string(to_string(options.trace_variant)));
    add_quadrature(r, "lhs", lhs.diagnostics);
    add_quadrature(r, "rhs", rhs.diagnostics);
    if (!g.is_compact()) r.add_diagnostic("decaying_extension", true);
    return r;
}

double measured_modulus(const RadialProfile& u, double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw InputError("modulus needs finite delta > 0");
    const double radius = u.support().radius;
    const double extent = u.is_compact() ? radius : 1e3 * radius;

    std::vector<double> rs;
    const double dense = u.is_compact() ? radius : 8.0 * radius;
    for (int i = 0; i <= 4000; ++i) rs.push_back(dense * i / 4000.0);
    for (double r = 1e-6 * radius; r < extent; r *= 1.05) rs.push_back(r);
    for (double b : u.breakpoints())
        for (double off : {-delta, 0.0})
            if (b + off >= 0.0) rs.push_back(b + off);

    constexpr int sub = 32;
    auto window = [&](double r) {
        const double ur = u.value(r);
        double w = 0.0;
        for (int j = 1; j <= sub; ++j) w = std::max(w, std::abs(u.value(r + delta * j / sub) - ur));
        return w;
    };
    double best = 0.0;
    double best_r = 0.0;
    for (double r : rs) {
        const double w = window(r);
        if (w > best) {
            best = w;
            best_r = r;
        }
    }
    // Local refinement around the best start point.
    const double h = std::max(dense / 4000.0, 1e-3 * delta);
    for (int i = -200; i <= 200; ++i) {
        const double r = best_r + h * i / 200.0;
        if (r < 0.0) continue;
        best = std::max(best, window(r));
    }
    return best;
}

VerificationReport check_morrey(const RadialProfile& u, const PsiFunction& psi, const ExponentTuple& a, double c2,
                                double delta, const CheckOptions& options) {
    if (!(c2 > 0.0) || !std::isfinite(c2)) throw InputError("C2 must be positive and finite");
    JsonWriter in;
    in.begin_object().field("check", "morrey").field("profile", u.name()).key("A").raw(to_json(a));
    in.key("psi").raw(psi.to_json()).field("C2", c2).field("delta", delta).end_object();

    MorreyBound bound;
    try {
        bound = morrey_bound(u, psi, a, 1.0, delta, options.quadrature);
    } catch (const NumericalError& e) {
        auto r = inconclusive_report(InequalityId::morrey, in.str(), e.what());
        add_tolerances(r, options);
        return r;
    }
    const double omega = measured_modulus(u, delta);
    auto r = make_report(InequalityId::morrey, omega, bound.value, c2, options.slack, in.str());
    add_tolerances(r, options);
    if (bound.inconclusive) r.add_diagnostic("reason", std::string("gradient GLS norm is infinite"));
    r.add_diagnostic("gradient_gls_norm", bound.gradient_norm);
    r.add_diagnostic("fundamental", bound.fundamental);
    r.add_diagnostic("gradient_argmax_p", bound.gradient_detail.argmax);
    r.add_diagnostic("gradient_at_boundary", bound.gradient_detail.at_boundary);
    if (!u.is_compact()) r.add_diagnostic("decaying_extension", true);
    return r;
}

MorreyCalibration calibrate_morrey_c2(std::span<const RadialProfile> profiles, const PsiFunction& psi,
                                      const ExponentTuple& a, std::span<const double> deltas,
                                      const QuadratureOptions& options) {
    if (profiles.empty() || deltas.empty()) throw InputError("calibration needs profiles and deltas");
    MorreyCalibration out;
    for (const auto& u : profiles)
        for (double delta : deltas) {
            const auto bound = morrey_bound(u, psi, a, 1.0, delta, options);
            if (bound.inconclusive || !(bound.value > 0.0)) continue;
            const double need = measured_modulus(u, delta) / bound.value;
            if (need > out.c2) {
                out.c2 = need;
                out.profile = u.name();
                out.delta = delta;
            }
        }
    if (!(out.c2 > 0.0)) throw NumericalError("calibration battery produced no usable (profile, delta) pair");
    return out;
}

ProfileFamily::ProfileFamily(std::string name, Generator generator, std::vector<std::pair<double, double>> box)
    : name_(std::move(name)), generator_(std::move(generator)), box_(std::move(box)) {
    if (box_.empty()) throw InputError("family '" + name_ + "' needs a non-empty parameter box");
    for (const auto& [lo, hi] : box_)
        if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo)
            throw InputError("family '" + name_ + "' has an invalid box interval");
}

std::vector<std::vector<double>> ProfileFamily::sample_parameters(std::size_t n, std::uint64_t seed) const {
    const std::size_t dim = box_.size();
    boost::random::sobol qrng(dim);
    std::mt19937_64 rng(seed);
    std::vector<double> shift(dim);
    for (double& s : shift) s = static_cast<double>(rng() >> 11) * 0x1p-53;

    std::vector<std::vector<double>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> x(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            // Boost starts after the origin; putting it back first keeps
            // every 2^k-point prefix a balanced net.
            const double v = i == 0 ? 0.0 : static_cast<double>(qrng() >> 11) * 0x1p-53;
            double u = v + shift[j];
            if (u >= 1.0) u -= 1.0;
            x[j] = box_[j].first + u * (box_[j].second - box_[j].first);
        }
        out.push_back(std::move(x));
    }
    return out;
}

std::vector<RadialProfile> ProfileFamily::sample(std::size_t n, std::uint64_t seed) const {
    std::vector<RadialProfile> out;
    out.reserve(n);
    for (const auto& x : sample_parameters(n, seed)) out.push_back(generator_(x));
    return out;
}

ProfileFamily make_family(const std::string& name, std::vector<std::pair<double, double>> box) {
    auto pick = [&](std::vector<std::pair<double, double>> def) {
        if (box.empty()) return def;
        if (box.size() != def.size())
            throw InputError("family '" + name + "' needs a box with " + std::to_string(def.size()) + " intervals");
        return box;
    };
    if (name == "bump")
        return {name, [](std::span<const double> x) { return profiles::bump(x[0], x[1] * x[0]); },
                pick({{0.5, 2.0}, {0.1, 1.0}})};
    if (name == "gaussian")
        return {name, [](std::span<const double> x) { return profiles::gaussian(x[0]); }, pick({{0.3, 3.0}})};
    if (name == "tent")
        return {name, [](std::span<const double> x) { return profiles::tent(x[0]); }, pick({{0.5, 2.0}})};
    if (name == "power-tail")
        return {name, [](std::span<const double> x) { return profiles::power_tail(x[0]); }, pick({{4.0, 8.0}})};
    if (name == "extremal")
        return {name, [](std::span<const double> x) { return extremal_profile(x[0], x[1]); },
                pick({{3.0, 6.0}, {1.2, 2.5}})};
    throw InputError("unknown family '" + name + "' (expected bump, gaussian, tent, power-tail, extremal)");
}

} // namespace monosob
