#include "monosob/weighted_calculus.hpp"

#include "monosob/errors.hpp"
#include "monosob/json_writer.hpp"
#include "monosob/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace monosob {
namespace {

constexpr int near_zero_levels = 30;
constexpr int max_doublings = 40;
constexpr double tail_rel_threshold = 1e-12;
constexpr double geometric_ratio_tol = 1e-9;

double channel_value(const RadialProfile& u, ProfileChannel c, double r) {
    return c == ProfileChannel::value ? u.value(r) : u.derivative(r);
}

// Largest |g| over a sample grid; used only to keep |g/scale|^p in range.
double sample_scale(const RadialProfile& u, ProfileChannel c, double outer) {
    double m = 0.0;
    const double base = u.support().radius;
    auto take = [&](double r) {
        const double g = std::abs(channel_value(u, c, r));
        if (std::isfinite(g)) m = std::max(m, g);
    };
    for (int i = 0; i <= 512; ++i) take(base * i / 512.0);
    for (double r = base * 1e-9; r < outer; r *= 1.25) take(r);
    return m;
}

} // namespace

double angular_mass(const ExponentTuple& a) {
    double lg = 0.0;
    for (double ai : a.entries()) lg += log_gamma((ai + 1.0) / 2.0);
    return 2.0 * std::exp(lg - log_gamma(effective_dimension(a) / 2.0));
}

double RadialMoment::root(double factor, double p) const {
    if (scale == 0.0 || scaled_integral == 0.0) return 0.0;
    return scale * std::pow(factor * scaled_integral, 1.0 / p);
}

RadialMoment radial_moment(const RadialProfile& u, ProfileChannel channel, double weight_power, double p,
                           const QuadratureOptions& options) {
    if (!(p > 0.0) || !std::isfinite(p)) throw InputError("moment exponent must be positive and finite");
    const auto& hint = u.support();
    const double base = hint.radius;
    const double cap = std::ldexp(std::max(1.0, base), max_doublings);

    RadialMoment out;
    out.scale = sample_scale(u, channel, hint.kind == SupportKind::compact ? base : 4.0 * base * 1048576.0);
    if (out.scale == 0.0) {
        out.diagnostics.truncation_radius = base;
        return out;
    }
    const double log_scale = std::log(out.scale);
    auto integrand = [&](double r) {
        const double g = std::abs(channel_value(u, channel, r));
        if (g == 0.0) return 0.0;
        return std::exp(weight_power * std::log(r) + p * (std::log(g) - log_scale));
    };

    // Geometric grading towards the origin resolves rho^(D-1) type
    // behaviour without a dedicated singular rule.
    std::vector<double> pts{0.0};
    const double inner = hint.kind == SupportKind::compact ? base : 4.0 * base;
    for (int k = near_zero_levels; k >= 1; --k) pts.push_back(std::ldexp(inner, -k));
    pts.push_back(inner);

    double truncation = inner;
    double tail_remainder = 0.0;
    if (hint.kind == SupportKind::decaying) {
        double running = 0.0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) running += gauss_kronrod_21(integrand, pts[i], pts[i + 1]).value;
        double previous = -1.0;
        double previous_ratio = -1.0;
        int growing = 0;
        bool converged = false;
        double last = 0.0;
        while (truncation < std::max(cap, 2.0 * options.min_truncation_radius)) {
            const double next = 2.0 * truncation;
            last = gauss_kronrod_21(integrand, truncation, next).value;
            running += last;
            pts.push_back(next);
            truncation = next;
            if (!std::isfinite(running)) throw DomainError("radial integral of '" + u.name() + "' diverges");
            if (last <= tail_rel_threshold * running && truncation >= options.min_truncation_radius) {
                converged = true;
                break;
            }
            // Doubling panels of a power-law tail form a geometric series;
            // once the ratio has settled the remainder is summed in closed form.
            const double ratio = previous > 0.0 ? last / previous : -1.0;
            if (ratio > 0.0 && ratio < 1.0 && previous_ratio > 0.0 &&
                std::abs(ratio / previous_ratio - 1.0) < geometric_ratio_tol &&
                truncation >= options.min_truncation_radius) {
                tail_remainder = last * ratio / (1.0 - ratio);
                converged = true;
                break;
            }
            previous_ratio = ratio;
            growing = (previous >= 0.0 && last >= previous) ? growing + 1 : 0;
            if (growing >= 6)
                throw DomainError("radial integral of '" + u.name() + "' diverges (tail contributions not decaying at rho = " +
                                  format_double(truncation) + ")");
            previous = last;
        }
        out.diagnostics.tail_converged = converged;
        out.diagnostics.tail_fraction = running > 0.0 ? std::max(last, tail_remainder) / running : 0.0;
        if (!converged && out.diagnostics.tail_fraction > 1e-9)
            throw NumericalError("tail of '" + u.name() + "' not resolved at the truncation cap (last panel " +
                                 format_double(out.diagnostics.tail_fraction) + " of total)");
    }
    // The graded panels [2^-(k+1) R, 2^-k R] of an integrand ~ rho^(-1+e)
    // shrink by 2^-e: non-shrinking panels mean divergence at the origin,
    // settled ratios let the innermost piece be summed in closed form.
    double head_remainder = 0.0;
    bool head_summed = false;
    {
        std::vector<double> level;
        for (int k = 1; k <= near_zero_levels; ++k)
            level.push_back(gauss_kronrod_21(integrand, std::ldexp(inner, -k - 1), std::ldexp(inner, -k)).value);
        const std::size_t n = level.size();
        if (level[n - 1] > 0.0 && level[n - 2] > 0.0 && level[n - 3] > 0.0) {
            const double r1 = level[n - 2] / level[n - 3];
            const double r2 = level[n - 1] / level[n - 2];
            bool flat = true;
            for (std::size_t i = n - 6; i + 1 < n; ++i)
                if (!(level[i] > 0.0) || level[i + 1] < level[i] * (1.0 - 1e-12)) flat = false;
            if (flat)
                throw DomainError("radial integral of '" + u.name() + "' diverges at the origin");
            if (r2 < 1.0 && std::abs(r2 / r1 - 1.0) < geometric_ratio_tol * 1e3) {
                head_remainder = level[n - 1] / (1.0 - r2);
                head_summed = true;
            }
        }
    }
    for (double b : u.breakpoints())
        if (b > 0.0 && b < truncation) pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    // pts[1] = 2^-near_zero_levels inner; dropping pts[0] = 0 leaves
    // [0, pts[1]] to the closed-form remainder.
    if (head_summed) pts.erase(pts.begin());

    const auto r = integrate(integrand, pts, options);
    out.scaled_integral = r.value + tail_remainder + head_remainder;
    out.diagnostics.panels = r.panels;
    out.diagnostics.evaluations = r.evaluations;
    out.diagnostics.achieved_rel_error = r.value != 0.0 ? r.abs_error / std::abs(r.value) : r.abs_error;
    out.diagnostics.truncation_radius = truncation;
    if (!r.converged)
        throw NumericalError("quadrature for '" + u.name() + "' missed tolerance: relative error " +
                             format_double(out.diagnostics.achieved_rel_error) + " after " + std::to_string(r.panels) +
                             " panels");
    return out;
}

namespace {

NormResult norm_impl(const RadialProfile& u, ProfileChannel channel, const ExponentTuple& a, double p,
                     const QuadratureOptions& options) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw InputError("norm exponent must be finite and at least 1");
    const double d = effective_dimension(a);
    const auto moment = radial_moment(u, channel, d - 1.0, p, options);
    return {moment.root(angular_mass(a), p), moment.diagnostics};
}

} // namespace

NormResult weighted_lp_norm_ex(const RadialProfile& u, const ExponentTuple& a, double p,
                               const QuadratureOptions& options) {
    return norm_impl(u, ProfileChannel::value, a, p, options);
}

NormResult weighted_gradient_norm_ex(const RadialProfile& u, const ExponentTuple& a, double p,
                                     const QuadratureOptions& options) {
    return norm_impl(u, ProfileChannel::derivative, a, p, options);
}

double proposal_scale_for(const RadialProfile& u, double p) {
    const double r = u.support().radius;
    if (u.is_compact()) return 0.5 * r;
    // Wide enough that the Gaussian dominates |u|^p in the tails.
    return std::isinf(u.support().tail_exponent) ? r : 2.0 * r * std::max(1.0, 1.0 / std::sqrt(p));
}

MonteCarloResult monte_carlo_weighted_integral(const std::function<double(std::span<const double>)>& f,
                                               const ExponentTuple& a, const SamplerConfig& config) {
    if (config.samples < 2) throw InputError("Monte Carlo needs at least two samples");
    if (!(config.scale > 0.0)) throw InputError("proposal scale must be positive");
    const std::size_t m = a.dimension();
    const double s2 = config.scale * config.scale;
    const double log_norm = 0.5 * static_cast<double>(m) * std::log(2.0 * std::numbers::pi * s2);

    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> normal(0.0, config.scale);
    std::vector<double> x(m);

    double sum = 0.0;
    double sum_sq = 0.0;
    double sum_abs = 0.0;
    for (std::size_t n = 0; n < config.samples; ++n) {
        double r2 = 0.0;
        double log_w = log_norm;
        bool on_axis = false;
        for (std::size_t i = 0; i < m; ++i) {
            x[i] = normal(rng);
            r2 += x[i] * x[i];
            if (a[i] > 0.0) {
                if (x[i] == 0.0) on_axis = true;
                else log_w += a[i] * std::log(std::abs(x[i]));
            }
        }
        if (on_axis) continue; // weight vanishes
        log_w += 0.5 * r2 / s2;
        const double fx = f(x);
        if (fx == 0.0) continue;
        const double y = fx * std::exp(log_w);
        if (!std::isfinite(y)) throw NumericalError("importance weight overflow: proposal does not cover the integrand");
        sum += y;
        sum_sq += y * y;
        sum_abs += std::abs(y);
    }
    const double n = static_cast<double>(config.samples);
    MonteCarloResult out;
    out.estimate = sum / n;
    const double var = std::max(0.0, (sum_sq / n - out.estimate * out.estimate) * n / (n - 1.0));
    out.standard_error = std::sqrt(var / n);
    out.effective_sample_size = sum_sq > 0.0 ? sum_abs * sum_abs / sum_sq : 0.0;
    if (sum_sq > 0.0 && out.effective_sample_size < 0.01 * n)
        throw NumericalError("importance weights degenerate: effective sample size " +
                             format_double(out.effective_sample_size) + " of " + std::to_string(config.samples));
    return out;
}

} // namespace monosob
