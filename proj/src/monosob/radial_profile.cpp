#include "monosob/radial_profile.hpp"

#include "monosob/errors.hpp"
#include "monosob/json_writer.hpp"
#include "monosob/verifier.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace monosob {

RadialProfile::RadialProfile(std::string name, Fn value, Fn derivative, SupportHint support,
                             std::vector<double> breakpoints, bool check_derivative)
    : name_(std::move(name)), value_(std::move(value)), derivative_(std::move(derivative)), support_(support),
      breakpoints_(std::move(breakpoints)) {
    if (!value_ || !derivative_) throw InputError("profile '" + name_ + "' needs both value and derivative");
    if (!(support_.radius > 0.0) || !std::isfinite(support_.radius))
        throw InputError("profile '" + name_ + "' needs a positive finite support radius");
    if (support_.kind == SupportKind::decaying && !(support_.tail_exponent > 0.0))
        throw InputError("decaying profile '" + name_ + "' needs a positive tail exponent");
    std::sort(breakpoints_.begin(), breakpoints_.end());
    breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());
    if (!check_derivative) return;

    const auto pts = check_points();
    double scale = 0.0;
    for (double r : pts) {
        const double v = value_(r);
        if (!std::isfinite(v)) throw InputError("profile '" + name_ + "' is not finite at rho = " + format_double(r));
        scale = std::max(scale, std::abs(v));
    }
    for (double r : pts) {
        const double h = 1e-6 * (1.0 + r);
        const bool near_kink = std::any_of(breakpoints_.begin(), breakpoints_.end(),
                                           [&](double b) { return std::abs(r - b) < 20.0 * h; });
        if (near_kink || r - h <= 0.0) continue;
        const double fd = (value_(r + h) - value_(r - h)) / (2.0 * h);
        const double d = derivative_(r);
        if (!std::isfinite(d)) throw InputError("profile '" + name_ + "' derivative is not finite");
        const double tol = 1e-4 * std::max(std::abs(d), std::abs(fd)) + 1e-8 * scale / (1.0 + r);
        if (std::abs(fd - d) > tol)
            throw InputError("profile '" + name_ + "': supplied derivative " + format_double(d) +
                             " disagrees with finite difference " + format_double(fd) + " at rho = " +
                             format_double(r));
    }
}

std::vector<double> RadialProfile::check_points() const {
    std::vector<double> pts;
    pts.reserve(32);
    const double span = is_compact() ? support_.radius : 4.0 * support_.radius;
    for (int i = 0; i < 32; ++i) pts.push_back(span * (i + 0.5) / 32.0);
    return pts;
}

RadialProfile RadialProfile::scaled(double c) const {
    if (!std::isfinite(c)) throw InputError("scale factor must be finite");
    auto v = value_;
    auto d = derivative_;
    return RadialProfile(format_double(c) + "*" + name_, [v, c](double r) { return c * v(r); },
                         [d, c](double r) { return c * d(r); }, support_, breakpoints_, false);
}

RadialProfile dilate(const RadialProfile& u, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw InputError("dilation factor must be positive and finite, got " + format_double(lambda));
    auto support = u.support();
    support.radius /= lambda;
    std::vector<double> bps;
    for (double b : u.breakpoints()) bps.push_back(b / lambda);
    return RadialProfile(
        u.name() + "@" + format_double(lambda), [u, lambda](double r) { return u.value(lambda * r); },
        [u, lambda](double r) { return lambda * u.derivative(lambda * r); }, support, std::move(bps), false);
}

namespace profiles {

RadialProfile bump(double radius, double width) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InputError("bump radius must be positive");
    if (!(width > 0.0) || width > radius) throw InputError("bump width must lie in (0, R]");
    const double start = radius - width;
    auto value = [=](double r) {
        if (r <= start) return 1.0;
        if (r >= radius) return 0.0;
        const double t = (r - start) / width;
        return std::exp(1.0 - 1.0 / (1.0 - t * t));
    };
    auto deriv = [=](double r) {
        if (r <= start || r >= radius) return 0.0;
        const double t = (r - start) / width;
        const double s = 1.0 - t * t;
        return std::exp(1.0 - 1.0 / s) * (-2.0 * t / (s * s)) / width;
    };
    std::vector<double> bps{radius};
    if (start > 0.0) bps.push_back(start);
    const std::string name = width == radius ? "bump:" + format_double(radius)
                                             : "bump:" + format_double(radius) + "," + format_double(width);
    return RadialProfile(name, value, deriv, SupportHint::compact(radius), bps);
}

RadialProfile tent(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InputError("tent radius must be positive");
    return RadialProfile(
        "tent:" + format_double(radius), [=](double r) { return r < radius ? 1.0 - r / radius : 0.0; },
        [=](double r) { return r < radius ? -1.0 / radius : 0.0; }, SupportHint::compact(radius), {radius});
}

RadialProfile gaussian(double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale)) throw InputError("gaussian scale must be positive");
    return RadialProfile(
        "gaussian:" + format_double(scale), [=](double r) { return std::exp(-(r / scale) * (r / scale)); },
        [=](double r) { return -2.0 * r / (scale * scale) * std::exp(-(r / scale) * (r / scale)); },
        SupportHint::decaying(scale, std::numeric_limits<double>::infinity()));
}

RadialProfile power_tail(double s) {
    if (!(s > 0.0) || !std::isfinite(s)) throw InputError("power-tail exponent must be positive");
    return RadialProfile(
        "power-tail:" + format_double(s), [=](double r) { return std::pow(1.0 + r * r, -0.5 * s); },
        [=](double r) { return -s * r * std::pow(1.0 + r * r, -0.5 * s - 1.0); }, SupportHint::decaying(1.0, s));
}

RadialProfile step(double radius) {
    if (!(radius > 0.0)) throw InputError("step radius must be positive");
    return RadialProfile(
        "step:" + format_double(radius), [=](double r) { return r <= radius ? 1.0 : 0.0; },
        [](double) { return 0.0; }, SupportHint::compact(radius), {radius});
}

} // namespace profiles

namespace {

std::vector<double> parse_params(const std::string& text, const std::string& spec) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
            throw InputError("malformed parameter '" + tok + "' in profile '" + spec + "'");
        out.push_back(v);
    }
    return out;
}

void expect_count(const std::vector<double>& ps, std::size_t lo, std::size_t hi, const std::string& spec) {
    if (ps.size() < lo || ps.size() > hi) throw InputError("wrong number of parameters in profile '" + spec + "'");
}

} // namespace

RadialProfile parse_profile(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::vector<double> ps = colon == std::string::npos ? std::vector<double>{} : parse_params(spec.substr(colon + 1), spec);
    if (name == "bump") {
        expect_count(ps, 1, 2, spec);
        return ps.size() == 1 ? profiles::bump(ps[0]) : profiles::bump(ps[0], ps[1]);
    }
    if (name == "tent") {
        expect_count(ps, 1, 1, spec);
        return profiles::tent(ps[0]);
    }
    if (name == "gaussian") {
        expect_count(ps, 1, 1, spec);
        return profiles::gaussian(ps[0]);
    }
    if (name == "power-tail") {
        expect_count(ps, 1, 1, spec);
        return profiles::power_tail(ps[0]);
    }
    if (name == "extremal") {
        expect_count(ps, 2, 2, spec);
        return extremal_profile(ps[0], ps[1]);
    }
    throw InputError("unknown profile '" + name + "' (expected bump, tent, gaussian, power-tail, extremal)");
}

} // namespace monosob
