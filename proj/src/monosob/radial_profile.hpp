#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace monosob {

enum class SupportKind { compact, decaying };

/// Where a profile lives. For compact support `radius` is R_max and the
/// profile vanishes beyond it. For decaying profiles `radius` is the scale
/// beyond which |u| <= c rho^(-tail_exponent); an infinite tail exponent
/// marks super-polynomial decay.
struct SupportHint {
    SupportKind kind = SupportKind::compact;
    double radius = 1.0;
    double tail_exponent = std::numeric_limits<double>::infinity();

    static SupportHint compact(double r) { return {SupportKind::compact, r, std::numeric_limits<double>::infinity()}; }
    static SupportHint decaying(double r, double s) { return {SupportKind::decaying, r, s}; }
};

/// A radial function rho -> u(rho) on [0, inf) together with its derivative.
/// Immutable after construction and safe to share between threads.
class RadialProfile {
public:
    using Fn = std::function<double(double)>;

    /// With `check_derivative` the supplied derivative is compared with a
    /// central difference (h = 1e-6 (1 + rho)) at 32 points away from the
    /// breakpoints; a mismatch above 1e-4 relative throws InputError.
    RadialProfile(std::string name, Fn value, Fn derivative, SupportHint support,
                  std::vector<double> breakpoints = {}, bool check_derivative = true);

    double value(double rho) const { return value_(rho); }
    double derivative(double rho) const { return derivative_(rho); }

    const std::string& name() const noexcept { return name_; }
    const SupportHint& support() const noexcept { return support_; }
    bool is_compact() const noexcept { return support_.kind == SupportKind::compact; }
    /// Kinks and plateau edges; quadrature panels are aligned to them.
    std::span<const double> breakpoints() const noexcept { return breakpoints_; }

    /// c * u.
    RadialProfile scaled(double c) const;

    /// Sample points used by the derivative self-check.
    std::vector<double> check_points() const;

private:
    std::string name_;
    Fn value_;
    Fn derivative_;
    SupportHint support_;
    std::vector<double> breakpoints_;
};

/// rho -> u(lambda rho), derivative lambda u'(lambda rho). Throws InputError
/// for lambda <= 0.
RadialProfile dilate(const RadialProfile& u, double lambda);

namespace profiles {

/// Smooth bump of radius R: equal to 1 on [0, R - w], then
/// exp(1 - 1/(1 - t^2)) with t = (rho - R + w)/w, zero beyond R. w = R gives
/// the classical bump exp(1 - 1/(1 - (rho/R)^2)).
RadialProfile bump(double radius, double width);
inline RadialProfile bump(double radius) { return bump(radius, radius); }
/// max(1 - rho/R, 0).
RadialProfile tent(double radius);
/// exp(-(rho/s)^2).
RadialProfile gaussian(double scale);
/// (1 + rho^2)^(-s/2).
RadialProfile power_tail(double s);
/// Indicator of [0, R] with zero derivative; admitted for norm tests only.
RadialProfile step(double radius);

} // namespace profiles

/// Parses "name:param1,param2", e.g. "bump:1.0", "bump:2,0.5", "tent:1",
/// "gaussian:0.7", "power-tail:3", "extremal:5,2".
RadialProfile parse_profile(const std::string& spec);

} // namespace monosob
