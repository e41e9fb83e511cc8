#pragma once

#include "monosob/exponent_tuple.hpp"
#include "monosob/quadrature.hpp"
#include "monosob/radial_profile.hpp"

#include <cstdint>
#include <functional>
#include <span>

namespace monosob {

/// sigma_A = integral over the unit sphere of prod |theta_i|^A(i)
///         = 2 prod Gamma((A(i)+1)/2) / Gamma(D(A)/2).
double angular_mass(const ExponentTuple& a);

/// Monomial measure mu_A together with its cached angular mass.
class WeightedMeasure {
public:
    explicit WeightedMeasure(ExponentTuple a) : a_(std::move(a)), sigma_(monosob::angular_mass(a_)) {}
    const ExponentTuple& exponents() const noexcept { return a_; }
    double angular_mass() const noexcept { return sigma_; }
    double dimension() const noexcept { return effective_dimension(a_); }

private:
    ExponentTuple a_;
    double sigma_;
};

struct QuadratureDiagnostics {
    int panels = 0;
    long evaluations = 0;
    double achieved_rel_error = 0.0;
    double truncation_radius = 0.0;
    double tail_fraction = 0.0; // last doubling panel / running total
    bool tail_converged = true;
};

/// Result of a one-dimensional moment
///   integral_0^inf rho^(weight_power) |g(rho)|^p d rho,
/// represented as scale^p * scaled_integral so that large p does not
/// underflow.
struct RadialMoment {
    double scale = 0.0;
    double scaled_integral = 0.0;
    QuadratureDiagnostics diagnostics;

    /// (factor * integral)^(1/p).
    double root(double factor, double p) const;
};

enum class ProfileChannel { value, derivative };

/// Integrates rho^(weight_power) |g|^p over [0, inf) where g is the value or
/// the derivative of `u`. Decaying profiles are truncated where a doubling
/// panel adds less than 1e-12 of the running total, or where successive
/// panels settle into a geometric ratio (power-law tail, remainder summed
/// in closed form); cap 2^40 R. Throws
/// DomainError if the tail does not decay and NumericalError if the
/// adaptive quadrature misses `options.rel_tol`.
RadialMoment radial_moment(const RadialProfile& u, ProfileChannel channel, double weight_power, double p,
                           const QuadratureOptions& options = {});

struct NormResult {
    double value = 0.0;
    QuadratureDiagnostics diagnostics;
};

/// |u|_{p, mu_A} of the radial function u(|x|) on R^m.
NormResult weighted_lp_norm_ex(const RadialProfile& u, const ExponentTuple& a, double p,
                               const QuadratureOptions& options = {});
/// |grad u|_{p, mu_A} = |u'|_{p, mu_A} for radial u.
NormResult weighted_gradient_norm_ex(const RadialProfile& u, const ExponentTuple& a, double p,
                                     const QuadratureOptions& options = {});

inline double weighted_lp_norm(const RadialProfile& u, const ExponentTuple& a, double p) {
    return weighted_lp_norm_ex(u, a, p).value;
}
inline double weighted_gradient_norm(const RadialProfile& u, const ExponentTuple& a, double p) {
    return weighted_gradient_norm_ex(u, a, p).value;
}

struct SamplerConfig {
    std::size_t samples = 100000;
    std::uint64_t seed = 1;
    double scale = 1.0; // standard deviation of the isotropic Gaussian proposal
};

/// Proposal scale matched to a profile's support hint.
double proposal_scale_for(const RadialProfile& u, double p);

struct MonteCarloResult {
    double estimate = 0.0;
    double standard_error = 0.0;
    double effective_sample_size = 0.0;
};

/// Importance-sampled estimate of integral_{R^m} f(x) prod |x_i|^A(i) dx
/// with an isotropic Gaussian proposal. Deterministic for a fixed seed.
/// Throws NumericalError when the importance weights degenerate (effective
/// sample size below 1% of the draws).
MonteCarloResult monte_carlo_weighted_integral(const std::function<double(std::span<const double>)>& f,
                                               const ExponentTuple& a, const SamplerConfig& config);

} // namespace monosob
