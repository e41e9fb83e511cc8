#pragma once

#include "monosob/exponent_tuple.hpp"
#include "monosob/grand_lebesgue.hpp"
#include "monosob/psi_function.hpp"
#include "monosob/quadrature.hpp"
#include "monosob/radial_profile.hpp"
#include "monosob/report.hpp"
#include "monosob/sharp_constants.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace monosob {

struct CheckOptions {
    ConstantForm constant_form = ConstantForm::corrected;
    TraceFormulaVariant trace_variant = TraceFormulaVariant::literal;
    double slack = 1e-6;
    QuadratureOptions quadrature;
};

/// (1 + rho^p')^((p - D)/p), p' = p/(p - 1), decaying with tail exponent
/// p'(D - p)/p. Requires 1 < p < D.
RadialProfile extremal_profile(double dim, double p);

/// |u|_{q, mu_A} <= C(p) |grad u|_{p, mu_A} with q = D p / (D - p).
/// Inconclusive when the gradient norm vanishes or quadrature fails.
VerificationReport check_sobolev(const RadialProfile& u, const ExponentTuple& a, double p,
                                 const CheckOptions& options = {});

/// ||u||_{G(zeta)} <= ||grad u||_{G(psi)}. Inconclusive when the right-hand
/// side is infinite or zero.
VerificationReport verify_gls_sobolev(const RadialProfile& u, const PsiFunction& psi, const ExponentTuple& a,
                                      const CheckOptions& options = {});

struct ScalingPoint {
    double lambda = 0.0;
    double lhs = 0.0; // |u_lambda|_{q, mu_B}
    double rhs = 0.0; // |grad u_lambda|_{p, mu_A}
    bool ok = false;
    std::string error;
};

struct ScalingFit {
    double slope_lhs = 0.0;
    double slope_rhs = 0.0;
    double expected_lhs = 0.0; // -D(B)/q
    double expected_rhs = 0.0; // 1 - D(A)/p
    bool balanced = false;     // |slope_lhs - slope_rhs| <= 1e-8
    std::vector<ScalingPoint> points;
};

/// Nine log-spaced dilation factors spanning [1/8, 8].
std::vector<double> default_lambda_grid();

/// Least-squares slopes of log L and log R against log lambda. Points whose
/// quadrature fails are kept with `ok = false`; fewer than two usable
/// points is an error (InputError for a degenerate grid, NumericalError
/// when failures leave too few).
ScalingFit fit_scaling_exponents(const RadialProfile& u, const ExponentTuple& a, const ExponentTuple& b, double p,
                                 double q, std::span<const double> lambdas, const QuadratureOptions& options = {});

/// Report with lhs = |slope_lhs - slope_rhs|, rhs = 1e-8, constant 1, no slack.
VerificationReport check_scaling(const RadialProfile& u, const ExponentTuple& a, const ExponentTuple& b, double p,
                                 double q, std::span<const double> lambdas, const CheckOptions& options = {});

/// Radial Hardy reduction of the trace inequality:
///   [int s^(D_r - 1) |g|^q ds]^(1/q) <= M Q [int s^(D - 1) |g'|^p ds]^(1/p),
/// q = D_r(B) p / (D(A) - p). `a` lives on R^d and `b` on R^r, r < d.
VerificationReport check_trace_radial(const RadialProfile& g, const ExponentTuple& a, const ExponentTuple& b,
                                      double p, const CheckOptions& options = {});

/// Sampled omega(u, delta) = sup |u(x) - u(y)| over |x - y| <= delta. For a
/// radial u this is the sup of |u(r + s) - u(r)| over r >= 0, 0 <= s <= delta.
double measured_modulus(const RadialProfile& u, double delta);

/// omega(u, delta) <= C2 * [||grad u||_{G(psi)} delta / phi(psi^(D) with C2 = 1, delta^D)].
/// The report carries lhs = omega, rhs = the bound at C2 = 1, constant = C2.
VerificationReport check_morrey(const RadialProfile& u, const PsiFunction& psi, const ExponentTuple& a, double c2,
                                double delta, const CheckOptions& options = {});

struct MorreyCalibration {
    double c2 = 0.0; // smallest C2 with omega <= bound on the battery
    std::string profile;
    double delta = 0.0;
};

/// Estimates the smallest C2 for which every (profile, delta) pair satisfies
/// the Morrey bound. The result is reported, never applied implicitly.
MorreyCalibration calibrate_morrey_c2(std::span<const RadialProfile> profiles, const PsiFunction& psi,
                                      const ExponentTuple& a, std::span<const double> deltas,
                                      const QuadratureOptions& options = {});

/// A parameterised profile constructor sampled over a box with a shifted
/// Sobol sequence.
class ProfileFamily {
public:
    using Generator = std::function<RadialProfile(std::span<const double>)>;

    ProfileFamily(std::string name, Generator generator, std::vector<std::pair<double, double>> box);

    const std::string& name() const noexcept { return name_; }
    const std::vector<std::pair<double, double>>& box() const noexcept { return box_; }

    /// n parameter vectors; deterministic in (n, seed).
    std::vector<std::vector<double>> sample_parameters(std::size_t n, std::uint64_t seed) const;
    std::vector<RadialProfile> sample(std::size_t n, std::uint64_t seed) const;

private:
    std::string name_;
    Generator generator_;
    std::vector<std::pair<double, double>> box_;
};

/// Families by name: bump (R, width fraction), gaussian (s), tent (R),
/// power-tail (s), extremal (D, p). An empty box selects the default box.
ProfileFamily make_family(const std::string& name, std::vector<std::pair<double, double>> box = {});

} // namespace monosob
