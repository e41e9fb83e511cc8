#pragma once

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace monosob {

enum class PsiFamily { constant, power_endpoint, tabulated, transformed };

/// Generating function psi(p) > 0 of a Grand Lebesgue Space, defined on the
/// open interval (a, b) with 1 <= a < b <= inf. The shipped families are
/// normalised to inf psi = 1; transformed functions (zeta, psi^(D)) are not.
class PsiFunction {
public:
    using Fn = std::function<double(double)>;

    static PsiFunction constant(double a, double b);
    /// (p - a)^(-alpha) (b - p)^(-beta), alpha, beta >= 0, divided by its
    /// infimum. Requires finite b unless alpha = beta = 0.
    static PsiFunction power_endpoint(double a, double b, double alpha, double beta);
    /// Monotone (Fritsch-Carlson) cubic through (p_i, psi_i) with p strictly
    /// increasing; support is (p_first, p_last); divided by min psi_i.
    static PsiFunction tabulated(std::vector<std::pair<double, double>> points);
    /// Wraps an arbitrary positive function; used for derived generating
    /// functions. `json` describes it for reports.
    static PsiFunction transformed(double a, double b, Fn eval, std::string json);

    /// Throws DomainError outside [a, b].
    double operator()(double p) const;

    double lower() const noexcept { return a_; }
    double upper() const noexcept { return b_; }
    bool upper_is_infinite() const noexcept { return b_ == std::numeric_limits<double>::infinity(); }
    PsiFamily family() const noexcept { return family_; }
    /// Config-style JSON, e.g. {"family":"constant","a":1,"b":3}.
    const std::string& to_json() const noexcept { return json_; }

private:
    PsiFunction(PsiFamily family, double a, double b, Fn eval, std::string json)
        : family_(family), a_(a), b_(b), eval_(std::move(eval)), json_(std::move(json)) {}

    PsiFamily family_;
    double a_;
    double b_;
    Fn eval_;
    std::string json_;
};

/// Parses {"family":"constant","a":..,"b":..},
/// {"family":"power-endpoint","a":..,"b":..,"alpha":..,"beta":..} or
/// {"family":"tabulated","points":[[p,psi],...]}. "b" may be the string
/// "inf". Unknown keys are rejected.
PsiFunction parse_psi(const std::string& json);

} // namespace monosob
