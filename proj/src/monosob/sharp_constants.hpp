#pragma once

#include "monosob/exponent_tuple.hpp"

#include <string_view>

namespace monosob {

/// Which algebraic form of the monomial constants C1 and C(p) to evaluate.
///
/// `corrected` is the sharp Sobolev constant: its p -> 1+ limit is C1 and at
/// A = 0 it coincides with Talenti's K_m(p). `printed` is the alternative
/// closed form (isoperimetric-style C1 with Gamma((1+D)/2) and the
/// D^(1/D - 1 - 1/p) factor), kept for comparison only.
enum class ConstantForm { corrected, printed };

/// Which form of the Hardy-bracket factor M to evaluate. `literal` is the
/// default and uses D_r^(-1/r) ((p-1)/(D-r))^(1-1/p);
/// `corrected` uses the Bradley functional D_r^(-1/q) ((p-1)/(D-p))^(1-1/p).
enum class TraceFormulaVariant { literal, corrected };

std::string_view to_string(ConstantForm f) noexcept;
std::string_view to_string(TraceFormulaVariant v) noexcept;
ConstantForm parse_constant_form(std::string_view s);
TraceFormulaVariant parse_trace_variant(std::string_view s);

/// Talenti's best constant for |f|_q <= K |Df|_p on R^m, m >= 3, p in [1, m).
double talenti_constant(int m, double p);

/// C1 for D(A) > 1. Throws DomainError for D <= 1.
double monomial_c1(const ExponentTuple& a, ConstantForm form = ConstantForm::corrected);
/// Same formula, admitting D(A) = 1 (the one-dimensional unweighted case).
double monomial_c1_relaxed(const ExponentTuple& a, ConstantForm form = ConstantForm::corrected);

/// C(p) for 1 < p < D(A).
double monomial_c(const ExponentTuple& a, double p, ConstantForm form = ConstantForm::corrected);

struct TraceBoundPair {
    double m;        // lower end of the bracket
    double q_factor; // Q >= 1
    double w_lower;  // = m
    double w_upper;  // = m * q_factor
    bool q_at_least_p; // Bradley's bracket is stated for q >= p
};

/// Bracket [M, M Q] for the optimal constant of the one-dimensional Hardy
/// reduction of the radial trace inequality. `a` lives on R^d, `b` on R^r.
TraceBoundPair trace_bounds(const ExponentTuple& a, const ExponentTuple& b, double p, double q,
                            TraceFormulaVariant variant = TraceFormulaVariant::literal);

} // namespace monosob
