#include <doctest.h>

#include "monosob/errors.hpp"
#include "monosob/exponent_tuple.hpp"
#include "monosob/sharp_constants.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace monosob;

namespace {
bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }
} // namespace

TEST_CASE("Talenti constant against 50-digit evaluation") {
    for (int m : {3, 4, 5, 7, 10})
        for (double f : {0.0, 0.1, 0.5, 0.9}) {
            const double p = 1.0 + f * (m - 1.0);
            CAPTURE(m);
            CAPTURE(p);
            CHECK(rel_close(talenti_constant(m, p), oracle::talenti(m, p), 1e-12));
        }
    // The commonly quoted three-dimensional value at p = 2.
    CHECK(rel_close(talenti_constant(3, 2.0), 0.42726054286252666, 1e-13));
    CHECK(rel_close(talenti_constant(4, 1.0), std::pow(2.0, 0.25) / (4.0 * std::sqrt(std::numbers::pi)), 1e-13));
}

TEST_CASE("Talenti domain") {
    CHECK_THROWS_AS(talenti_constant(3, 3.0), DomainError);
    CHECK_THROWS_AS(talenti_constant(2, 1.5), DomainError);
    CHECK_THROWS_AS(talenti_constant(4, 0.5), DomainError);
    // Continuous on [1, m) and blowing up monotonically at m.
    double prev = 0.0;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-6}) {
        const double k = talenti_constant(4, 4.0 - eps);
        CHECK(k > prev);
        prev = k;
    }
}

TEST_CASE("C1 and C(p) against 50-digit evaluation") {
    const std::vector<std::vector<double>> tuples{{1, 2}, {0, 0, 0}, {0.5, 1.5, 1}, {3}, {0.25, 0, 2, 7}};
    for (const auto& t : tuples) {
        const ExponentTuple a(t);
        CHECK(rel_close(monomial_c1(a), oracle::c1_corrected(t), 1e-12));
        const double d = effective_dimension(a);
        for (double f : {0.05, 0.3, 0.6, 0.95}) {
            const double p = 1.0 + f * (d - 1.0);
            CHECK(rel_close(monomial_c(a, p), oracle::c_corrected(t, p), 1e-12));
        }
    }
    CHECK(rel_close(monomial_c(ExponentTuple({1, 2}), 2.0), oracle::c_corrected({1, 2}, 2.0), 1e-12));
}

TEST_CASE("corrected constants reduce to Talenti at A = 0") {
    for (int m : {3, 4, 5, 8})
        for (double p : {1.2, 1.5, 2.0, 2.9}) {
            if (p >= m) continue;
            CHECK(rel_close(monomial_c(ExponentTuple::zeros(m), p), talenti_constant(m, p), 1e-12));
        }
}

TEST_CASE("C(p) endpoint behaviour") {
    for (const auto& t : std::vector<std::vector<double>>{{1, 2}, {0, 0, 0}, {0.5, 0.5}, {2, 0, 1}}) {
        const ExponentTuple a(t);
        const double d = effective_dimension(a);
        CHECK(std::abs(monomial_c(a, 1.0 + 1e-6) - monomial_c1(a)) < 1e-3 * monomial_c1(a));
        const double e = 1.0 - 1.0 / d;
        const double s4 = monomial_c(a, d - 1e-4) * std::pow(1e-4, e);
        const double s5 = monomial_c(a, d - 1e-5) * std::pow(1e-5, e);
        CHECK(std::abs(s4 / s5 - 1.0) < 0.01);
    }
}

TEST_CASE("C(p) is continuous on a refining grid") {
    const ExponentTuple a({1, 2});
    double coarse = 0.0;
    for (int n : {100, 1000, 10000}) {
        double jump = 0.0;
        double prev = monomial_c(a, 1.01);
        for (int i = 1; i <= n; ++i) {
            const double c = monomial_c(a, 1.01 + 3.98 * i / n);
            jump = std::max(jump, std::abs(c / prev - 1.0));
            prev = c;
        }
        if (coarse > 0.0) CHECK(jump < 0.5 * coarse);
        coarse = jump;
    }
}

TEST_CASE("printed constants") {
    CHECK(rel_close(monomial_c1_relaxed(ExponentTuple({0}), ConstantForm::printed), std::sqrt(std::numbers::pi), 1e-13));
    const double a1 = monomial_c1(ExponentTuple({1}), ConstantForm::printed);
    CHECK(rel_close(a1, 2.0 * std::sqrt(1.0 / (2.0 * std::tgamma(1.5))), 1e-13));
    CHECK(a1 == doctest::Approx(1.5023).epsilon(1e-4));
    CHECK(rel_close(monomial_c1(ExponentTuple({1, 2}), ConstantForm::printed), oracle::c1_printed({1, 2}), 1e-12));
    // The printed C(p) does not tend to the printed C1 as p -> 1.
    const ExponentTuple a({1, 2});
    const double gap = std::abs(monomial_c(a, 1.0 + 1e-6, ConstantForm::printed) / monomial_c1(a, ConstantForm::printed) - 1.0);
    CHECK(gap > 1e-3);
}

TEST_CASE("C1 is permutation invariant and rejects D <= 1") {
    CHECK(monomial_c1(ExponentTuple({0.5, 2, 0})) == doctest::Approx(monomial_c1(ExponentTuple({0, 0.5, 2}))).epsilon(1e-14));
    CHECK_THROWS_AS(monomial_c1(ExponentTuple({0})), DomainError);
    CHECK_THROWS_AS(monomial_c(ExponentTuple({1, 2}), 1.0), DomainError);
    CHECK_THROWS_AS(monomial_c(ExponentTuple({1, 2}), 5.0), DomainError);
    CHECK_THROWS_AS(monomial_c(ExponentTuple({1, 2}), 5.0 * (1.0 - 1e-14)), DomainError);
}

TEST_CASE("constants stay finite for large D") {
    const ExponentTuple a({100, 97.5});
    const double d = effective_dimension(a);
    CHECK(std::isfinite(monomial_c1(a)));
    for (double p : {1.0 + 1e-8, 2.0, d / 2.0, d - 1e-6}) CHECK(std::isfinite(monomial_c(a, p)));
}

TEST_CASE("trace bounds") {
    const auto zero3 = ExponentTuple::zeros(3);
    const auto zero2 = ExponentTuple::zeros(2);
    const auto t = trace_bounds(zero3, zero2, 2.0, 4.0);
    const auto o = oracle::trace_literal(3.0, 2.0, 2, 2.0, 4.0);
    CHECK(rel_close(t.m, o.m, 1e-12));
    CHECK(rel_close(t.q_factor, o.q, 1e-12));
    CHECK(t.w_lower == t.m);
    CHECK(rel_close(t.w_upper, t.m * t.q_factor, 1e-15));
    CHECK(t.q_at_least_p);

    CHECK(std::abs(trace_bounds(zero3, zero2, 2.0, 1e8).q_factor - 1.0) < 1e-6);
    for (double p = 1.05; p < 3.0; p += 0.1)
        for (double q = 1.05; q < 60.0; q *= 1.4) {
            const auto b = trace_bounds(zero3, zero2, p, q);
            CHECK(b.q_factor >= 1.0);
            CHECK(b.w_lower <= b.w_upper);
        }

    const auto c = trace_bounds(zero3, zero2, 2.0, 4.0, TraceFormulaVariant::corrected);
    CHECK(rel_close(c.m, std::pow(2.0, -0.25) * std::sqrt(1.0), 1e-14));

    CHECK_THROWS_AS(trace_bounds(zero3, zero2, 1.0, 4.0), DomainError);
    CHECK_THROWS_AS(trace_bounds(zero3, zero2, 2.0, 1.0), DomainError);
    CHECK_THROWS_AS(trace_bounds(zero2, zero2, 1.5, 4.0), InputError);
    CHECK_THROWS_AS(trace_bounds(ExponentTuple::zeros(2), ExponentTuple({3}), 2.5, 4.0), DomainError);
}

TEST_CASE("form and variant names") {
    CHECK(parse_constant_form("printed") == ConstantForm::printed);
    CHECK(parse_trace_variant("corrected") == TraceFormulaVariant::corrected);
    CHECK(to_string(ConstantForm::corrected) == "corrected");
    CHECK_THROWS_AS(parse_constant_form("exact"), InputError);
    CHECK_THROWS_AS(parse_trace_variant(""), InputError);
}
