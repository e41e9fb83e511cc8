#include <doctest.h>

#include "monosob/errors.hpp"
#include "monosob/exponent_tuple.hpp"
#include "monosob/grand_lebesgue.hpp"
#include "monosob/psi_function.hpp"
#include "monosob/radial_profile.hpp"
#include "monosob/sharp_constants.hpp"
#include "monosob/weighted_calculus.hpp"
#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <vector>

using namespace monosob;

namespace {

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

// Dense brute-force maximum of g over [lo, hi].
double brute_max(const std::function<double(double)>& g, double lo, double hi, int n) {
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) best = std::max(best, g(lo + (hi - lo) * i / (n - 1.0)));
    return best;
}

double inset(double a, double b) { return std::max(1e-8, 1e-8 * (b - a)); }

} // namespace

TEST_CASE("psi families") {
    const auto c = PsiFunction::constant(1.5, 4.0);
    CHECK(c(2.0) == 1.0);
    CHECK(c.family() == PsiFamily::constant);
    CHECK_THROWS_AS(c(5.0), DomainError);
    CHECK_THROWS_AS(PsiFunction::constant(0.5, 2.0), InputError);
    CHECK_THROWS_AS(PsiFunction::constant(3.0, 2.0), InputError);

    const auto pe = PsiFunction::power_endpoint(1.0, 5.0, 0.5, 1.5);
    // The infimum of (p - 1)^(-1/2) (5 - p)^(-3/2) sits at p = 2.
    CHECK(pe(2.0) == doctest::Approx(1.0).epsilon(1e-12));
    for (double p = 1.01; p < 5.0; p += 0.01) CHECK(pe(p) >= 1.0 - 1e-12);
    CHECK_THROWS_AS(PsiFunction::power_endpoint(1.0, std::numeric_limits<double>::infinity(), 0.5, 0.0), InputError);
    CHECK(PsiFunction::power_endpoint(2.0, std::numeric_limits<double>::infinity(), 0.0, 0.0)(50.0) == 1.0);

    const auto t = PsiFunction::tabulated({{1.0, 2.0}, {2.0, 1.0}, {3.0, 4.0}, {4.0, 4.5}});
    CHECK(t(1.0) == doctest::Approx(2.0));
    CHECK(t(2.0) == doctest::Approx(1.0));
    CHECK(t(3.0) == doctest::Approx(4.0));
    for (double p = 1.0; p <= 2.0; p += 0.01) CHECK((t(p) >= 1.0 - 1e-12 && t(p) <= 2.0 + 1e-12));
    for (double p = 2.0; p <= 3.0; p += 0.01) CHECK((t(p) >= 1.0 - 1e-12 && t(p) <= 4.0 + 1e-12));
    const auto scaled = PsiFunction::tabulated({{1.0, 4.0}, {2.0, 2.0}});
    CHECK(scaled(2.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(PsiFunction::tabulated({{1.0, 1.0}}), InputError);
    CHECK_THROWS_AS(PsiFunction::tabulated({{2.0, 1.0}, {1.5, 1.0}}), InputError);
    CHECK_THROWS_AS(PsiFunction::tabulated({{1.0, 1.0}, {2.0, -1.0}}), InputError);
}

TEST_CASE("psi parsing") {
    const auto p = parse_psi(R"({"family":"constant","a":2,"b":"inf"})");
    CHECK(p.upper_is_infinite());
    CHECK(p.lower() == 2.0);
    const auto q = parse_psi(R"({"family":"power-endpoint","a":1,"b":3,"alpha":0.5,"beta":0.5})");
    CHECK(q(2.0) == doctest::Approx(1.0));
    CHECK(parse_psi(R"({"family":"tabulated","points":[[1,3],[2,1.5]]})")(2.0) == doctest::Approx(1.0));
    CHECK(parse_psi(q.to_json())(2.5) == doctest::Approx(q(2.5)).epsilon(1e-15));
    CHECK_THROWS_AS(parse_psi(R"({"family":"constant","a":2,"b":3,"c":1})"), InputError);
    CHECK_THROWS_AS(parse_psi(R"({"family":"gaussian","a":2,"b":3})"), InputError);
    CHECK_THROWS_AS(parse_psi(R"({"family":"constant","a":2})"), InputError);
    CHECK_THROWS_AS(parse_psi("{not json"), InputError);
}

TEST_CASE("open-interval supremum") {
    const auto flat = open_interval_supremum([](double) { return 2.5; }, 1.0, 2.0);
    CHECK(flat.value == 2.5);
    CHECK_FALSE(flat.infinite);

    const auto rising = open_interval_supremum([](double p) { return p; }, 1.0, 2.0);
    CHECK(rising.at_boundary);
    CHECK(rising.value == doctest::Approx(2.0 - inset(1.0, 2.0)).epsilon(1e-12));

    const auto pole = open_interval_supremum([](double p) { return 1.0 / (p - 1.0); }, 1.0, 2.0);
    CHECK(pole.infinite);
    CHECK(std::isinf(pole.value));

    const auto domain = open_interval_supremum(
        [](double p) {
            if (p < 1.5) throw DomainError("outside");
            return 1.0;
        },
        1.0, 2.0);
    CHECK(domain.infinite);

    auto wavy = [](double p) { return std::sin(3.0 * p) + p / 5.0; };
    const auto w = open_interval_supremum(wavy, 1.0, 4.0);
    CHECK(rel_close(w.value, brute_max(wavy, 1.0, 4.0, 400001), 1e-8));

    // An interior maximum on an unbounded interval, placed through t = 1/p.
    auto bumpy = [](double p) { return std::exp(-std::pow(std::log(p / 7.0), 2)); };
    const auto bi = open_interval_supremum(bumpy, 1.0, std::numeric_limits<double>::infinity());
    CHECK(bi.value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(bi.argmax == doctest::Approx(7.0).epsilon(1e-3));

    CHECK_THROWS_AS(open_interval_supremum([](double) { return std::nan(""); }, 1.0, 2.0), NumericalError);
    CHECK_THROWS_AS(open_interval_supremum([](double) { return 1.0; }, 2.0, 1.0), InputError);
}

TEST_CASE("GLS norm") {
    const ExponentTuple a({1, 1});
    const auto u = profiles::bump(1.0);
    const auto psi = PsiFunction::constant(1.2, 3.5);
    const auto n = gls_norm(u, psi, a);
    CHECK(n.value > 0.0);
    CHECK_FALSE(n.infinite);
    CHECK(rel_close(gls_norm(u.scaled(3.7), psi, a).value, 3.7 * n.value, 1e-12));
    const double brute = brute_max([&](double p) { return weighted_lp_norm(u, a, p); }, 1.2 + inset(1.2, 3.5),
                                   3.5 - inset(1.2, 3.5), 1024);
    CHECK(n.value >= brute * (1.0 - 1e-10));
    CHECK(rel_close(n.value, brute, 1e-6));

    // A larger psi can only lower the norm.
    const std::vector<RadialProfile> us{profiles::bump(1.0), profiles::gaussian(0.7), profiles::tent(2.0)};
    const auto bigger = PsiFunction::power_endpoint(1.2, 3.5, 0.5, 0.25);
    for (const auto& v : us) {
        CHECK(gls_norm(v, psi, a).value >= gls_norm(v, bigger, a).value);
        CHECK(gls_gradient_norm(v, psi, a).value >= gls_gradient_norm(v, bigger, a).value);
    }

    // |u|_p is infinite for p <= 3/2 when u ~ rho^(-2) in three dimensions.
    const auto tail = gls_norm(profiles::power_tail(2.0), PsiFunction::constant(1.2, 2.5), ExponentTuple::zeros(3));
    CHECK(tail.infinite);
    const auto ok = gls_norm(profiles::power_tail(2.0), PsiFunction::constant(1.8, 2.5), ExponentTuple::zeros(3));
    CHECK_FALSE(ok.infinite);
}

TEST_CASE("fundamental function") {
    const auto pe = PsiFunction::power_endpoint(1.5, 6.0, 0.3, 0.2);
    CHECK(fundamental_function(pe, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
    const double a = 1.5, b = 4.0;
    const auto one = PsiFunction::constant(a, b);
    const double e = inset(a, b);
    for (double delta : {1e-3, 1.0, 1e3}) {
        const double brute = brute_max([&](double p) { return std::pow(delta, 1.0 / p); }, a + e, b - e, 1024);
        CHECK(rel_close(fundamental_function(one, delta), brute, 1e-8));
    }
    CHECK(rel_close(fundamental_function(one, 1e-2), std::pow(1e-2, 1.0 / b), 1e-8));
    CHECK(rel_close(fundamental_function(one, 1e2), std::pow(1e2, 1.0 / a), 1e-7));
    double prev = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double delta = std::pow(10.0, -4.0 + 8.0 * i / 49.0);
        const double phi = fundamental_function(pe, delta);
        CHECK(phi >= prev);
        prev = phi;
    }
    CHECK_THROWS_AS(fundamental_function(one, 0.0), InputError);
}

TEST_CASE("zeta transform") {
    const ExponentTuple a({1, 2});
    const double d = effective_dimension(a);
    for (double q : {d / (d - 1.0) + 0.1, 10.0, 1e4}) CHECK(rel_close(zeta_q_of_p(d, zeta_p_of_q(d, q)), q, 1e-13));

    const auto z = zeta_transform(PsiFunction::constant(1.0, d), a);
    CHECK(z.lower() == doctest::Approx(d / (d - 1.0)).epsilon(1e-14));
    CHECK(z.upper_is_infinite());
    CHECK(rel_close(z(zeta_q_of_p(d, 1.0 + 1e-7)), monomial_c1(a), 1e-4));
    for (double q : {6.0, 50.0})
        CHECK(rel_close(z(q), monomial_c(a, zeta_p_of_q(d, q)), 1e-13));
    const double e = 1.0 - 1.0 / d;
    const double r1 = z(1e5) * std::pow(d - zeta_p_of_q(d, 1e5), e);
    const double r2 = z(1e7) * std::pow(d - zeta_p_of_q(d, 1e7), e);
    CHECK(std::abs(r1 / r2 - 1.0) < 1e-2);
    CHECK(z(1e7) > z(1e5));

    CHECK_THROWS_AS(zeta_transform(PsiFunction::constant(2.0, 6.0), a), InputError);
}

TEST_CASE("chain property of the zeta transform") {
    const ExponentTuple a({1, 1});
    const double d = effective_dimension(a);
    for (const auto& u : {profiles::bump(1.0), profiles::gaussian(0.5), profiles::bump(2.0, 0.4)}) {
        const auto psi = PsiFunction::transformed(
            1.0, d, [u, a](double p) { return weighted_gradient_norm(u, a, p); }, "{}");
        const auto z = zeta_transform(psi, a);
        for (double p = 1.05; p < d - 0.05; p += 0.1) {
            const double q = zeta_q_of_p(d, p);
            CHECK(weighted_lp_norm(u, a, q) <= z(q) * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("psi^(D) transform") {
    const auto t = psi_d_transform(PsiFunction::constant(3.0, std::numeric_limits<double>::infinity()), 3.0, 1.0);
    CHECK(t(6.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(t(3.0 + 1e-9) > 1e9);
    CHECK(psi_d_transform(PsiFunction::constant(4.0, 8.0), 3.0, 2.5)(6.0) == doctest::Approx(5.0));
    CHECK_THROWS_AS(psi_d_transform(PsiFunction::constant(1.0, 3.0), 3.0, 1.0), InputError);
    CHECK_THROWS_AS(psi_d_transform(PsiFunction::constant(4.0, 8.0), 3.0, 0.0), InputError);
}

TEST_CASE("Morrey bound") {
    const ExponentTuple a({0.5, 0.5});
    const double d = effective_dimension(a);
    const auto u = profiles::bump(1.0);
    for (double delta : {1e-3, 1e-1, 1.0}) {
        const auto b = morrey_bound(u, PsiFunction::constant(4.0, 8.0), a, 1.0, delta);
        CHECK(std::isfinite(b.value));
        CHECK(b.value > 0.0);
        CHECK_FALSE(b.inconclusive);
    }
    // Narrow support reduces to the single-exponent bound.
    const double p0 = 5.0;
    const double sigma = oracle::angular_mass({0.5, 0.5});
    const double grad = std::pow(
        sigma * oracle::simpson(
                    [&](double r) { return std::pow(r, d - 1.0) * std::pow(std::abs(u.derivative(r)), p0); }, 0.0,
                    1.0, 20000),
        1.0 / p0);
    for (double delta : {1e-2, 0.5, 3.0}) {
        const double single = p0 / (p0 - d) * grad * std::pow(delta, 1.0 - d / p0);
        double prev_err = std::numeric_limits<double>::infinity();
        for (double eps : {1e-1, 1e-2, 1e-4}) {
            const double b = morrey_bound(u, PsiFunction::constant(p0 - eps, p0 + eps), a, 1.0, delta).value;
            const double err = std::abs(b / single - 1.0);
            CHECK(err <= prev_err * (1.0 + 1e-9));
            prev_err = err;
        }
        CHECK(prev_err < 1e-2);
    }
    // Linear in C2.
    const auto b1 = morrey_bound(u, PsiFunction::constant(4.0, 8.0), a, 1.0, 0.1).value;
    const auto b3 = morrey_bound(u, PsiFunction::constant(4.0, 8.0), a, 3.0, 0.1).value;
    CHECK(rel_close(b3, 3.0 * b1, 1e-10));
    // u' ~ rho^(-1/2) at the origin: |grad u|_p is infinite for p >= 6.
    const RadialProfile cusp("cusp", [](double r) { return r < 1.0 ? 1.0 - std::sqrt(r) : 0.0; },
                             [](double r) { return r < 1.0 ? -0.5 / std::sqrt(r) : 0.0; }, SupportHint::compact(1.0));
    const auto inf = morrey_bound(cusp, PsiFunction::constant(4.0, 8.0), a, 1.0, 0.1);
    CHECK(inf.inconclusive);
}
