#include <doctest.h>

#include "monosob/campaign.hpp"
#include "monosob/errors.hpp"
#include "monosob/exponent_tuple.hpp"
#include "monosob/report.hpp"
#include "monosob/sharp_constants.hpp"
#include "monosob/verifier.hpp"
#include "monosob/weighted_calculus.hpp"

#include <json.hpp>

#include <cmath>
#include <set>
#include <string>
#include <vector>

using namespace monosob;
using nlohmann::json;

TEST_CASE("report bookkeeping") {
    const auto r = make_report(InequalityId::sobolev, 1.0, 2.0, 0.75, 1e-6, R"({"x":1})");
    CHECK(r.ratio == doctest::Approx(1.0 / 1.5));
    CHECK(r.pass);
    CHECK(r.status == CheckStatus::pass);
    CHECK(r.inputs_digest == fnv1a_hex(R"({"x":1})"));
    CHECK(r.inputs_digest.size() == 16);

    const auto edge = make_report(InequalityId::gls, 1.0 + 5e-7, 1.0, 1.0, 1e-6, "{}");
    CHECK(edge.pass);
    const auto over = make_report(InequalityId::gls, 1.0 + 2e-6, 1.0, 1.0, 1e-6, "{}");
    CHECK_FALSE(over.pass);
    CHECK(over.status == CheckStatus::fail);

    const auto zero = make_report(InequalityId::trace, 1.0, 0.0, 1.0, 1e-6, "{}");
    CHECK(zero.status == CheckStatus::inconclusive);
    CHECK_FALSE(zero.pass);
    const auto inf = make_report(InequalityId::trace, 1.0, INFINITY, 1.0, 1e-6, "{}");
    CHECK(inf.status == CheckStatus::inconclusive);

    const auto j = json::parse(zero.to_json());
    CHECK(j["id"] == "trace-6.3a");
    CHECK(j["ratio"].is_null());
    CHECK(j["status"] == "inconclusive");

    // Known FNV-1a 64 test vectors.
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");

    CHECK(to_string(InequalityId::sobolev) == "sobolev-1.6a");
    CHECK(to_string(InequalityId::gls) == "gls-5.6");
    CHECK(to_string(InequalityId::morrey) == "morrey-7.8");
    CHECK(to_string(InequalityId::scaling) == "scaling-2.4");
    CHECK(VerificationReport::csv_header() == "inequality-id,ratio,pass,diagnostics");
    CHECK(r.to_csv_row().rfind("sobolev-1.6a,", 0) == 0);
}

TEST_CASE("sharp Sobolev check") {
    const ExponentTuple a({1, 2});
    const auto r = check_sobolev(profiles::bump(1.0), a, 2.0);
    CHECK(r.status == CheckStatus::pass);
    CHECK(r.constant == doctest::Approx(monomial_c(a, 2.0)).epsilon(1e-15));
    CHECK(r.ratio == doctest::Approx(r.lhs / (r.constant * r.rhs)).epsilon(1e-15));
    CHECK(r.ratio < 1.0);
    // Ratio is invariant under c u and dilation.
    CHECK(check_sobolev(profiles::bump(1.0).scaled(4.0), a, 2.0).ratio == doctest::Approx(r.ratio).epsilon(1e-10));
    CHECK(check_sobolev(dilate(profiles::bump(1.0), 3.0), a, 2.0).ratio == doctest::Approx(r.ratio).epsilon(1e-9));

    const auto flat = RadialProfile("zero", [](double) { return 0.0; }, [](double) { return 0.0; },
                                    SupportHint::compact(1.0));
    CHECK(check_sobolev(flat, a, 2.0).status == CheckStatus::inconclusive);
    CHECK_THROWS_AS(check_sobolev(profiles::bump(1.0), a, 5.0), DomainError);
}

TEST_CASE("extremal profile is near-sharp at A = 0") {
    for (auto [d, p] : {std::pair{5, 2.0}, std::pair{4, 1.5}, std::pair{3, 2.0}}) {
        CheckOptions o;
        o.quadrature.min_truncation_radius = 1e4;
        const auto r = check_sobolev(extremal_profile(d, p), ExponentTuple::zeros(d), p, o);
        CAPTURE(d);
        CHECK(r.pass);
        CHECK(r.ratio >= 0.98);
        CHECK(r.ratio <= 1.0 + 1e-6);
    }
    CHECK_THROWS(extremal_profile(3.0, 3.0));

    const double d = 5.0, p = 2.0, pc = p / (p - 1.0);
    const auto u = extremal_profile(d, p);
    CHECK(u.value(0.0) == 1.0);
    for (double r : {1e3, 1e4}) CHECK(std::abs(u.value(r) * std::pow(r, pc * (d - p) / p) - 1.0) < 1e-2);
}

TEST_CASE("scaling fits") {
    const ExponentTuple a({1, 2});
    const auto grid = default_lambda_grid();
    CHECK(grid.size() == 9);
    CHECK(grid.front() == doctest::Approx(0.125));
    CHECK(grid.back() == doctest::Approx(8.0));
    const double q = sobolev_exponent(a, a, 2.0);
    const auto fit = fit_scaling_exponents(profiles::bump(1.0), a, a, 2.0, q, grid);
    CHECK(std::abs(fit.slope_lhs - (-5.0 / q)) < 1e-8);
    CHECK(std::abs(fit.slope_rhs - (1.0 - 5.0 / 2.0)) < 1e-8);
    CHECK(fit.balanced);
    CHECK(check_scaling(profiles::tent(2.0), a, a, 2.0, q, grid).pass);

    // A wrong q unbalances the fit by D(B) (1/q - 1/q').
    const double wrong = 1.1 * q;
    const auto off = fit_scaling_exponents(profiles::bump(1.0), a, a, 2.0, wrong, grid);
    CHECK_FALSE(off.balanced);
    CHECK(std::abs((off.slope_lhs - off.slope_rhs) - 5.0 * (1.0 / q - 1.0 / wrong)) < 1e-8);
    CHECK(check_scaling(profiles::bump(1.0), a, a, 2.0, wrong, grid).status == CheckStatus::fail);

    const std::vector<double> one{2.0};
    CHECK_THROWS_AS(fit_scaling_exponents(profiles::bump(1.0), a, a, 2.0, q, one), InputError);
    const std::vector<double> same{2.0, 2.0};
    CHECK_THROWS_AS(fit_scaling_exponents(profiles::bump(1.0), a, a, 2.0, q, same), InputError);
}

TEST_CASE("radial trace check") {
    const auto a = ExponentTuple::zeros(3);
    const auto b = ExponentTuple::zeros(2);
    const auto r = check_trace_radial(profiles::bump(1.0), a, b, 2.0);
    const auto t = trace_bounds(a, b, 2.0, 4.0);
    CHECK(r.status == CheckStatus::pass);
    CHECK(r.constant == doctest::Approx(t.w_upper).epsilon(1e-15));
    CHECK(r.ratio > 0.0);
    CHECK(r.ratio <= 1.0);
    CHECK(check_trace_radial(dilate(profiles::bump(1.0), 2.5), a, b, 2.0).ratio ==
          doctest::Approx(r.ratio).epsilon(1e-9));
    CHECK(check_trace_radial(profiles::bump(1.0).scaled(0.3), a, b, 2.0).ratio ==
          doctest::Approx(r.ratio).epsilon(1e-12));
    CHECK_THROWS(check_trace_radial(profiles::bump(1.0), a, ExponentTuple::zeros(3), 2.0));

    // With D = 5, D_r = 3, r = 2 the literal bracket is exceeded by a
    // decaying profile while Bradley's form holds.
    const ExponentTuple a5({1, 0, 1});
    const ExponentTuple b3({1, 0});
    const auto u = parse_profile("extremal:5,2.5");
    CHECK(check_trace_radial(u, a5, b3, 2.5).status == CheckStatus::fail);
    CheckOptions corrected;
    corrected.trace_variant = TraceFormulaVariant::corrected;
    CHECK(check_trace_radial(u, a5, b3, 2.5, corrected).status == CheckStatus::pass);
}

TEST_CASE("GLS Sobolev check") {
    const ExponentTuple a({1, 1});
    const auto psi = PsiFunction::constant(1.001, 3.999);
    const auto r = verify_gls_sobolev(profiles::bump(1.0), psi, a);
    CHECK(r.status == CheckStatus::pass);
    CHECK(verify_gls_sobolev(profiles::bump(1.0).scaled(3.7), psi, a).ratio == doctest::Approx(r.ratio).epsilon(1e-8));

    // Once both suprema sit on the upper edge of the exponent range, further
    // dilation leaves the ratio unchanged.
    const auto low = PsiFunction::constant(1.2, 2.5);
    const auto far1 = verify_gls_sobolev(dilate(profiles::bump(1.0), 1e3), low, a);
    const auto far2 = verify_gls_sobolev(dilate(profiles::bump(1.0), 1e4), low, a);
    CHECK(far1.pass);
    CHECK(far2.ratio == doctest::Approx(far1.ratio).epsilon(1e-7));
    // Away from that regime the ratio does depend on the dilation.
    const auto near = verify_gls_sobolev(dilate(profiles::bump(1.0), 3.0), psi, a);
    CHECK(std::abs(near.ratio / r.ratio - 1.0) > 1e-3);

    // A profile with infinite gradient norm on the range is inconclusive.
    const RadialProfile cusp("cusp", [](double r) { return r < 1.0 ? 1.0 - std::pow(r, 0.25) : 0.0; },
                             [](double r) { return r < 1.0 ? -0.25 * std::pow(r, -0.75) : 0.0; },
                             SupportHint::compact(1.0));
    CHECK(verify_gls_sobolev(cusp, psi, a).status == CheckStatus::inconclusive);
}

TEST_CASE("measured modulus") {
    const auto tent = profiles::tent(1.0);
    CHECK(measured_modulus(tent, 0.3) == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(measured_modulus(tent, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
    const auto u = profiles::bump(1.0);
    for (double delta : {0.01, 0.2, 0.7}) {
        double brute = 0.0;
        for (int i = 0; i <= 200000; ++i) {
            const double r = 1.2 * i / 200000.0;
            brute = std::max(brute, std::abs(u.value(r + delta) - u.value(r)));
        }
        const double w = measured_modulus(u, delta);
        CHECK(w >= brute * (1.0 - 1e-9));
        CHECK(w == doctest::Approx(brute).epsilon(1e-6));
    }
    double prev = 0.0;
    for (double delta : {1e-3, 1e-2, 0.1, 1.0}) {
        const double w = measured_modulus(profiles::gaussian(1.0), delta);
        CHECK(w >= prev);
        prev = w;
    }
}

TEST_CASE("Morrey check and calibration") {
    const ExponentTuple a({0.5, 0.5});
    const auto psi = PsiFunction::constant(4.0, 8.0);
    const auto r = check_morrey(profiles::bump(1.0), psi, a, 1.0, 0.1);
    CHECK(r.lhs == doctest::Approx(measured_modulus(profiles::bump(1.0), 0.1)));
    CHECK(r.rhs == doctest::Approx(morrey_bound(profiles::bump(1.0), psi, a, 1.0, 0.1).value).epsilon(1e-12));
    CHECK(r.constant == 1.0);

    const std::vector<RadialProfile> battery{profiles::bump(1.0), profiles::gaussian(0.5), profiles::tent(2.0)};
    const std::vector<double> deltas{1e-2, 1e-1, 1.0};
    const auto cal = calibrate_morrey_c2(battery, psi, a, deltas);
    CHECK(cal.c2 > 0.0);
    for (const auto& u : battery)
        for (double d : deltas) {
            const auto rep = check_morrey(u, psi, a, cal.c2, d);
            CHECK(rep.ratio <= 1.0 + 1e-9);
        }
    const auto tight = check_morrey(battery[0], psi, a, 0.5 * cal.c2, 1.0);
    (void)tight;
    bool some_fail = false;
    for (const auto& u : battery)
        for (double d : deltas) some_fail = some_fail || !check_morrey(u, psi, a, 0.9 * cal.c2, d).pass;
    CHECK(some_fail);
}

TEST_CASE("profile families") {
    const auto fam = make_family("bump");
    const auto p1 = fam.sample_parameters(16, 5);
    const auto p2 = fam.sample_parameters(16, 5);
    const auto p3 = fam.sample_parameters(16, 6);
    CHECK(p1 == p2);
    CHECK(p1 != p3);
    for (const auto& v : p1) {
        REQUIRE(v.size() == fam.box().size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            CHECK(v[i] >= fam.box()[i].first);
            CHECK(v[i] <= fam.box()[i].second);
        }
    }
    // Low discrepancy: every quarter of the first coordinate range gets 4 of 16 points.
    std::vector<int> bins(4, 0);
    const auto [lo, hi] = fam.box()[0];
    for (const auto& v : p1) ++bins[std::min(3, static_cast<int>(4.0 * (v[0] - lo) / (hi - lo)))];
    for (int b : bins) CHECK(b == 4);
    CHECK(fam.sample(3, 5).size() == 3);
    CHECK_THROWS_AS(make_family("spline"), InputError);
    CHECK_THROWS_AS(make_family("bump", {{1.0, 0.5}, {0.1, 1.0}}), InputError);
}

TEST_CASE("campaign configs") {
    CHECK_THROWS_AS(parse_campaign_config("{"), InputError);
    CHECK_THROWS_AS(parse_campaign_config(R"({"checks":[], "colour":1})"), InputError);
    CHECK_THROWS_AS(parse_campaign_config(R"({"checks":[{"type":"hardy","A":[1],"profiles":["bump:1"]}]})"),
                    InputError);
    CHECK_THROWS_AS(parse_campaign_config(R"({"checks":[{"type":"sobolev","A":[1,2],"p":5,"profiles":["bump:1"]}]})"),
                    InputError);
    CHECK_THROWS_AS(parse_campaign_config(R"({"checks":[{"type":"sobolev","A":[1,2],"p":2,"profiles":["blob:1"]}]})"),
                    InputError);
    CHECK_THROWS_AS(parse_campaign_config(R"({"checks":[{"type":"sobolev","A":[1,2],"p":2}]})"), InputError);
    CHECK_THROWS_AS(
        parse_campaign_config(R"({"checks":[{"type":"morrey","A":[1],"psi":{"family":"constant","a":1.5,"b":3},
                                  "delta":[1],"profiles":["bump:1"]}]})"),
        InputError);

    const auto empty = parse_campaign_config(R"({"checks":[]})");
    CHECK(run_campaign(empty).empty());
    CHECK(reports_to_csv({}) == VerificationReport::csv_header() + "\n");

    const auto cfg = load_campaign_config(MONOSOB_SOURCE_DIR "/configs/default.cfg");
    const auto first = reports_to_jsonl(run_campaign(cfg));
    const auto second = reports_to_jsonl(run_campaign(cfg));
    CHECK(first == second);
    std::set<std::string> ids;
    std::size_t lines = 0;
    for (std::size_t pos = 0; pos < first.size();) {
        const auto end = first.find('\n', pos);
        const auto j = json::parse(first.substr(pos, end - pos));
        ids.insert(j["id"].get<std::string>());
        const double lhs = j["lhs"], rhs = j["rhs"], c = j["constant"], ratio = j["ratio"];
        CHECK(std::abs(ratio * c * rhs - lhs) <= 1e-12 * std::abs(lhs));
        CHECK(j["status"] == "pass");
        ++lines;
        pos = end + 1;
    }
    CHECK(ids.size() == 5);
    CHECK(lines > 20);

    auto reseeded = cfg;
    reseeded.seed = cfg.seed + 1;
    CHECK(reports_to_jsonl(run_campaign(reseeded)) != first);
}
