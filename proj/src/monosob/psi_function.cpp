#include "monosob/psi_function.hpp"

#include "monosob/errors.hpp"
#include "monosob/json_writer.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace monosob {
namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void check_support(double a, double b) {
    if (!std::isfinite(a) || a < 1.0) throw InputError("psi support needs finite a >= 1, got " + format_double(a));
    if (!(b > a)) throw InputError("psi support needs b > a");
}

std::string bound_json(double b) { return std::isinf(b) ? "\"inf\"" : format_double(b); }

// Fritsch-Carlson slopes for a monotone piecewise cubic Hermite interpolant.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> h(n - 1), delta(n - 1), m(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    if (n == 2) {
        m[0] = m[1] = delta[0];
        return m;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) continue;
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0) s = 0.0;
        else if (d0 * d1 <= 0.0 && std::abs(s) > std::abs(3.0 * d0)) s = 3.0 * d0;
        return s;
    };
    m[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    m[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    return m;
}

} // namespace

PsiFunction PsiFunction::constant(double a, double b) {
    check_support(a, b);
    std::string json = "{\"family\":\"constant\",\"a\":" + format_double(a) + ",\"b\":" + bound_json(b) + "}";
    return PsiFunction(PsiFamily::constant, a, b, [](double) { return 1.0; }, std::move(json));
}

PsiFunction PsiFunction::power_endpoint(double a, double b, double alpha, double beta) {
    check_support(a, b);
    if (!(alpha >= 0.0) || !(beta >= 0.0)) throw InputError("power-endpoint exponents must be non-negative");
    if (std::isinf(b) && (alpha > 0.0 || beta > 0.0))
        throw InputError("power-endpoint with b = inf cannot be normalised unless alpha = beta = 0");
    double log_min = 0.0;
    if (alpha > 0.0 && beta > 0.0) {
        const double ps = (alpha * b + beta * a) / (alpha + beta);
        log_min = -alpha * std::log(ps - a) - beta * std::log(b - ps);
    } else if (alpha > 0.0) {
        log_min = -alpha * std::log(b - a);
    } else if (beta > 0.0) {
        log_min = -beta * std::log(b - a);
    }
    auto eval = [=](double p) {
        double l = -log_min;
        if (alpha > 0.0) l -= alpha * std::log(p - a);
        if (beta > 0.0) l -= beta * std::log(b - p);
        return std::exp(l);
    };
    std::string json = "{\"family\":\"power-endpoint\",\"a\":" + format_double(a) + ",\"b\":" + bound_json(b) +
                       ",\"alpha\":" + format_double(alpha) + ",\"beta\":" + format_double(beta) + "}";
    return PsiFunction(PsiFamily::power_endpoint, a, b, eval, std::move(json));
}

PsiFunction PsiFunction::tabulated(std::vector<std::pair<double, double>> points) {
    if (points.size() < 2) throw InputError("tabulated psi needs at least two points");
    std::vector<double> x, y;
    for (const auto& [p, v] : points) {
        if (!std::isfinite(p) || !std::isfinite(v) || !(v > 0.0))
            throw InputError("tabulated psi needs finite p and positive finite values");
        if (!x.empty() && !(p > x.back())) throw InputError("tabulated psi abscissae must be strictly increasing");
        x.push_back(p);
        y.push_back(v);
    }
    check_support(x.front(), x.back());
    const double vmin = *std::min_element(y.begin(), y.end());
    for (double& v : y) v /= vmin;
    auto m = pchip_slopes(x, y);
    auto eval = [x, y, m](double p) {
        auto it = std::upper_bound(x.begin(), x.end(), p);
        std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
        if (i >= x.size() - 1) i = x.size() - 2;
        const double h = x[i + 1] - x[i];
        const double t = (p - x[i]) / h;
        const double t2 = t * t;
        const double t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * y[i] + (t3 - 2 * t2 + t) * h * m[i] + (-2 * t3 + 3 * t2) * y[i + 1] +
               (t3 - t2) * h * m[i + 1];
    };
    JsonWriter w;
    w.begin_object().field("family", "tabulated").key("points").begin_array();
    for (const auto& [p, v] : points) w.begin_array().value(p).value(v).end_array();
    w.end_array().end_object();
    return PsiFunction(PsiFamily::tabulated, x.front(), x.back(), eval, w.str());
}

PsiFunction PsiFunction::transformed(double a, double b, Fn eval, std::string json) {
    if (!(b > a) || !std::isfinite(a)) throw InputError("transformed psi needs a finite a < b");
    return PsiFunction(PsiFamily::transformed, a, b, std::move(eval), std::move(json));
}

double PsiFunction::operator()(double p) const {
    if (!(p >= a_ && p <= b_))
        throw DomainError("psi evaluated at p = " + format_double(p) + " outside (" + format_double(a_) + ", " +
                          format_double(b_) + ")");
    return eval_(p);
}

PsiFunction parse_psi(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed psi JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
        throw InputError("psi must be an object with a \"family\" string");
    const std::string family = j["family"];
    auto number = [&](const char* key) -> double {
        if (!j.contains(key)) throw InputError(std::string("psi is missing \"") + key + "\"");
        const auto& v = j[key];
        if (v.is_string() && v.get<std::string>() == "inf") return inf;
        if (!v.is_number()) throw InputError(std::string("psi field \"") + key + "\" must be a number");
        return v.get<double>();
    };
    auto only = [&](std::set<std::string> allowed) {
        for (const auto& [k, v] : j.items())
            if (!allowed.count(k)) throw InputError("unknown psi key \"" + k + "\" for family " + family);
    };
    if (family == "constant") {
        only({"family", "a", "b"});
        return PsiFunction::constant(number("a"), number("b"));
    }
    if (family == "power-endpoint") {
        only({"family", "a", "b", "alpha", "beta"});
        return PsiFunction::power_endpoint(number("a"), number("b"), j.contains("alpha") ? number("alpha") : 0.0,
                                           j.contains("beta") ? number("beta") : 0.0);
    }
    if (family == "tabulated") {
        only({"family", "points"});
        if (!j.contains("points") || !j["points"].is_array()) throw InputError("tabulated psi needs \"points\"");
        std::vector<std::pair<double, double>> pts;
        for (const auto& pt : j["points"]) {
            if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number())
                throw InputError("tabulated psi points must be [p, psi] pairs");
            pts.emplace_back(pt[0].get<double>(), pt[1].get<double>());
        }
        return PsiFunction::tabulated(std::move(pts));
    }
    throw InputError("unknown psi family '" + family + "' (expected constant, power-endpoint, tabulated)");
}

} // namespace monosob
