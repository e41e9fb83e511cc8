#include "monosob/exponent_tuple.hpp"

#include "monosob/errors.hpp"
#include "monosob/json_writer.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace monosob {

ExponentTuple::ExponentTuple(std::vector<double> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw InputError("exponent tuple must have at least one entry");
    for (double a : entries_) {
        if (!std::isfinite(a) || a < 0.0)
            throw InputError("exponent tuple entries must be finite and non-negative, got " + format_double(a));
    }
}

ExponentTuple ExponentTuple::zeros(std::size_t m) { return ExponentTuple(std::vector<double>(m, 0.0)); }

double ExponentTuple::sum() const noexcept { return std::accumulate(entries_.begin(), entries_.end(), 0.0); }

std::size_t ExponentTuple::positive_count() const noexcept {
    std::size_t k = 0;
    for (double a : entries_) k += a > 0.0;
    return k;
}

ExponentTuple ExponentTuple::head(std::size_t r) const {
    if (r == 0 || r > entries_.size()) throw InputError("head length out of range");
    return ExponentTuple(std::vector<double>(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(r)));
}

double effective_dimension(const ExponentTuple& a) noexcept { return static_cast<double>(a.dimension()) + a.sum(); }

double monomial_weight(const ExponentTuple& a, std::span<const double> x) {
    if (x.size() != a.dimension())
        throw InputError("point dimension " + std::to_string(x.size()) + " does not match tuple dimension " +
                         std::to_string(a.dimension()));
    double w = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (a[i] == 0.0) continue; // 0^0 = 1
        w *= std::pow(std::abs(x[i]), a[i]);
    }
    return w;
}

namespace {

void require_exponent_domain(double da, double p) {
    if (!std::isfinite(p)) throw InputError("p must be finite");
    if (da <= 1.0) throw DomainError("D(A) must exceed 1, got " + format_double(da));
    if (p < 1.0) throw DomainError("p must be at least 1, got " + format_double(p));
    if (p >= da) throw DomainError("p must be below D(A) = " + format_double(da) + ", got " + format_double(p));
}

} // namespace

double sobolev_exponent(const ExponentTuple& a, const ExponentTuple& b, double p) {
    const double da = effective_dimension(a);
    const double db = effective_dimension(b);
    require_exponent_domain(da, p);
    return db * p / (da - p);
}

double sobolev_p_of_q(double dim, double q) { return q * dim / (q + dim); }

double trace_exponent(const ExponentTuple& a, const ExponentTuple& b, double p) {
    if (b.dimension() >= a.dimension())
        throw InputError("trace dimension r = " + std::to_string(b.dimension()) + " must be below d = " +
                         std::to_string(a.dimension()));
    const double da = effective_dimension(a);
    require_exponent_domain(da, p);
    return effective_dimension(b) * p / (da - p);
}

SobolevFour SobolevFour::from_scaling(ExponentTuple a, ExponentTuple b, double p) {
    if (a.dimension() != b.dimension()) throw InputError("A and B must have the same dimension");
    const double q = sobolev_exponent(a, b, p);
    return SobolevFour(std::move(a), std::move(b), p, q, true);
}

SobolevFour SobolevFour::with_q(ExponentTuple a, ExponentTuple b, double p, double q) {
    if (a.dimension() != b.dimension()) throw InputError("A and B must have the same dimension");
    if (!(q > 0.0) || !std::isfinite(q)) throw InputError("q must be positive and finite");
    const double expected = sobolev_exponent(a, b, p);
    const bool valid = std::abs(q - expected) <= 1e-14 * expected;
    return SobolevFour(std::move(a), std::move(b), p, q, valid);
}

std::string SobolevFour::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("A").value(a_.entries());
    w.key("B").value(b_.entries());
    w.field("p", p_).field("q", q_).field("valid", valid_);
    w.end_object();
    return w.str();
}

std::string to_json(const ExponentTuple& a) {
    JsonWriter w;
    w.value(a.entries());
    return w.str();
}

ExponentTuple parse_exponent_tuple(const std::string& text) {
    std::vector<double> xs;
    const auto first = text.find_first_not_of(" \t");
    if (first != std::string::npos && text[first] == '[') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw InputError(std::string("malformed exponent tuple: ") + e.what());
        }
        if (!j.is_array()) throw InputError("exponent tuple must be a JSON array");
        for (const auto& v : j) {
            if (!v.is_number()) throw InputError("exponent tuple entries must be numbers");
            xs.push_back(v.get<double>());
        }
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto b = item.find_first_not_of(" \t");
            const auto e = item.find_last_not_of(" \t");
            if (b == std::string::npos) throw InputError("empty entry in exponent tuple '" + text + "'");
            const std::string tok = item.substr(b, e - b + 1);
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size())
                throw InputError("malformed number '" + tok + "' in exponent tuple");
            xs.push_back(v);
        }
    }
    return ExponentTuple(std::move(xs));
}

} // namespace monosob
