#include "monosob/report.hpp"

#include "monosob/json_writer.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>

namespace monosob {

std::string_view to_string(InequalityId id) noexcept {
    switch (id) {
    case InequalityId::sobolev: return "sobolev-1.6a";
    case InequalityId::gls: return "gls-5.6";
    case InequalityId::trace: return "trace-6.3a";
    case InequalityId::morrey: return "morrey-7.8";
    case InequalityId::scaling: return "scaling-2.4";
    }
    return "unknown";
}

std::string_view to_string(CheckStatus s) noexcept {
    switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::inconclusive: return "inconclusive";
    }
    return "unknown";
}

std::string fnv1a_hex(std::string_view text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

VerificationReport make_report(InequalityId id, double lhs, double rhs, double constant, double slack,
                               std::string inputs_json) {
    VerificationReport r;
    r.id = id;
    r.lhs = lhs;
    r.rhs = rhs;
    r.constant = constant;
    r.slack = slack;
    r.inputs_digest = fnv1a_hex(inputs_json);
    r.inputs_json = std::move(inputs_json);
    const double denom = constant * rhs;
    if (!std::isfinite(lhs) || !std::isfinite(denom) || denom == 0.0) {
        r.ratio = std::numeric_limits<double>::quiet_NaN();
        r.status = CheckStatus::inconclusive;
        r.pass = false;
        return r;
    }
    r.ratio = lhs / denom;
    r.pass = r.ratio <= 1.0 + slack;
    r.status = r.pass ? CheckStatus::pass : CheckStatus::fail;
    return r;
}

VerificationReport inconclusive_report(InequalityId id, std::string inputs_json, const std::string& reason) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto r = make_report(id, nan, nan, nan, 0.0, std::move(inputs_json));
    r.add_diagnostic("reason", reason);
    return r;
}

namespace {

void write_fields(JsonWriter& w, const std::vector<ReportField>& fields) {
    w.begin_object();
    for (const auto& f : fields) {
        w.key(f.key);
        std::visit([&](const auto& v) { w.value(v); }, f.value);
    }
    w.end_object();
}

} // namespace

std::string VerificationReport::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.field("id", to_string(id));
    w.field("status", to_string(status));
    w.field("pass", pass);
    w.field("lhs", lhs);
    w.field("rhs", rhs);
    w.field("constant", constant);
    w.field("ratio", ratio);
    w.field("slack", slack);
    w.key("tolerances");
    write_fields(w, tolerances);
    w.key("diagnostics");
    write_fields(w, diagnostics);
    w.key("inputs").raw(inputs_json);
    w.field("inputs_digest", inputs_digest);
    w.end_object();
    return w.str();
}

std::string VerificationReport::csv_header() { return "inequality-id,ratio,pass,diagnostics"; }

std::string VerificationReport::to_csv_row() const {
    std::string diag;
    for (const auto& f : diagnostics) {
        if (!diag.empty()) diag += ';';
        diag += f.key;
        diag += '=';
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, double>) diag += format_double(v);
                else if constexpr (std::is_same_v<T, bool>) diag += v ? "true" : "false";
                else diag += v;
            },
            f.value);
    }
    std::string quoted = "\"";
    for (char c : diag) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return std::string(to_string(id)) + ',' + format_double(ratio) + ',' + (pass ? "true" : "false") + ',' + quoted;
}

} // namespace monosob
