#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace monosob {

/// Wire identifiers of the checked inequalities; the strings are part of the
/// report format.
enum class InequalityId { sobolev, gls, trace, morrey, scaling };

std::string_view to_string(InequalityId id) noexcept;

enum class CheckStatus { pass, fail, inconclusive };

std::string_view to_string(CheckStatus s) noexcept;

struct ReportField {
    std::string key;
    std::variant<double, bool, std::string> value;
};

/// Outcome of one numerical inequality check, lhs <= constant * rhs.
struct VerificationReport {
    InequalityId id = InequalityId::sobolev;
    double lhs = 0.0;
    double rhs = 0.0;
    double constant = 1.0;
    double ratio = 0.0; // lhs / (constant * rhs); NaN when undefined
    double slack = 1e-6;
    bool pass = false;
    CheckStatus status = CheckStatus::inconclusive;
    std::vector<ReportField> tolerances;
    std::vector<ReportField> diagnostics;
    std::string inputs_json = "{}";
    std::string inputs_digest;

    void add_diagnostic(std::string key, double v) { diagnostics.push_back({std::move(key), v}); }
    void add_diagnostic(std::string key, bool v) { diagnostics.push_back({std::move(key), v}); }
    void add_diagnostic(std::string key, std::string v) { diagnostics.push_back({std::move(key), std::move(v)}); }

    /// One JSON object on a single line.
    std::string to_json() const;
    /// inequality-id,ratio,pass,diagnostics (diagnostics as k=v;k=v, quoted).
    std::string to_csv_row() const;
    static std::string csv_header();
};

/// Fills ratio, pass and status; the report is inconclusive when rhs or the
/// constant is zero or any side is not finite.
VerificationReport make_report(InequalityId id, double lhs, double rhs, double constant, double slack,
                               std::string inputs_json);
VerificationReport inconclusive_report(InequalityId id, std::string inputs_json, const std::string& reason);

/// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view text);

} // namespace monosob
