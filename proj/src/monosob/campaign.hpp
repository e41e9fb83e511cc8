#pragma once

#include "monosob/exponent_tuple.hpp"
#include "monosob/report.hpp"
#include "monosob/verifier.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace monosob {

struct FamilySpec {
    std::string name;
    std::size_t count = 0;
    std::vector<std::pair<double, double>> box; // empty: family default
};

/// One entry of a campaign's "checks" array.
struct CheckSpec {
    InequalityId type = InequalityId::sobolev;
    std::optional<ExponentTuple> a;
    std::optional<ExponentTuple> b;
    std::vector<double> p;
    std::optional<double> q;
    std::optional<std::string> psi_json;
    bool calibrate_c2 = false;
    double c2 = 1.0;
    std::vector<double> deltas;
    std::vector<double> lambdas;
    std::vector<std::string> profiles;
    std::optional<FamilySpec> family;
};

struct CampaignConfig {
    std::uint64_t seed = 1;
    CheckOptions options;
    std::vector<CheckSpec> checks;
};

/// Parses and fully validates a campaign config (JSON). Unknown keys,
/// malformed tuples, profiles or psi functions raise InputError before any
/// computation happens.
CampaignConfig parse_campaign_config(const std::string& text);
CampaignConfig load_campaign_config(const std::string& path);

/// Runs every check in config order, profiles in listed-then-sampled order.
std::vector<VerificationReport> run_campaign(const CampaignConfig& config);

std::string reports_to_jsonl(const std::vector<VerificationReport>& reports);
std::string reports_to_csv(const std::vector<VerificationReport>& reports);

} // namespace monosob
