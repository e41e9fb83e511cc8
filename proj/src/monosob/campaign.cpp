#include "monosob/campaign.hpp"

#include "monosob/errors.hpp"
#include "monosob/json_writer.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace monosob {
namespace {

using nlohmann::json;

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) throw InputError("unknown key \"" + k + "\" in " + where);
}

double number(const json& j, const std::string& what) {
    if (!j.is_number()) throw InputError(what + " must be a number");
    return j.get<double>();
}

std::vector<double> numbers(const json& j, const std::string& what) {
    if (j.is_number()) return {j.get<double>()};
    if (!j.is_array() || j.empty()) throw InputError(what + " must be a number or a non-empty array of numbers");
    std::vector<double> out;
    for (const auto& v : j) out.push_back(number(v, what));
    return out;
}

ExponentTuple tuple(const json& j, const std::string& what) {
    if (!j.is_array()) throw InputError(what + " must be an array of exponents");
    std::vector<double> e;
    for (const auto& v : j) e.push_back(number(v, what));
    return ExponentTuple(std::move(e));
}

InequalityId parse_type(const std::string& s) {
    if (s == "sobolev") return InequalityId::sobolev;
    if (s == "gls") return InequalityId::gls;
    if (s == "trace") return InequalityId::trace;
    if (s == "morrey") return InequalityId::morrey;
    if (s == "scaling") return InequalityId::scaling;
    throw InputError("unknown check type '" + s + "' (expected sobolev, gls, trace, morrey, scaling)");
}

std::set<std::string> keys_for(InequalityId t) {
    std::set<std::string> k{"type", "profiles", "family"};
    switch (t) {
    case InequalityId::sobolev: k.insert({"A", "p"}); break;
    case InequalityId::gls: k.insert({"A", "psi"}); break;
    case InequalityId::trace: k.insert({"A", "B", "p"}); break;
    case InequalityId::morrey: k.insert({"A", "psi", "C2", "delta"}); break;
    case InequalityId::scaling: k.insert({"A", "B", "p", "q", "lambdas"}); break;
    }
    return k;
}

// Domain problems are configuration errors too; report them before any
// check runs.
void validate_domain(const CheckSpec& c, const std::string& where) {
    const double dim = effective_dimension(*c.a);
    try {
        switch (c.type) {
        case InequalityId::sobolev:
            for (double p : c.p) {
                if (!(p > 1.0)) throw DomainError("p must exceed 1");
                sobolev_exponent(*c.a, *c.a, p);
            }
            break;
        case InequalityId::trace:
            for (double p : c.p) {
                if (!(p > 1.0)) throw DomainError("p must exceed 1");
                trace_bounds(*c.a, *c.b, p, trace_exponent(*c.a, *c.b, p));
            }
            break;
        case InequalityId::scaling:
            if (!c.q) sobolev_exponent(*c.a, c.b ? *c.b : *c.a, c.p.front());
            break;
        case InequalityId::gls:
            zeta_transform(parse_psi(*c.psi_json), *c.a);
            break;
        case InequalityId::morrey:
            psi_d_transform(parse_psi(*c.psi_json), dim, 1.0);
            break;
        }
    } catch (const DomainError& e) {
        throw InputError(where + ": " + e.what());
    } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
    }
}

CheckSpec parse_check(const json& j, std::size_t index) {
    const std::string where = "check #" + std::to_string(index);
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw InputError(where + " must be an object with a \"type\" string");
    CheckSpec c;
    c.type = parse_type(j["type"]);
    only_keys(j, keys_for(c.type), where);

    if (!j.contains("A")) throw InputError(where + " needs \"A\"");
    c.a = tuple(j["A"], where + " A");
    if (j.contains("B")) c.b = tuple(j["B"], where + " B");
    if (c.type == InequalityId::trace && !c.b) throw InputError(where + " needs \"B\"");
    if (j.contains("p")) c.p = numbers(j["p"], where + " p");
    if ((c.type == InequalityId::sobolev || c.type == InequalityId::trace || c.type == InequalityId::scaling) &&
        c.p.empty())
        throw InputError(where + " needs \"p\"");
    if (c.type == InequalityId::scaling && c.p.size() != 1) throw InputError(where + " takes a single p");
    if (j.contains("q")) c.q = number(j["q"], where + " q");
    if (j.contains("lambdas")) c.lambdas = numbers(j["lambdas"], where + " lambdas");
    if (c.type == InequalityId::gls || c.type == InequalityId::morrey) {
        if (!j.contains("psi") || !j["psi"].is_object()) throw InputError(where + " needs a \"psi\" object");
        c.psi_json = j["psi"].dump();
        parse_psi(*c.psi_json);
    }
    if (c.type == InequalityId::morrey) {
        if (!j.contains("delta")) throw InputError(where + " needs \"delta\"");
        c.deltas = numbers(j["delta"], where + " delta");
        for (double d : c.deltas)
            if (!(d > 0.0)) throw InputError(where + " delta values must be positive");
        if (j.contains("C2")) {
            if (j["C2"].is_string() && j["C2"].get<std::string>() == "calibrate") c.calibrate_c2 = true;
            else c.c2 = number(j["C2"], where + " C2");
            if (!c.calibrate_c2 && !(c.c2 > 0.0)) throw InputError(where + " C2 must be positive");
        }
    }
    if (j.contains("profiles")) {
        if (!j["profiles"].is_array()) throw InputError(where + " profiles must be an array of strings");
        for (const auto& p : j["profiles"]) {
            if (!p.is_string()) throw InputError(where + " profiles must be an array of strings");
            c.profiles.push_back(p.get<std::string>());
            parse_profile(c.profiles.back());
        }
    }
    if (j.contains("family")) {
        const auto& f = j["family"];
        if (!f.is_object()) throw InputError(where + " family must be an object");
        only_keys(f, {"name", "count", "box"}, where + " family");
        if (!f.contains("name") || !f["name"].is_string()) throw InputError(where + " family needs a name");
        FamilySpec fs;
        fs.name = f["name"];
        if (!f.contains("count") || !f["count"].is_number_unsigned())
            throw InputError(where + " family needs a non-negative integer count");
        fs.count = f["count"].get<std::size_t>();
        if (f.contains("box")) {
            if (!f["box"].is_array()) throw InputError(where + " family box must be an array of [lo, hi]");
            for (const auto& iv : f["box"]) {
                if (!iv.is_array() || iv.size() != 2) throw InputError(where + " family box must be an array of [lo, hi]");
                fs.box.emplace_back(number(iv[0], "box bound"), number(iv[1], "box bound"));
            }
        }
        make_family(fs.name, fs.box);
        c.family = std::move(fs);
    }
    if (c.profiles.empty() && !c.family) throw InputError(where + " needs \"profiles\" or \"family\"");
    validate_domain(c, where);
    return c;
}

std::vector<RadialProfile> profiles_for(const CheckSpec& c, std::uint64_t seed, std::size_t index) {
    std::vector<RadialProfile> out;
    for (const auto& s : c.profiles) out.push_back(parse_profile(s));
    if (c.family) {
        const auto fam = make_family(c.family->name, c.family->box);
        // Each check gets its own shift so that sibling checks are not
        // evaluated on identical parameter points.
        const std::uint64_t check_seed = seed + 0x9E3779B97F4A7C15ull * (index + 1);
        for (auto& u : fam.sample(c.family->count, check_seed)) out.push_back(std::move(u));
    }
    return out;
}

} // namespace

CampaignConfig parse_campaign_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text, nullptr, true, true);
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed campaign config: ") + e.what());
    }
    if (!j.is_object()) throw InputError("campaign config must be a JSON object");
    only_keys(j, {"seed", "constant_form", "trace_formula_variant", "slack", "quadrature", "checks"}, "campaign config");
    CampaignConfig cfg;
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw InputError("seed must be a non-negative integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("constant_form")) {
        if (!j["constant_form"].is_string()) throw InputError("constant_form must be a string");
        cfg.options.constant_form = parse_constant_form(j["constant_form"].get<std::string>());
    }
    if (j.contains("trace_formula_variant")) {
        if (!j["trace_formula_variant"].is_string()) throw InputError("trace_formula_variant must be a string");
        cfg.options.trace_variant = parse_trace_variant(j["trace_formula_variant"].get<std::string>());
    }
    if (j.contains("slack")) {
        cfg.options.slack = number(j["slack"], "slack");
        if (!(cfg.options.slack >= 0.0)) throw InputError("slack must be non-negative");
    }
    if (j.contains("quadrature")) {
        const auto& q = j["quadrature"];
        if (!q.is_object()) throw InputError("quadrature must be an object");
        only_keys(q, {"rel_tol", "max_panels"}, "quadrature");
        if (q.contains("rel_tol")) cfg.options.quadrature.rel_tol = number(q["rel_tol"], "rel_tol");
        if (q.contains("max_panels")) {
            if (!q["max_panels"].is_number_unsigned()) throw InputError("max_panels must be a positive integer");
            cfg.options.quadrature.max_panels = q["max_panels"].get<int>();
        }
        if (!(cfg.options.quadrature.rel_tol > 0.0) || cfg.options.quadrature.max_panels < 1)
            throw InputError("quadrature tolerances must be positive");
    }
    if (j.contains("checks")) {
        if (!j["checks"].is_array()) throw InputError("checks must be an array");
        std::size_t i = 0;
        for (const auto& c : j["checks"]) cfg.checks.push_back(parse_check(c, i++));
    }
    return cfg;
}

CampaignConfig load_campaign_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open campaign config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_campaign_config(ss.str());
}

std::vector<VerificationReport> run_campaign(const CampaignConfig& config) {
    std::vector<VerificationReport> out;
    for (std::size_t i = 0; i < config.checks.size(); ++i) {
        const auto& c = config.checks[i];
        const auto& a = *c.a;
        const auto profiles = profiles_for(c, config.seed, i);
        switch (c.type) {
        case InequalityId::sobolev:
            for (const auto& u : profiles)
                for (double p : c.p) out.push_back(check_sobolev(u, a, p, config.options));
            break;
        case InequalityId::gls: {
            const auto psi = parse_psi(*c.psi_json);
            for (const auto& u : profiles) out.push_back(verify_gls_sobolev(u, psi, a, config.options));
            break;
        }
        case InequalityId::trace:
            for (const auto& u : profiles)
                for (double p : c.p) out.push_back(check_trace_radial(u, a, *c.b, p, config.options));
            break;
        case InequalityId::morrey: {
            const auto psi = parse_psi(*c.psi_json);
            double c2 = c.c2;
            if (c.calibrate_c2) c2 = calibrate_morrey_c2(profiles, psi, a, c.deltas, config.options.quadrature).c2;
            for (const auto& u : profiles)
                for (double d : c.deltas) {
                    auto r = check_morrey(u, psi, a, c2, d, config.options);
                    if (c.calibrate_c2) r.add_diagnostic("C2_calibrated", true);
                    out.push_back(std::move(r));
                }
            break;
        }
        case InequalityId::scaling: {
            const auto& b = c.b ? *c.b : a;
            const double p = c.p.front();
            const double q = c.q ? *c.q : sobolev_exponent(a, b, p);
            const auto lambdas = c.lambdas.empty() ? default_lambda_grid() : c.lambdas;
            for (const auto& u : profiles) out.push_back(check_scaling(u, a, b, p, q, lambdas, config.options));
            break;
        }
        }
    }
    return out;
}

std::string reports_to_jsonl(const std::vector<VerificationReport>& reports) {
    std::string out;
    for (const auto& r : reports) {
        out += r.to_json();
        out += '\n';
    }
    return out;
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
    std::string out = VerificationReport::csv_header() + '\n';
    for (const auto& r : reports) {
        out += r.to_csv_row();
        out += '\n';
    }
    return out;
}

} // namespace monosob
