// Command-line front end. All numbers come from the C API; this file only
// parses flags and formats results.

#include "monosob/monosob.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#ifndef MONOSOB_DEFAULT_CONFIG_DIR
#define MONOSOB_DEFAULT_CONFIG_DIR "."
#endif

namespace {

enum Exit { exit_ok = 0, exit_failure = 1, exit_input = 2, exit_inconclusive = 3, exit_internal = 4 };

struct Failure {
    int code;
    std::string message;
};

int exit_for(monosob_status s) {
    switch (s) {
    case MONOSOB_OK: return exit_ok;
    case MONOSOB_ERR_INPUT:
    case MONOSOB_ERR_DOMAIN: return exit_input;
    case MONOSOB_ERR_NUMERICAL: return exit_inconclusive;
    default: return exit_internal;
    }
}

void check(monosob_status s) {
    if (s != MONOSOB_OK) throw Failure{exit_for(s), monosob_last_error()};
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
    void operator()(T* p) const { Destroy(p); }
};
using Tuple = std::unique_ptr<monosob_tuple, Deleter<monosob_tuple, monosob_tuple_destroy>>;
using Profile = std::unique_ptr<monosob_profile, Deleter<monosob_profile, monosob_profile_destroy>>;
using Psi = std::unique_ptr<monosob_psi, Deleter<monosob_psi, monosob_psi_destroy>>;
using Report = std::unique_ptr<monosob_report, Deleter<monosob_report, monosob_report_destroy>>;
using Campaign = std::unique_ptr<monosob_campaign, Deleter<monosob_campaign, monosob_campaign_destroy>>;
using ReportList = std::unique_ptr<monosob_report_list, Deleter<monosob_report_list, monosob_report_list_destroy>>;

std::string take(char* s) {
    std::string out(s ? s : "");
    monosob_string_free(s);
    return out;
}

Tuple tuple(const std::string& text) {
    monosob_tuple* t = nullptr;
    check(monosob_tuple_parse(text.c_str(), &t));
    return Tuple(t);
}

Profile profile(const std::string& spec) {
    monosob_profile* p = nullptr;
    check(monosob_profile_parse(spec.c_str(), &p));
    return Profile(p);
}

std::string read_text(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw Failure{exit_input, "cannot open '" + path + "'"};
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
    std::fclose(f);
    return out;
}

// ψ as inline JSON or @file.
Psi psi(const std::string& arg) {
    const std::string text = !arg.empty() && arg[0] == '@' ? read_text(arg.substr(1)) : arg;
    monosob_psi* p = nullptr;
    check(monosob_psi_parse(text.c_str(), &p));
    return Psi(p);
}

std::string num(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

// Ordered record of already-encoded JSON values.
class Record {
public:
    Record& add(const std::string& k, double v) { return raw(k, num(v)); }
    Record& add(const std::string& k, bool v) { return raw(k, v ? "true" : "false"); }
    Record& add(const std::string& k, int v) { return raw(k, std::to_string(v)); }
    Record& add(const std::string& k, const std::string& v) { return raw(k, quote(v), v); }
    Record& add(const std::string& k, const char* v) { return add(k, std::string(v)); }
    // `plain` is the text used in CSV and pretty output; defaults to the JSON encoding.
    Record& raw(const std::string& k, std::string encoded, std::optional<std::string> plain = std::nullopt) {
        std::string text = plain ? *plain : encoded;
        fields_.push_back({k, std::move(encoded), std::move(text)});
        return *this;
    }

    std::string json() const {
        std::string out = "{";
        for (std::size_t i = 0; i < fields_.size(); ++i) {
            if (i) out += ',';
            out += quote(fields_[i].key) + ':' + fields_[i].encoded;
        }
        return out + "}";
    }
    std::string csv_header() const {
        std::string out;
        for (std::size_t i = 0; i < fields_.size(); ++i) out += (i ? "," : "") + fields_[i].key;
        return out;
    }
    std::string csv_row() const {
        std::string out;
        for (std::size_t i = 0; i < fields_.size(); ++i) {
            std::string v = fields_[i].plain;
            if (v.find_first_of(",\"") != std::string::npos) {
                std::string q = "\"";
                for (char c : v) q += c == '"' ? std::string("\"\"") : std::string(1, c);
                v = q + "\"";
            }
            out += (i ? "," : "") + v;
        }
        return out;
    }
    std::string pretty() const {
        std::size_t w = 0;
        for (const auto& f : fields_) w = std::max(w, f.key.size());
        std::string out;
        for (const auto& f : fields_) out += f.key + std::string(w - f.key.size() + 2, ' ') + f.plain + "\n";
        return out;
    }

private:
    struct Field {
        std::string key;
        std::string encoded;
        std::string plain;
    };
    std::vector<Field> fields_;
};

struct Globals {
    std::string output = "json";
    std::optional<std::uint64_t> seed;
    std::string constant_form = "corrected";
    std::string trace_variant = "literal";
    std::optional<double> slack;
    std::optional<double> quad_rel_tol;
    std::optional<int> quad_max_panels;

    monosob_options options() const {
        monosob_options o;
        monosob_options_init(&o);
        o.constant_form = constant_form == "printed" ? MONOSOB_CONSTANTS_PRINTED : MONOSOB_CONSTANTS_CORRECTED;
        o.trace_variant = trace_variant == "corrected" ? MONOSOB_TRACE_CORRECTED : MONOSOB_TRACE_LITERAL;
        if (slack) o.slack = *slack;
        if (quad_rel_tol) o.quad_rel_tol = *quad_rel_tol;
        if (quad_max_panels) o.quad_max_panels = *quad_max_panels;
        return o;
    }
    int form() const { return options().constant_form; }
};

void emit(const Globals& g, const Record& r) {
    if (g.output == "csv") std::cout << r.csv_header() << "\n" << r.csv_row() << "\n";
    else if (g.output == "pretty") std::cout << r.pretty();
    else std::cout << r.json() << "\n";
}

std::string pretty_report(const std::string& json_line) {
    const auto j = nlohmann::ordered_json::parse(json_line);
    auto show = [](const nlohmann::ordered_json& v) {
        if (v.is_number_float()) return num(v.get<double>());
        return v.is_string() ? v.get<std::string>() : v.dump();
    };
    std::string out = j["id"].get<std::string>() + "  " + j["status"].get<std::string>() + "  ratio=" +
                      show(j["ratio"]) + "  lhs=" + show(j["lhs"]) + "  rhs=" + show(j["rhs"]) +
                      "  constant=" + show(j["constant"]) + "\n";
    out += "  inputs: " + j["inputs"].dump() + "\n";
    for (const auto& [k, v] : j["diagnostics"].items()) out += "  " + k + ": " + show(v) + "\n";
    return out;
}

int report_exit(int status) {
    if (status == MONOSOB_REPORT_FAIL) return exit_failure;
    if (status == MONOSOB_REPORT_INCONCLUSIVE) return exit_inconclusive;
    return exit_ok;
}

// Combines per-report exit codes; a failure outranks an inconclusive.
int worse(int a, int b) {
    if (a == exit_failure || b == exit_failure) return exit_failure;
    return std::max(a, b);
}

int emit_report(const Globals& g, const Report& r) {
    if (g.output == "csv") {
        char* s = nullptr;
        check(monosob_report_csv(r.get(), 1, &s));
        std::cout << take(s);
    } else {
        char* s = nullptr;
        check(monosob_report_json(r.get(), &s));
        const std::string line = take(s);
        std::cout << (g.output == "pretty" ? pretty_report(line) : line + "\n");
    }
    return report_exit(monosob_report_status(r.get()));
}

std::string tuple_json(const monosob_tuple* t) {
    char* s = nullptr;
    check(monosob_tuple_json(t, &s));
    return take(s);
}

std::string resolve_config(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::exists(path) || fs::path(path).is_absolute()) return path;
    if (const char* dir = std::getenv("MONOSOB_CONFIG_DIR")) {
        const auto p = fs::path(dir) / path;
        if (fs::exists(p)) return p.string();
    }
    const auto p = fs::path(MONOSOB_DEFAULT_CONFIG_DIR) / path;
    if (fs::exists(p)) return p.string();
    return path;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sharp weighted Sobolev constants, Grand Lebesgue norms and inequality checks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", monosob_version());

    Globals g;
    app.add_option("--output", g.output, "Output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
    app.add_option("--seed", g.seed, "Seed for family sampling (campaign)");
    app.add_option("--constant-form", g.constant_form, "Form of C1 and C(p)")
        ->check(CLI::IsMember({"corrected", "printed"}));
    app.add_option("--trace-formula-variant", g.trace_variant, "Form of the trace factor M")
        ->check(CLI::IsMember({"literal", "corrected"}));
    app.add_option("--slack", g.slack, "Pass iff ratio <= 1 + slack");
    app.add_option("--quad-rel-tol", g.quad_rel_tol, "Quadrature relative tolerance");
    app.add_option("--quad-max-panels", g.quad_max_panels, "Quadrature panel budget");

    std::string a_text, b_text, profile_text, psi_text, config;
    double p = 0.0, q = 0.0, c2 = 1.0;
    std::vector<double> deltas, qs, lambdas;
    std::vector<std::string> battery;
    bool gradient = false;

    auto* constants = app.add_subcommand("constants", "Exponents and sharp constants for a tuple A");
    constants->add_option("--A", a_text, "Exponent tuple, e.g. 1,2")->required();
    constants->add_option("--B", b_text, "Trace tuple on the first r coordinates");
    constants->add_option("--p", p, "Exponent p");
    constants->add_option("--q", q, "Exponent q for the trace factors (default: trace exponent)");

    auto* norm = app.add_subcommand("norm", "Weighted L^p norm of a radial profile");
    norm->add_option("--A", a_text)->required();
    norm->add_option("--p", p)->required();
    norm->add_option("--profile", profile_text, "Profile, e.g. bump:1")->required();
    norm->add_flag("--gradient", gradient, "Norm of |u'| instead of |u|");

    auto* gls = app.add_subcommand("gls-norm", "Grand Lebesgue norm of a radial profile");
    gls->add_option("--A", a_text)->required();
    gls->add_option("--psi", psi_text, "psi JSON or @file")->required();
    gls->add_option("--profile", profile_text)->required();
    gls->add_flag("--gradient", gradient);

    auto* fundamental = app.add_subcommand("fundamental", "Fundamental function phi(delta)");
    fundamental->add_option("--psi", psi_text)->required();
    fundamental->add_option("--delta", deltas)->required()->delimiter(',');

    auto* zeta = app.add_subcommand("zeta", "zeta transform of psi");
    zeta->add_option("--A", a_text)->required();
    zeta->add_option("--psi", psi_text)->required();
    zeta->add_option("--q", qs, "Points at which to evaluate zeta")->delimiter(',');

    auto* morrey = app.add_subcommand("morrey", "Modulus-of-continuity bound and check");
    morrey->add_option("--A", a_text)->required();
    morrey->add_option("--psi", psi_text)->required();
    morrey->add_option("--profile", profile_text)->required();
    morrey->add_option("--delta", deltas)->required()->delimiter(',');
    morrey->add_option("--C2", c2, "Constant C2 (default 1)");
    morrey->add_option("--calibrate", battery, "Profiles used to calibrate C2 (reported only)")->delimiter(';');

    auto* scaling = app.add_subcommand("scaling", "Dilation scaling-exponent fit");
    scaling->add_option("--A", a_text)->required();
    scaling->add_option("--B", b_text);
    scaling->add_option("--p", p)->required();
    scaling->add_option("--q", q, "Exponent q (default: scaling relation)");
    scaling->add_option("--profile", profile_text)->required();
    scaling->add_option("--lambdas", lambdas)->delimiter(',');

    auto* trace = app.add_subcommand("trace", "Radial trace (Hardy) check");
    trace->add_option("--A", a_text)->required();
    trace->add_option("--B", b_text)->required();
    trace->add_option("--p", p)->required();
    trace->add_option("--profile", profile_text)->required();

    auto* campaign = app.add_subcommand("campaign", "Run a verification campaign");
    campaign->add_option("--config", config, "Campaign config (JSON)")->required();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }

    try {
        const auto opts = g.options();
        if (*constants) {
            const auto a = tuple(a_text);
            Record r;
            double dim = 0.0;
            check(monosob_effective_dimension(a.get(), &dim));
            r.raw("A", tuple_json(a.get())).add("D", dim).add("k", static_cast<int>(monosob_tuple_positive_count(a.get())));
            r.add("constant_form", g.constant_form);
            double c1 = 0.0;
            check(monosob_c1(a.get(), g.form(), &c1));
            r.add("C1", c1);
            if (constants->count("--p")) {
                if (b_text.empty()) {
                    double qq = 0.0, c = 0.0;
                    check(monosob_sobolev_exponent(a.get(), a.get(), p, &qq));
                    r.add("p", p).add("q", qq);
                    check(monosob_c(a.get(), p, g.form(), &c));
                    r.add("C", c);
                    const auto m = monosob_tuple_dimension(a.get());
                    if (monosob_tuple_positive_count(a.get()) == 0 && m >= 3 && p < static_cast<double>(m)) {
                        double k = 0.0;
                        check(monosob_talenti(static_cast<int>(m), p, &k));
                        r.add("K", k);
                    }
                } else {
                    const auto b = tuple(b_text);
                    double qq = q;
                    if (!constants->count("--q")) check(monosob_trace_exponent(a.get(), b.get(), p, &qq));
                    monosob_trace_bounds t;
                    check(monosob_trace_bounds_eval(a.get(), b.get(), p, qq, opts.trace_variant, &t));
                    r.raw("B", tuple_json(b.get())).add("p", p).add("q", qq);
                    r.add("M", t.m).add("Q", t.q_factor).add("W_lower", t.w_lower).add("W_upper", t.w_upper);
                    r.add("q_at_least_p", t.q_at_least_p != 0).add("trace_formula_variant", g.trace_variant);
                }
            }
            emit(g, r);
            return exit_ok;
        }
        if (*norm) {
            const auto a = tuple(a_text);
            const auto u = profile(profile_text);
            monosob_norm_result n;
            check(gradient ? monosob_gradient_norm(u.get(), a.get(), p, &opts, &n)
                           : monosob_lp_norm(u.get(), a.get(), p, &opts, &n));
            Record r;
            r.add("profile", monosob_profile_name(u.get())).raw("A", tuple_json(a.get())).add("p", p);
            r.add("gradient", gradient).add("norm", n.value).add("panels", n.panels);
            r.add("achieved_rel_error", n.achieved_rel_error).add("truncation_radius", n.truncation_radius);
            emit(g, r);
            return exit_ok;
        }
        if (*gls) {
            const auto a = tuple(a_text);
            const auto u = profile(profile_text);
            const auto ps = psi(psi_text);
            monosob_supremum s;
            check(monosob_gls_norm(u.get(), ps.get(), a.get(), gradient, &opts, &s));
            Record r;
            r.add("profile", monosob_profile_name(u.get())).raw("A", tuple_json(a.get())).add("gradient", gradient);
            r.add("value", s.value).add("infinite", s.infinite != 0).add("argmax", s.argmax);
            r.add("at_boundary", s.at_boundary != 0).add("evaluations", s.evaluations);
            emit(g, r);
            return exit_ok;
        }
        if (*fundamental) {
            const auto ps = psi(psi_text);
            int code = exit_ok;
            if (g.output == "json") {
                for (double d : deltas) {
                    monosob_supremum s;
                    check(monosob_fundamental(ps.get(), d, &s));
                    Record r;
                    r.add("delta", d).add("phi", s.value).add("argmax", s.argmax).add("at_boundary", s.at_boundary != 0);
                    emit(g, r);
                }
            } else {
                bool first = true;
                for (double d : deltas) {
                    monosob_supremum s;
                    check(monosob_fundamental(ps.get(), d, &s));
                    Record r;
                    r.add("delta", d).add("phi", s.value).add("argmax", s.argmax).add("at_boundary", s.at_boundary != 0);
                    if (g.output == "csv") std::cout << (first ? r.csv_header() + "\n" : "") << r.csv_row() << "\n";
                    else std::cout << r.pretty();
                    first = false;
                }
            }
            return code;
        }
        if (*zeta) {
            const auto a = tuple(a_text);
            const auto ps = psi(psi_text);
            monosob_psi* z = nullptr;
            check(monosob_zeta_transform(ps.get(), a.get(), g.form(), &z));
            const Psi zeta_fn(z);
            double lo = 0.0, hi = 0.0, dim = 0.0;
            monosob_psi_support(zeta_fn.get(), &lo, &hi);
            check(monosob_effective_dimension(a.get(), &dim));
            Record r;
            r.add("D", dim).add("support_lower", lo).raw("support_upper", std::isinf(hi) ? "\"inf\"" : num(hi));
            std::string values = "[";
            for (std::size_t i = 0; i < qs.size(); ++i) {
                double pq = 0.0, v = 0.0;
                check(monosob_sobolev_p_of_q(dim, qs[i], &pq));
                check(monosob_psi_eval(zeta_fn.get(), qs[i], &v));
                values += (i ? "," : "") + Record().add("q", qs[i]).add("p", pq).add("zeta", v).json();
            }
            r.raw("values", values + "]");
            emit(g, r);
            return exit_ok;
        }
        if (*morrey) {
            const auto a = tuple(a_text);
            const auto u = profile(profile_text);
            const auto ps = psi(psi_text);
            if (!battery.empty()) {
                std::vector<Profile> owned;
                std::vector<const monosob_profile*> raw;
                for (const auto& s : battery) {
                    owned.push_back(profile(s));
                    raw.push_back(owned.back().get());
                }
                double calibrated = 0.0;
                check(monosob_calibrate_c2(raw.data(), raw.size(), ps.get(), a.get(), deltas.data(), deltas.size(),
                                           &opts, &calibrated));
                std::cerr << "calibrated C2 = " << num(calibrated) << " (not applied; pass --C2 to use it)\n";
            }
            int code = exit_ok;
            bool first = true;
            for (double d : deltas) {
                monosob_report* rep = nullptr;
                check(monosob_check_morrey(u.get(), ps.get(), a.get(), c2, d, &opts, &rep));
                const Report owned(rep);
                if (g.output == "csv" && !first) {
                    char* s = nullptr;
                    check(monosob_report_csv(owned.get(), 0, &s));
                    std::cout << take(s);
                    code = worse(code, report_exit(monosob_report_status(owned.get())));
                } else {
                    code = worse(code, emit_report(g, owned));
                }
                first = false;
            }
            return code;
        }
        if (*scaling) {
            const auto a = tuple(a_text);
            const auto b = tuple(b_text.empty() ? a_text : b_text);
            const auto u = profile(profile_text);
            monosob_scaling_fit fit;
            check(monosob_fit_scaling(u.get(), a.get(), b.get(), p, scaling->count("--q") ? q : 0.0, lambdas.data(),
                                      lambdas.size(), &opts, &fit));
            Record r;
            r.add("profile", monosob_profile_name(u.get())).raw("A", tuple_json(a.get())).raw("B", tuple_json(b.get()));
            r.add("p", p).add("slope_lhs", fit.slope_lhs).add("slope_rhs", fit.slope_rhs);
            r.add("expected_lhs", fit.expected_lhs).add("expected_rhs", fit.expected_rhs);
            r.add("balanced", fit.balanced != 0).add("failed_points", fit.failed_points);
            emit(g, r);
            return fit.balanced ? exit_ok : exit_failure;
        }
        if (*trace) {
            const auto a = tuple(a_text);
            const auto b = tuple(b_text);
            const auto u = profile(profile_text);
            monosob_report* rep = nullptr;
            check(monosob_check_trace(u.get(), a.get(), b.get(), p, &opts, &rep));
            return emit_report(g, Report(rep));
        }
        if (*campaign) {
            monosob_campaign* c = nullptr;
            check(monosob_campaign_load(resolve_config(config).c_str(), &c));
            const Campaign owned(c);
            if (g.seed) monosob_campaign_set_seed(owned.get(), *g.seed);
            // Flags given explicitly override the config file.
            monosob_options o;
            monosob_campaign_get_options(owned.get(), &o);
            if (app.count("--constant-form")) o.constant_form = opts.constant_form;
            if (app.count("--trace-formula-variant")) o.trace_variant = opts.trace_variant;
            if (g.slack) o.slack = *g.slack;
            if (g.quad_rel_tol) o.quad_rel_tol = *g.quad_rel_tol;
            if (g.quad_max_panels) o.quad_max_panels = *g.quad_max_panels;
            monosob_campaign_set_options(owned.get(), &o);

            monosob_report_list* l = nullptr;
            check(monosob_campaign_run(owned.get(), &l));
            const ReportList list(l);
            char* s = nullptr;
            if (g.output == "csv") {
                check(monosob_report_list_csv(list.get(), &s));
                std::cout << take(s);
            } else {
                check(monosob_report_list_jsonl(list.get(), &s));
                const std::string text = take(s);
                if (g.output == "pretty") {
                    std::size_t start = 0;
                    while (start < text.size()) {
                        const auto end = text.find('\n', start);
                        std::cout << pretty_report(text.substr(start, end - start));
                        start = end + 1;
                    }
                } else {
                    std::cout << text;
                }
            }
            // A failure outranks an inconclusive outcome.
            bool any_fail = false, any_inconclusive = false;
            for (std::size_t i = 0; i < monosob_report_list_size(list.get()); ++i) {
                const int st = monosob_report_status(monosob_report_list_get(list.get(), i));
                any_fail |= st == MONOSOB_REPORT_FAIL;
                any_inconclusive |= st == MONOSOB_REPORT_INCONCLUSIVE;
            }
            return any_fail ? exit_failure : any_inconclusive ? exit_inconclusive : exit_ok;
        }
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_input;
}
