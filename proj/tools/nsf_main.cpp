// nsf: verification and explicit-estimates toolkit for representations of
// integers as a prime plus a non-squarefree number. All subcommands stream
// JSON lines: a run manifest first, then result records.

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nsf/nsf.hpp"

using json = nlohmann::json;
using namespace nsf;

namespace {

constexpr const char* kToolVersion = "0.1.0";

std::string iso_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void emit(std::ostream& os, const json& j) { os << j.dump() << "\n"; }

void emit_manifest(const std::string& subcommand, const json& parameters) {
    emit(std::cout, json{{"subcommand", subcommand},
                         {"parameters", parameters},
                         {"tool_version", kToolVersion},
                         {"started", iso_utc_now()},
                         {"finished", nullptr}});
}

json report_to_json(const verifier::VerificationReport& r) {
    return json{{"lo", r.lo},         {"hi", r.hi},
                {"covered", r.covered}, {"targeted", r.targeted},
                {"fallback", r.fallback}, {"exceptions", r.exceptions},
                {"ms", r.elapsed_ms}};
}

verifier::VerificationReport report_from_json(const json& j) {
    verifier::VerificationReport r;
    r.lo = j.at("lo").get<std::uint64_t>();
    r.hi = j.at("hi").get<std::uint64_t>();
    r.covered = j.at("covered").get<std::uint64_t>();
    r.targeted = j.at("targeted").get<std::uint64_t>();
    r.fallback = j.at("fallback").get<std::uint64_t>();
    r.exceptions = j.at("exceptions").get<std::vector<std::uint64_t>>();
    r.elapsed_ms = j.at("ms").get<double>();
    return r;
}

json breakdown_to_json(const criterion::CriterionBreakdown& b) {
    json terms{{"e_sum", b.e_sum}, {"bt_tail", b.bt_tail}, {"theta_tail", b.theta_tail}};
    if (b.w_squared_half) terms["w_squared_half"] = *b.w_squared_half;
    if (b.p_term) terms["p_term"] = *b.p_term;
    return json{{"mode", criterion::mode_name(b.mode)},
                {"lhs", b.lhs},
                {"terms", terms},
                {"rhs", b.rhs},
                {"margin", b.margin},
                {"verdict", b.verdict}};
}

// Accepts either a decimal integer or "log:<real>" giving log n directly.
double parse_log_n(const std::string& text) {
    if (text.rfind("log:", 0) == 0) {
        try {
            return std::stod(text.substr(4));
        } catch (const std::exception&) {
            throw DomainError("invalid log value: '" + text + "'");
        }
    }
    return log_big(parse_bigint(text));
}

unsigned threads_from_env(unsigned fallback) {
    const char* env = std::getenv("NSF_THREADS");
    if (env == nullptr || *env == '\0') return fallback;
    const long v = std::strtol(env, nullptr, 10);
    return v >= 1 ? static_cast<unsigned>(v) : fallback;
}

int run_verify(std::uint64_t start, std::uint64_t end, verifier::VerifierConfig cfg,
               const std::string& checkpoint_path, const std::string& output_path) {
    cfg.thread_count = threads_from_env(cfg.thread_count);
    emit_manifest("verify", {{"start", start},
                             {"end", end},
                             {"segment_width", cfg.segment_width},
                             {"s1_bound", cfg.s1_bound},
                             {"s2_bound", cfg.s2_bound},
                             {"threads", cfg.thread_count},
                             {"checkpoint", checkpoint_path},
                             {"output", output_path}});

    std::vector<verifier::VerificationReport> resume;
    if (!checkpoint_path.empty()) {
        std::ifstream in(checkpoint_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            resume.push_back(report_from_json(json::parse(line)));
        }
    }

    std::ofstream checkpoint;
    if (!checkpoint_path.empty()) checkpoint.open(checkpoint_path, std::ios::app);
    std::ofstream output;
    if (!output_path.empty()) output.open(output_path, std::ios::trunc);

    const auto on_segment = [&](const verifier::VerificationReport& r) {
        const json j = report_to_json(r);
        emit(std::cout, j);
        if (output.is_open()) emit(output, j);
        if (checkpoint.is_open()) {
            emit(checkpoint, j);
            checkpoint.flush();
        }
    };

    const auto total = verifier::verify_range(start, end, cfg, on_segment, resume);
    const json final_line = report_to_json(total);
    emit(std::cout, final_line);
    if (output.is_open()) emit(output, final_line);
    return total.exceptions.empty() ? 0 : 1;
}

int run_count(std::uint64_t n, const std::string& what) {
    emit_manifest("count", {{"n", n}, {"what", what}});
    json line{{"n", n}};
    if (what == "T") {
        line["T"] = reps::squarefree_rep_count(n);
    } else if (what == "g") {
        line["g"] = reps::goldbach_rep_count(n);
    } else if (what == "R") {
        line["R"] = reps::weighted_rep_sum(n).value;
    } else if (what == "theta") {
        line["theta"] = reps::chebyshev_theta(n).value;
    } else if (what == "deficit") {
        line["deficit"] = reps::deficit(n);
    } else {
        throw DomainError("count: unknown quantity '" + what + "'");
    }
    emit(std::cout, line);
    return 0;
}

int run_exceptions(std::uint64_t start, std::uint64_t end) {
    emit_manifest("exceptions", {{"start", start}, {"end", end}});
    const auto list = reps::exceptions(start, end);
    emit(std::cout, json{{"start", start}, {"end", end}, {"exceptions", list}});
    return list.empty() ? 0 : 1;
}

int run_criterion(const std::string& mode, const std::string& n_text, double A) {
    emit_manifest("criterion", {{"mode", mode}, {"n", n_text}, {"A", A}});
    const double log_n = parse_log_n(n_text);
    const auto breakdown =
        mode == "odd" ? criterion::criterion_odd(log_n, A) : criterion::criterion_grh(log_n, A);
    emit(std::cout, breakdown_to_json(breakdown));
    return breakdown.verdict ? 0 : 1;
}

int run_optimize(const std::string& mode, const std::string& n_text) {
    emit_manifest("optimize-a", {{"mode", mode}, {"n", n_text}});
    const double log_n = parse_log_n(n_text);
    const auto result = criterion::optimize_exponent(
        log_n, mode == "odd" ? criterion::ClosedForm::odd : criterion::ClosedForm::grh);
    emit(std::cout, json{{"mode", mode},
                         {"log_n", log_n},
                         {"A_star", result.A},
                         {"rhs", result.rhs},
                         {"unimodal", result.unimodal}});
    return 0;
}

int run_gate(const std::string& n_text) {
    emit_manifest("grh-gate", {{"n", n_text}});
    const BigInt n = parse_bigint(n_text);
    const auto witness = grh::gate(n);
    json line{{"n", n.str()}};
    if (witness) {
        line["witness"] = json{{"q", witness->q}, {"bound", witness->bound}};
    } else {
        line["witness"] = nullptr;
    }
    emit(std::cout, line);
    return witness ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification toolkit for writing integers as a prime plus a non-squarefree number"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "Run the staged pipeline over [start, end)");
    std::uint64_t v_start = 25, v_end = 0;
    verifier::VerifierConfig cfg;
    cfg.thread_count = std::max(1u, std::thread::hardware_concurrency());
    std::string checkpoint_path, output_path;
    verify->add_option("--start", v_start, "First n to verify (must be > 24)")->required();
    verify->add_option("--end", v_end, "One past the last n to verify")->required();
    verify->add_option("--segment-width", cfg.segment_width, "Segment width");
    verify->add_option("--s1-bound", cfg.s1_bound, "Covering offset bound");
    verify->add_option("--s2-bound", cfg.s2_bound, "Targeted offset bound");
    verify->add_option("--threads", cfg.thread_count, "Worker threads (NSF_THREADS overrides)");
    verify->add_option("--checkpoint", checkpoint_path, "JSONL checkpoint for resumable runs");
    verify->add_option("--output", output_path, "Also write segment reports to this file");

    // count
    auto* count = app.add_subcommand("count", "Exact representation counts and sums");
    std::uint64_t c_n = 0;
    std::string c_what = "T";
    count->add_option("--n", c_n, "Argument n")->required();
    count->add_option("--what", c_what, "One of T, g, R, theta, deficit")->required();

    // exceptions
    auto* exc = app.add_subcommand("exceptions", "Brute-force exception scan over [start, end)");
    std::uint64_t e_start = 1, e_end = 0;
    exc->add_option("--start", e_start, "First n")->required();
    exc->add_option("--end", e_end, "One past the last n")->required();

    // criterion
    auto* crit = app.add_subcommand("criterion", "Evaluate the explicit criterion at one point");
    std::string k_mode, k_n;
    double k_A = 0.25;
    crit->add_option("--mode", k_mode, "odd or grh")->required()->check(CLI::IsMember({"odd", "grh"}));
    crit->add_option("--n", k_n, "Integer n, or log:<real> for log n")->required();
    crit->add_option("--A", k_A, "Exponent A in (0, 1/2)")->required();

    // optimize-a
    auto* opt = app.add_subcommand("optimize-a", "Minimize the criterion rhs over A");
    std::string o_mode, o_n;
    opt->add_option("--mode", o_mode, "odd or grh")->required()->check(CLI::IsMember({"odd", "grh"}));
    opt->add_option("--n", o_n, "Integer n, or log:<real> for log n")->required();

    // grh-gate
    auto* gate = app.add_subcommand("grh-gate", "Least-prime gate witness for n > 8e9");
    std::string g_n;
    gate->add_option("--n", g_n, "Integer n (unbounded)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) return run_verify(v_start, v_end, cfg, checkpoint_path, output_path);
        if (count->parsed()) return run_count(c_n, c_what);
        if (exc->parsed()) return run_exceptions(e_start, e_end);
        if (crit->parsed()) return run_criterion(k_mode, k_n, k_A);
        if (opt->parsed()) return run_optimize(o_mode, o_n);
        if (gate->parsed()) return run_gate(g_n);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
