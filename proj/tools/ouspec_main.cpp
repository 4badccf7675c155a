// ouspec command-line front end: seeded verification suites, counterexample
// search, spectral inspection and functional calculus on element files.
//
// Exit codes: 0 pass, 1 fail, 2 usage, 3 internal.

#include "ouspec/suites.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace ouspec;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw numeric_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void print_summary(const std::vector<VerificationReport>& reports) {
    for (const VerificationReport& r : reports) {
        std::printf("%-24s %-14s %-8s max-residual %.3e  (%.1f ms)\n", r.suite.c_str(),
                    r.model.c_str(), to_string(r.verdict), r.max_residual(), r.wall_ms);
    }
}

int overall_exit(const std::vector<VerificationReport>& reports) {
    for (const VerificationReport& r : reports)
        if (r.verdict != Verdict::pass) return 1;
    return 0;
}

int run_verify(const SuiteConfig& cfg, const std::string& out_path) {
    const std::vector<VerificationReport> reports = run_suite(cfg);
    print_summary(reports);
    if (!out_path.empty()) emit_report(reports, out_path);
    return overall_exit(reports);
}

int run_counterexample(const SuiteConfig& cfg, const std::string& target, double threshold,
                       const std::string& out_path) {
    const VerificationReport rep = find_counterexample(cfg, target, threshold);
    std::vector<VerificationReport> reports{rep};
    print_summary(reports);
    if (rep.verdict == Verdict::fail && !rep.witnesses.empty()) {
        std::printf("witness (defect %.6g):\n", rep.witnesses[0].residual);
        for (const auto& [k, v] : rep.witnesses[0].payload)
            std::printf("  %s: %s\n", k.c_str(), v.c_str());
    }
    if (!out_path.empty()) emit_report(reports, out_path);
    return overall_exit(reports);
}

int run_spectrum(const std::string& in_path) {
    const auto [ctx, elem] = parse_element_text(read_file(in_path));
    const SpectralResolution r = spectral_resolution(elem);
    std::printf("model: %s\n", ctx->descriptor().c_str());
    std::printf("bounds: L=%.17g U=%.17g\n", r.lower(), r.upper());
    std::printf("jumps: %zu\n", r.jumps.size());
    for (size_t i = 0; i < r.jumps.size(); ++i) {
        std::printf("  jump %.17g\n", r.jumps[i]);
        std::printf("    atom: %s\n", to_text(r.atoms[i].element()).c_str());
        std::printf("    cumulative: %s\n", to_text(r.cumulative[i].element()).c_str());
    }
    return 0;
}

int run_calculus(const std::string& in_path, const std::string& fn_spec) {
    const auto [ctx, elem] = parse_element_text(read_file(in_path));
    const RealFunction g = RealFunction::parse(fn_spec);
    const Element out = continuous_fc(elem, g);
    std::printf("%s\n", to_text(out).c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ouspec: spectral order unit space toolkit"};
    app.require_subcommand(1);

    SuiteConfig cfg;
    std::string out_path, target = "eq7", in_path, fn_spec;
    double threshold = 0.01;

    auto add_model_opts = [&](CLI::App* cmd, bool need_out) {
        cmd->add_option("--model", cfg.model, "matrix:N | spin:P:N")->required();
        cmd->add_option("--seed", cfg.seed, "64-bit seed");
        cmd->add_option("--trials", cfg.trials, "trial count (>= 1)");
        cmd->add_option("--tolerance", cfg.tolerance, "pass-threshold override");
        auto* out = cmd->add_option("--out", out_path, "persist the report to this path");
        if (need_out) out->required();
    };

    CLI::App* verify = app.add_subcommand("verify", "run invariant suites");
    add_model_opts(verify, false);
    verify->add_option("--suite", cfg.suites, "suite name (repeatable; default all)");

    CLI::App* report = app.add_subcommand("report", "run suites and persist the report");
    add_model_opts(report, true);
    report->add_option("--suite", cfg.suites, "suite name (repeatable; default all)");

    CLI::App* counter = app.add_subcommand("counterexample", "search for law violations");
    add_model_opts(counter, false);
    counter->add_option("--target", target, "eq7 | bilinearity | psi-linearity")->required();
    counter->add_option("--threshold", threshold, "defect threshold (default 0.01)");

    CLI::App* spectrum = app.add_subcommand("spectrum", "print a spectral resolution");
    spectrum->add_option("--in", in_path, "element file")->required();

    CLI::App* calculus = app.add_subcommand("calculus", "apply a function to an element");
    calculus->add_option("--in", in_path, "element file")->required();
    calculus->add_option("--fn", fn_spec, "poly c0 c1 ... | pos | abs | chi u v | root n")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return run_verify(cfg, out_path);
        if (report->parsed()) return run_verify(cfg, out_path);
        if (counter->parsed()) return run_counterexample(cfg, target, threshold, out_path);
        if (spectrum->parsed()) return run_spectrum(in_path);
        if (calculus->parsed()) return run_calculus(in_path, fn_spec);
    } catch (const contract_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
