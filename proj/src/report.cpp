#include "ouspec/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ouspec {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::unknown: return "unknown";
    }
    return "unknown";
}

double VerificationReport::max_residual() const {
    double m = 0.0;
    for (const CheckResult& c : checks) m = std::max(m, c.max_residual);
    return m;
}

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Verdict verdict_from(const std::string& s) {
    if (s == "pass") return Verdict::pass;
    if (s == "fail") return Verdict::fail;
    if (s == "unknown") return Verdict::unknown;
    throw contract_error("report parse: bad verdict '" + s + "'");
}

} // namespace

std::string serialize(const VerificationReport& r) {
    std::ostringstream out;
    out << "ouspec-report: v1\n";
    out << "suite: " << r.suite << '\n';
    out << "model: " << r.model << '\n';
    out << "seed: " << r.seed << '\n';
    out << "trials: " << r.trials << '\n';
    out << "tolerance: " << r.tolerance << '\n';
    out << "max-residual: " << fmt(r.max_residual()) << '\n';
    out << "checks: " << r.checks.size() << '\n';
    for (const CheckResult& c : r.checks) {
        out << "  " << c.name << ":\n";
        out << "    trials: " << c.trials << '\n';
        out << "    max-residual: " << fmt(c.max_residual) << '\n';
        if (!c.note.empty()) out << "    note: " << c.note << '\n';
    }
    out << "witnesses: " << r.witnesses.size() << '\n';
    for (size_t i = 0; i < r.witnesses.size(); ++i) {
        const Witness& w = r.witnesses[i];
        out << "  w" << i << ":\n";
        out << "    kind: " << w.kind << '\n';
        out << "    residual: " << fmt(w.residual) << '\n';
        for (const auto& [k, v] : w.payload) out << "    " << k << ": " << v << '\n';
    }
    out << "verdict: " << to_string(r.verdict) << '\n';
    return out.str();
}

std::string serialize(std::span<const VerificationReport> rs) {
    std::string out;
    for (const VerificationReport& r : rs) out += serialize(r);
    return out;
}

namespace {

struct Line {
    int indent;
    std::string key;
    std::string value;
};

bool split_line(const std::string& raw, Line& out) {
    if (raw.empty()) return false;
    size_t i = 0;
    while (i < raw.size() && raw[i] == ' ') ++i;
    out.indent = static_cast<int>(i);
    const size_t colon = raw.find(':', i);
    if (colon == std::string::npos) throw contract_error("report parse: missing ':' in '" + raw + "'");
    out.key = raw.substr(i, colon - i);
    size_t vstart = colon + 1;
    if (vstart < raw.size() && raw[vstart] == ' ') ++vstart;
    out.value = vstart <= raw.size() ? raw.substr(vstart) : "";
    return true;
}

} // namespace

std::vector<VerificationReport> parse_reports(const std::string& text) {
    std::vector<VerificationReport> out;
    std::istringstream in(text);
    std::string raw;
    VerificationReport* cur = nullptr;
    enum class Section { none, checks, witnesses } section = Section::none;

    while (std::getline(in, raw)) {
        Line ln;
        if (!split_line(raw, ln)) continue;
        if (ln.indent == 0) {
            if (ln.key == "ouspec-report") {
                if (ln.value != "v1") throw contract_error("report parse: unsupported version");
                out.emplace_back();
                cur = &out.back();
                section = Section::none;
                continue;
            }
            if (!cur) throw contract_error("report parse: content before header");
            if (ln.key == "suite") cur->suite = ln.value;
            else if (ln.key == "model") cur->model = ln.value;
            else if (ln.key == "seed") cur->seed = std::stoull(ln.value);
            else if (ln.key == "trials") cur->trials = std::stol(ln.value);
            else if (ln.key == "tolerance") cur->tolerance = ln.value;
            else if (ln.key == "max-residual") { /* derived */ }
            else if (ln.key == "checks") section = Section::checks;
            else if (ln.key == "witnesses") section = Section::witnesses;
            else if (ln.key == "verdict") cur->verdict = verdict_from(ln.value);
            else throw contract_error("report parse: unknown key '" + ln.key + "'");
            continue;
        }
        if (!cur) throw contract_error("report parse: indented content before header");
        if (ln.indent == 2) {
            if (section == Section::checks)
                cur->checks.push_back(CheckResult{ln.key, 0, 0.0, ""});
            else if (section == Section::witnesses)
                cur->witnesses.push_back(Witness{});
            else
                throw contract_error("report parse: unexpected nesting");
            continue;
        }
        if (ln.indent == 4) {
            if (section == Section::checks) {
                CheckResult& c = cur->checks.back();
                if (ln.key == "trials") c.trials = std::stol(ln.value);
                else if (ln.key == "max-residual") c.max_residual = std::stod(ln.value);
                else if (ln.key == "note") c.note = ln.value;
                else throw contract_error("report parse: unknown check key '" + ln.key + "'");
            } else if (section == Section::witnesses) {
                Witness& w = cur->witnesses.back();
                if (ln.key == "kind") w.kind = ln.value;
                else if (ln.key == "residual") w.residual = std::stod(ln.value);
                else w.payload.emplace_back(ln.key, ln.value);
            } else {
                throw contract_error("report parse: unexpected nesting");
            }
            continue;
        }
        throw contract_error("report parse: bad indentation in '" + raw + "'");
    }
    return out;
}

bool operator==(const VerificationReport& a, const VerificationReport& b) {
    return serialize(a) == serialize(b);
}

void emit_report(std::span<const VerificationReport> rs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw numeric_error("cannot open report path for writing: " + path);
    out << serialize(rs);
    out.flush();
    if (!out) throw numeric_error("I/O error while writing report: " + path);
}

} // namespace ouspec
