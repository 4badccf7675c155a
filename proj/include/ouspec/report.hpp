#pragma once

#include "ouspec/common.hpp"

#include <cstdint>
#include <span>
#include <utility>

namespace ouspec {

enum class Verdict { pass, fail, unknown };

const char* to_string(Verdict v);

struct CheckResult {
    std::string name;
    long trials = 0;
    double max_residual = 0.0;
    std::string note;  // emitted only when nonempty
};

struct Witness {
    std::string kind;
    double residual = 0.0;
    // Ordered payload; element values use the ous-core text format.
    std::vector<std::pair<std::string, std::string>> payload;
};

// Shared report schema: suite id, config echo, per-check residuals, witness
// payloads, verdict. Wall time is a console diagnostic only; it is not part
// of the canonical encoding (identical config and seed must give identical
// report bytes).
struct VerificationReport {
    std::string suite;
    std::string model;
    std::uint64_t seed = 0;
    long trials = 0;
    std::string tolerance = "default";
    Verdict verdict = Verdict::unknown;
    std::vector<CheckResult> checks;
    std::vector<Witness> witnesses;
    double wall_ms = 0.0;

    double max_residual() const;
};

std::string serialize(const VerificationReport& r);
std::string serialize(std::span<const VerificationReport> rs);
std::vector<VerificationReport> parse_reports(const std::string& text);

/// Canonical-bytes equality (wall time excluded).
bool operator==(const VerificationReport& a, const VerificationReport& b);

/// Writes the canonical encoding, newline-terminated; throws numeric_error
/// on I/O failure.
void emit_report(std::span<const VerificationReport> rs, const std::string& path);

} // namespace ouspec
