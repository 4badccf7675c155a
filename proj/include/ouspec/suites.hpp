#pragma once

#include "ouspec/report.hpp"
#include "ouspec/rng.hpp"
#include "ouspec/spectral.hpp"

#include <optional>

namespace ouspec {

struct SuiteConfig {
    std::string model;  // "matrix:N" | "spin:P:N"
    std::uint64_t seed = 0;
    long trials = 100;
    std::optional<double> tolerance;   // overrides the suite pass threshold
    std::vector<std::string> suites;   // empty or {"all"} selects every applicable suite
};

std::vector<std::string> available_suites(const Ctx& ctx);

VerificationReport run_one_suite(const Ctx& ctx, const std::string& suite,
                                 const SuiteConfig& cfg);

/// Runs the selected suites; throws contract_error on an unknown suite name.
/// Internal check errors become fail reports with a diagnostic note.
std::vector<VerificationReport> run_suite(const SuiteConfig& cfg);

/// Seeded search for witnesses against a target law; spin models only.
/// Verdict fail means a witness at or above the threshold was found.
VerificationReport find_counterexample(const SuiteConfig& cfg, const std::string& target,
                                       double threshold = 0.01);

// ---- Seeded generators (substream = seed XOR splitmix64(trial)) -------------

Element random_element(const Ctx& ctx, Xorshift64Star& rng);
Element random_effect(const Ctx& ctx, Xorshift64Star& rng);

/// Effect whose nonzero spectral values all sit in [min_nonzero, 1]; the
/// smallest one is returned through lambda_min.
Element random_gapped_effect(const Ctx& ctx, Xorshift64Star& rng, double min_nonzero,
                             double& lambda_min);

Projection random_projection(const Ctx& ctx, Xorshift64Star& rng, bool allow_trivial = false);

/// Pair sharing an eigenframe (commuting) when `commuting`, independent otherwise.
std::pair<Element, Element> random_pair(const Ctx& ctx, Xorshift64Star& rng, bool commuting);

} // namespace ouspec
