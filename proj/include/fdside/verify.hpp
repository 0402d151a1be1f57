#pragma once

// Property suites that cross-check the closed forms against independent
// brute-force evaluations and the gap results against randomized draws.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fdside {

struct VerifyConfig {
    std::uint64_t seed = 1;
    /// Overrides each suite's default draw count when set.
    std::optional<std::size_t> draws;
    double fm_grid_step = 1e-3;
    /// Adds 0.01 bit to BC's R1 bound inside the containment suite, which
    /// must then fail. Used to check that the harness can fail at all.
    bool perturb_bc_r1 = false;
    unsigned threads = 0;
};

using DrawDescription = std::vector<std::pair<std::string, double>>;

struct SuiteResult {
    std::string name;
    std::size_t draws = 0;
    double max_error = 0.0;
    double threshold = 0.0;
    bool passed = false;
    /// Short human-readable note on what max_error measures.
    std::string metric;
    /// Parameters of the draw that produced max_error (or the first failure).
    DrawDescription worst_draw;
    /// Suites that report trends rather than hard properties.
    bool informational = false;
};

/// Suite names in the order a full run executes them.
const std::vector<std::string>& suite_names();

/// Throws DomainError for an unknown name.
SuiteResult run_suite(std::string_view name, const VerifyConfig& cfg);

std::vector<SuiteResult> run_all_suites(const VerifyConfig& cfg);

} // namespace fdside
