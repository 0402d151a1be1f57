#pragma once

// Capacity gaps of the BC, DC and EC schemes against the outer bounds, and
// multiplexing gains (finite SNR and high-SNR limits).

#include "fdside/model.hpp"
#include "fdside/schemes.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace fdside {

struct GapFlags {
    /// DC: w >= 1 and snr_side >= snr2. EC: the snr_side threshold holds.
    /// BC: always true (the one-bit result has no side conditions).
    bool conditions_met = true;
    /// BC weak regime with the private power put at the noise level of M2.
    bool noise_level_split = false;
    /// BC weak regime with (1 - lambda) * inr < 1: beta = 1 instead.
    bool treat_as_noise = false;
    /// EC with a non-integer bandwidth ratio, outside the analyzed case.
    bool non_integer_w = false;
};

/// Gaps in bits/s/Hz divided by the total bandwidth 1 + w.
struct GapReport {
    Scheme scheme = Scheme::BC;
    Regime regime = Regime::Weak;
    double w = 0.0;
    /// Split used for the inner region (BC and DC) or the EC scale.
    PowerSplit split;
    double ec_k = 0.0;

    double d_r1 = 0.0;
    double d_r2 = 0.0;
    double d_sum = 0.0;
    double analytic_bound_r1 = 0.0;
    double analytic_bound_r2 = 0.0;
    double analytic_bound_sum = 0.0;
    GapFlags flags;

    /// Numeric gaps do not exceed the closed-form bounds by more than slack.
    bool within_analytic(double slack = 1e-9) const;
};

GapReport gap_bc(const ChannelParams& p, double lambda);

/// Strong-regime BC sum gap bound with the common-message term dropped,
/// (1/(1+w)) * log2(1 + 2 sqrt(lambda_bar snr1 inr) / (1 + snr1 + lambda_bar inr)).
/// This is smaller than the true gap whenever the uplink term is non-zero;
/// kept so the randomized suite can report how often it is exceeded.
double bc_strong_sum_gap_without_common_term(const ChannelParams& p, double lambda);

/// Best-lambda DC region against the point-to-point outer bound.
GapReport gap_dc(const ChannelParams& p);

/// Fixed k = sqrt(2) - 1. Throws DomainError for w < 1.
GapReport gap_ec(const ChannelParams& p);

inline constexpr double kEcGapScale = 0.41421356237309503; // sqrt(2) - 1
inline constexpr double kEcThresholdFactor = 5.8284271247461903; // 3 + 2 sqrt(2)

/// snr_side at or above which the EC half-bit result applies.
double ec_side_threshold(double inr);

/// Sum rate over the single-link capacity at snr = snr1 = snr2.
double mgain_finite(const ChannelParams& p, double sum_rate);

/// High-SNR multiplexing gain with inr = snr^mu and snr_side = snr^nu.
/// Scheme::BC is also the side-channel sum-capacity gain.
double mgain_asymptotic(Scheme scheme, double mu, double nu, double w);

/// Ratio of the side-channel to the no-side-channel asymptotic gains.
double mgain_improvement(double mu, double nu, double w);

struct MGainPoint {
    double mu = 0.0;
    double nu = 0.0;
    double w = 0.0;
    Scheme scheme = Scheme::NoSC;
    double gain = 0.0;
};

// Randomized falsification search over the gap results.

struct GapSuiteConfig {
    Scheme scheme = Scheme::BC;
    std::size_t draws = 10000;
    std::uint64_t seed = 1;
    std::vector<double> w_values{0.0, 0.5, 1.0, 2.0};
    double db_lo = 0.0;
    double db_hi = 60.0;
    /// DC/EC: draw snr_side (and integer w >= 1) so the theorem conditions hold.
    bool constrain_conditions = false;
    unsigned threads = 1;
};

struct GapDraw {
    ChannelParams params;
    double lambda = 0.0;
};

struct GapSuiteResult {
    Scheme scheme = Scheme::BC;
    std::size_t draws = 0;
    std::size_t conditioned_draws = 0;
    /// Largest normalized gaps over all draws.
    double max_d_r1 = 0.0;
    double max_d_r2 = 0.0;
    double max_d_sum = 0.0;
    /// Largest gaps times (1 + w), comparable to the bandwidth-free ceilings.
    double max_scaled_r1 = 0.0;
    double max_scaled_r2 = 0.0;
    double max_scaled_sum = 0.0;
    double ceiling_r1 = 0.0;
    double ceiling_r2 = 0.0;
    double ceiling_sum = 0.0;
    std::size_t violations = 0;
    std::size_t analytic_violations = 0;
    /// BC only: strong-regime draws whose sum gap exceeds
    /// bc_strong_sum_gap_without_common_term.
    std::size_t uncorrected_strong_exceedances = 0;
    /// Draw whose gaps come closest to (or furthest past) the ceilings.
    GapDraw worst_draw;
    GapReport worst_report;
    double worst_utilization = 0.0;

    bool passed() const { return violations == 0 && analytic_violations == 0; }
};

/// Draw i uses DrawRng(seed, i), so results do not depend on `threads`.
GapDraw draw_gap_params(const GapSuiteConfig& cfg, std::size_t index);

GapSuiteResult run_gap_suite(const GapSuiteConfig& cfg);

} // namespace fdside
