#pragma once

// Sum-rate maximization over power splits and the multiplexing-gain sweeps
// built on top of it.

#include "fdside/geometry.hpp"
#include "fdside/model.hpp"
#include "fdside/schemes.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fdside {

using SplitChoice = std::variant<PowerSplit, EcScale>;

/// Fraction of M1's power that ends up on the side channel. For EC the
/// side-channel copy is k times the main-channel signal, so the fraction is
/// k^2 / (1 + k)^2 under a unit total amplitude budget.
double side_power_fraction(const SplitChoice& s);
double ec_side_power_fraction(double k);

struct OptResult {
    Scheme scheme = Scheme::NoSC;
    SplitChoice best_split = PowerSplit{};
    double best_sum = 0.0;
    std::size_t evaluations = 0;
    std::string method;
};

/// Sum rate of a scheme at a single split parameter: lambda for BC (with
/// beta chosen by bc_beta_star), CC and DC; k for EC; ignored for NoSC.
double scheme_sum_at(Scheme scheme, const ChannelParams& p, double x);

inline constexpr double kEcMaxScale = 100.0;

/// EC requires w >= 1 and throws DomainError otherwise.
OptResult maximize_sum(Scheme scheme, const ChannelParams& p);

enum class NuPolicy { EqualMu, Constant };

struct SweepConfig {
    double snr_db = 15.0;
    double w = 1.0;
    NuPolicy nu_policy = NuPolicy::EqualMu;
    double nu = 0.0; ///< used with NuPolicy::Constant
    double mu_start = 0.0;
    double mu_end = 2.0;
    double mu_step = 0.01;
    unsigned threads = 0;
};

struct SweepRow {
    double mu = 0.0;
    double nu = 0.0;
    Scheme scheme = Scheme::NoSC;
    double gain = 0.0;
    double gain_ratio_vs_nosc = 0.0;
    /// Side-channel power fraction in [0, 1] (EC: see side_power_fraction).
    double optimal_lambda = 0.0;
    /// EC amplitude scale behind optimal_lambda.
    std::optional<double> ec_k;
    double sum_rate = 0.0;
};

/// start, start + step, ... up to end (inclusive within 1e-9 of a step).
std::vector<double> mu_grid(double start, double end, double step);

ChannelParams symmetric_params(double snr_db, double mu, double nu, double w);

/// Rows for BC, CC, DC, EC and NoSC at every mu, sorted by mu then scheme.
/// EC rows are omitted when w < 1.
std::vector<SweepRow> figure6_sweep(const SweepConfig& cfg);

/// Same rows without NoSC; the interesting column is optimal_lambda.
std::vector<SweepRow> figure7_sweep(const SweepConfig& cfg);

struct FrontierSample {
    RatePoint point;
    SplitChoice split = PowerSplit{};
};

/// Non-dominated rate pairs over the split grid (step `resolution` in
/// lambda and beta; EC uses a log grid in k of about 1/resolution points).
/// Sorted by r1 ascending, with r2 non-increasing.
std::vector<FrontierSample> pareto_frontier(Scheme scheme, const ChannelParams& p,
                                            double resolution);

} // namespace fdside
