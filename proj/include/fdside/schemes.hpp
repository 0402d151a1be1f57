#pragma once

// Achievable rate regions of the four side-channel interference-cancellation
// schemes: bin-and-cancel (BC), compress-and-cancel (CC), decode-and-cancel
// (DC) and estimate-and-cancel (EC).

#include "fdside/model.hpp"

#include <limits>
#include <optional>
#include <string_view>

namespace fdside {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// {R1, R2 >= 0 : R1 <= r1_max, R2 <= r2_max, R1 + R2 <= sum_max}.
/// sum_max == kUnbounded means there is no sum constraint.
struct RatePentagon {
    double r1_max = 0.0;
    double r2_max = 0.0;
    double sum_max = kUnbounded;

    bool has_sum_constraint() const { return sum_max != kUnbounded; }
    /// Largest achievable R1 + R2 inside the region.
    double max_sum_rate() const;
};

/// The two multiple-access regions behind the BC construction:
/// c1 over (R20, R22) at M1's intended receiver, c2 over (R1, R20) at M2.
struct MacComponentRegions {
    RatePentagon c1;
    RatePentagon c2;
};

enum class Scheme { BC, CC, DC, EC, NoSC };

std::string_view to_string(Scheme s);
/// Accepts "bc", "cc", "dc", "ec", "nosc" (also "no-sc").
std::optional<Scheme> parse_scheme(std::string_view name);

/// a = (1 + lambda * snr_side / w)^w, computed as 2^side_cap so that w = 0 gives 1.
double side_gain_factor(const ChannelParams& p, double lambda);

/// BC region for a fixed split. Strong regime forces beta = 0; very strong
/// ignores the split and returns the point-to-point rectangle.
RatePentagon bc_region(const ChannelParams& p, const PowerSplit& s);

MacComponentRegions bc_mac_components(const ChannelParams& p, const PowerSplit& s);

/// Largest BC sum rate for a fixed split (note SNR1 in the common-rate denominator).
double bc_sum_rate(const ChannelParams& p, double lambda, double beta);

struct BetaStar {
    double beta = 0.0;
    /// True when the closed form was unusable and a beta grid was searched instead.
    bool grid_fallback = false;
};

/// Private-power fraction that maximizes bc_sum_rate for a given lambda.
BetaStar bc_beta_star(const ChannelParams& p, double lambda);

RatePentagon cc_region(const ChannelParams& p, double lambda);

/// Smallest Wyner-Ziv quantization noise variance (in units of the noise
/// power, referred to the interference as seen at M2) that the side channel
/// can carry. Empty when the side channel carries no rate at all.
std::optional<double> cc_quantization_variance(const ChannelParams& p, double lambda);

/// R1 of compress-and-cancel for a given normalized quantization variance q.
double cc_r1_from_variance(const ChannelParams& p, double lambda, double q);

RatePentagon dc_region(const ChannelParams& p, double lambda);

/// Requires w >= 1. Non-integer w is accepted; see is_integer_bandwidth.
RatePentagon ec_region(const ChannelParams& p, EcScale k);

/// True for w in {1, 2, 3, ...}, the bandwidth ratios the EC analysis covers.
bool is_integer_bandwidth(double w);

/// Classic Z-channel (no side channel): BC with lambda = 0 and w = 0. In the
/// weak regime an omitted beta is replaced by the sum-rate maximizing one.
RatePentagon z_channel_region(const ChannelParams& p, std::optional<double> beta = std::nullopt);

} // namespace fdside
