#pragma once

// Outer bounds on the capacity region.

#include "fdside/geometry.hpp"
#include "fdside/schemes.hpp"

#include <vector>

namespace fdside {

/// Point-to-point bound: R1 <= C(SNR1), R2 <= C(SNR2).
RatePentagon no_interference_outer(const ChannelParams& p);

/// One member of the genie-aided outer-bound family, indexed by the
/// side-channel power fraction.
struct OuterBoundPoint {
    double lambda = 0.0;
    RatePentagon pentagon;
};

/// Genie-aided bound for a fixed side-channel power fraction.
OuterBoundPoint genie_outer(const ChannelParams& p, double lambda);

/// Union of genie_outer over a lambda grid, plus a local refinement of the
/// lambda that maximizes the sum bound.
struct OuterEnvelope {
    std::vector<OuterBoundPoint> family;
    Frontier frontier;

    /// True when some member of the family contains pt (within slack).
    bool contains(RatePoint pt, double slack = 0.0) const;
};

inline constexpr double kDefaultEnvelopeResolution = 1e-3;

OuterEnvelope genie_outer_envelope(const ChannelParams& p,
                                   double grid_resolution = kDefaultEnvelopeResolution);

/// High-SNR sum capacity without a side channel (w is ignored).
double no_sc_asymptotic_sum(const ChannelParams& p);

/// INR above which the genie sum constraint stops binding when w = 0.
double inr_star(double snr1, double snr2);

} // namespace fdside
