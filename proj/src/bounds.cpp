#include "fdside/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace fdside {

namespace {

constexpr double kEnvelopeRefineTolerance = 1e-6;

double genie_sum(const ChannelParams& p, double lambda)
{
    const double lb = 1.0 - lambda;
    return cap(lb * p.snr2 / (1.0 + lb * p.inr)) + side_cap(p.w, lambda * p.snr_side) +
           cap(p.snr1 + lb * p.inr + 2.0 * std::sqrt(lb * p.snr1 * p.inr));
}

} // namespace

RatePentagon no_interference_outer(const ChannelParams& p)
{
    p.validate();
    return {cap(p.snr1), cap(p.snr2), kUnbounded};
}

OuterBoundPoint genie_outer(const ChannelParams& p, double lambda)
{
    p.validate();
    require_in_range(lambda, 0.0, 1.0, "lambda");
    return {lambda, {cap(p.snr1), cap((1.0 - lambda) * p.snr2), genie_sum(p, lambda)}};
}

bool OuterEnvelope::contains(RatePoint pt, double slack) const
{
    return std::any_of(family.begin(), family.end(), [&](const OuterBoundPoint& b) {
        return fdside::contains(b.pentagon, pt, slack);
    });
}

OuterEnvelope genie_outer_envelope(const ChannelParams& p, double grid_resolution)
{
    p.validate();
    if (!(grid_resolution > 0.0 && grid_resolution <= 0.1))
        throw DomainError("envelope grid resolution must lie in (0, 0.1]");

    OuterEnvelope env;
    const auto n = static_cast<int>(std::ceil(1.0 / grid_resolution - 1e-9));
    env.family.reserve(static_cast<std::size_t>(n) + 2);
    std::size_t best = 0;
    for (int i = 0; i <= n; ++i) {
        const double lambda = std::min(1.0, static_cast<double>(i) * grid_resolution);
        env.family.push_back(genie_outer(p, lambda));
        if (env.family.back().pentagon.sum_max > env.family[best].pentagon.sum_max)
            best = env.family.size() - 1;
    }

    // Golden-section refinement of the sum-bound maximizer between the
    // neighbouring grid points.
    double lo = env.family[best == 0 ? 0 : best - 1].lambda;
    double hi = env.family[std::min(best + 1, env.family.size() - 1)].lambda;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = genie_sum(p, x1);
    double f2 = genie_sum(p, x2);
    while (hi - lo > kEnvelopeRefineTolerance) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = genie_sum(p, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = genie_sum(p, x1);
        }
    }
    env.family.push_back(genie_outer(p, 0.5 * (lo + hi)));

    std::vector<RatePoint> pts;
    for (const OuterBoundPoint& b : env.family)
        for (const RatePoint& c : pentagon_corners(b.pentagon))
            pts.push_back(c);
    env.frontier = non_dominated(std::move(pts));
    return env;
}

double no_sc_asymptotic_sum(const ChannelParams& p)
{
    ChannelParams z = p;
    z.w = 0.0;
    switch (classify_regime(z)) {
    case Regime::Weak: return cap(z.snr2) + cap(z.snr1 / (1.0 + z.inr));
    case Regime::Strong: return cap(z.snr1 + z.inr);
    case Regime::VeryStrong: return cap(z.snr1) + cap(z.snr2);
    }
    return 0.0;
}

double inr_star(double snr1, double snr2)
{
    if (!(snr1 >= 0.0 && snr2 >= 0.0) || !std::isfinite(snr1) || !std::isfinite(snr2))
        throw DomainError("inr_star needs finite non-negative SNRs");
    // A - B rewritten as (A^2 - B^2) / (A + B) to avoid cancellation at high SNR.
    const double a = 2.0 * snr1 + snr2 * (1.0 + snr1);
    const double b = 2.0 * std::sqrt(snr1 * (snr1 + snr2 + snr1 * snr2));
    if (a + b == 0.0)
        return 0.0;
    const double c = snr2 * (1.0 + snr1);
    return c * c / (a + b);
}

} // namespace fdside
