#include "fdside/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fdside {

bool contains(const RatePentagon& pent, RatePoint pt, double slack)
{
    return pt.r1 <= pent.r1_max + slack && pt.r2 <= pent.r2_max + slack &&
           pt.r1 + pt.r2 <= pent.sum_max + slack;
}

Frontier pentagon_corners(const RatePentagon& pent)
{
    const double r1 = std::min(pent.r1_max, pent.sum_max);
    const double r2 = std::min(pent.r2_max, pent.sum_max);
    if (r1 + r2 <= pent.sum_max)
        return {{r1, r2}};
    return {{pent.sum_max - r2, r2}, {r1, pent.sum_max - r1}};
}

Frontier pentagon_boundary(const RatePentagon& pent, double spacing)
{
    Frontier corners = pentagon_corners(pent);
    if (corners.size() == 1 || !(spacing > 0.0))
        return corners;
    const RatePoint a = corners[0];
    const RatePoint b = corners[1];
    const double len = b.r1 - a.r1;
    const auto n = static_cast<std::size_t>(std::ceil(len / spacing));
    Frontier out;
    out.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = n == 0 ? 0.0 : static_cast<double>(i) / static_cast<double>(n);
        out.push_back({a.r1 + t * len, a.r2 - t * len});
    }
    return out;
}

Frontier non_dominated(std::vector<RatePoint> pts)
{
    std::sort(pts.begin(), pts.end(), [](const RatePoint& x, const RatePoint& y) {
        return x.r1 != y.r1 ? x.r1 > y.r1 : x.r2 > y.r2;
    });
    Frontier out;
    double best_r2 = -std::numeric_limits<double>::infinity();
    for (const RatePoint& p : pts) {
        if (p.r2 > best_r2) {
            out.push_back(p);
            best_r2 = p.r2;
        }
    }
    std::reverse(out.begin(), out.end());
    return out;
}

Frontier fm_project_oracle(const MacComponentRegions& m, double grid_step)
{
    if (!(grid_step > 0.0))
        throw DomainError("grid_step must be positive");
    const RatePentagon& c1 = m.c1;
    const RatePentagon& c2 = m.c2;

    // Grid index of the largest multiple of grid_step not exceeding x.
    auto floor_index = [grid_step](double x) -> long {
        if (x < 0.0)
            return -1;
        return static_cast<long>(std::floor(x / grid_step + 1e-9));
    };

    const double r20_cap = std::min({c1.r1_max, c1.sum_max, c2.r2_max, c2.sum_max});
    const long n20 = floor_index(r20_cap);
    std::vector<RatePoint> pts;
    pts.reserve(static_cast<std::size_t>(std::max(n20 + 1, 0L)));
    for (long i = 0; i <= n20; ++i) {
        const double r20 = static_cast<double>(i) * grid_step;
        const long j = floor_index(std::min(c1.r2_max, c1.sum_max - r20));
        if (j < 0)
            continue;
        const double r22 = static_cast<double>(j) * grid_step;
        const double r1 = std::min(c2.r1_max, c2.sum_max - r20);
        if (r1 < 0.0)
            continue;
        pts.push_back({r1, r20 + r22});
    }
    return non_dominated(std::move(pts));
}

double frontier_height(std::span<const RatePoint> f, double x)
{
    if (f.empty() || x > f.back().r1)
        return -std::numeric_limits<double>::infinity();
    if (x <= f.front().r1)
        return f.front().r2;
    auto it = std::lower_bound(f.begin(), f.end(), x,
                               [](const RatePoint& p, double v) { return p.r1 < v; });
    const RatePoint& hi = *it;
    const RatePoint& lo = *(it - 1);
    if (hi.r1 == lo.r1)
        return std::max(hi.r2, lo.r2);
    const double t = (x - lo.r1) / (hi.r1 - lo.r1);
    return lo.r2 + t * (hi.r2 - lo.r2);
}

double frontier_gap(std::span<const RatePoint> inner, std::span<const RatePoint> outer)
{
    if (inner.empty() || outer.empty())
        throw DomainError("frontier_gap needs non-empty frontiers");
    const double x_max = outer.back().r1;
    double worst = 0.0;
    for (const RatePoint& p : inner) {
        auto inside = [&](double t) { return p.r2 - t <= frontier_height(outer, p.r1 - t); };
        double lo = std::max(0.0, p.r1 - x_max);
        if (inside(lo)) {
            worst = std::max(worst, lo);
            continue;
        }
        // The outer region contains everything below its lowest sample.
        double hi = std::max(lo, p.r2 - std::min(outer.front().r2, outer.back().r2)) + 1.0;
        for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
            const double mid = 0.5 * (lo + hi);
            (inside(mid) ? hi : lo) = mid;
        }
        worst = std::max(worst, hi);
    }
    return worst;
}

} // namespace fdside
