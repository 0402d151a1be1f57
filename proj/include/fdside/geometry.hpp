#pragma once

// Rate-pair geometry: pentagon membership, sampled frontiers, a brute-force
// projection of the BC multiple-access construction, and frontier distances.
//
// A frontier is a list of non-dominated rate pairs sorted by increasing r1
// (hence non-increasing r2). The region it describes is everything on or
// below the piecewise-linear curve through the samples, extended
// horizontally to the r2 axis and vertically down from the last sample.

#include "fdside/schemes.hpp"

#include <span>
#include <vector>

namespace fdside {

struct RatePoint {
    double r1 = 0.0;
    double r2 = 0.0;

    friend bool operator==(const RatePoint&, const RatePoint&) = default;
};

using Frontier = std::vector<RatePoint>;

/// Membership with every constraint relaxed by `slack`.
bool contains(const RatePentagon& pent, RatePoint pt, double slack = 0.0);

/// Non-dominated corner points of a pentagon (one point when the sum
/// constraint is inactive, two otherwise), sorted by r1.
Frontier pentagon_corners(const RatePentagon& pent);

/// Pentagon boundary sampled every `spacing` bits along the sum edge.
Frontier pentagon_boundary(const RatePentagon& pent, double spacing);

/// Removes dominated points; result sorted by r1 ascending, r2 descending.
Frontier non_dominated(std::vector<RatePoint> pts);

/// Frontier of {(R1, R20 + R22) : (R20, R22) in c1, (R1, R20) in c2} with
/// R20 and R22 restricted to multiples of grid_step. For every R20 on the grid
/// the largest feasible grid R22 and the largest feasible R1 are taken, which
/// is what a full scan over the R22 grid would keep.
Frontier fm_project_oracle(const MacComponentRegions& m, double grid_step);

/// Upper envelope of a frontier region at abscissa x (-inf beyond the last sample).
double frontier_height(std::span<const RatePoint> frontier, double x);

/// Smallest t >= 0 such that every inner sample moved by (-t, -t) lies in the
/// outer frontier region; the worst case over the inner samples.
double frontier_gap(std::span<const RatePoint> inner, std::span<const RatePoint> outer);

} // namespace fdside
