#pragma once

#include <cmath>
#include <cstddef>

namespace fdside {

struct ScalarMax {
    double x = 0.0;
    double value = 0.0;
    std::size_t evaluations = 0;
};

/// Golden-section maximization of f on [lo, hi]. Assumes f is unimodal on
/// the bracket; the endpoints are also evaluated so that a monotone f returns
/// the correct boundary.
template <class F>
ScalarMax golden_max(F&& f, double lo, double hi, double tol = 1e-9)
{
    constexpr double inv_phi = 0.6180339887498949;
    ScalarMax best{lo, f(lo), 1};
    auto consider = [&](double x, double v) {
        if (v > best.value) {
            best.x = x;
            best.value = v;
        }
    };
    consider(hi, f(hi));
    ++best.evaluations;

    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    best.evaluations += 2;
    consider(c, fc);
    consider(d, fd);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
            consider(c, fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
            consider(d, fd);
        }
        ++best.evaluations;
    }
    return best;
}

} // namespace fdside
