#pragma once

// Reproducible per-draw random streams for the randomized suites. Draw i of a
// run with master seed s always sees the same numbers, independent of how
// draws are distributed over worker threads.

#include <cstddef>
#include <cstdint>
#include <random>

namespace fdside {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class DrawRng {
public:
    DrawRng(std::uint64_t master_seed, std::uint64_t draw_index)
        : engine_(splitmix64(master_seed ^ splitmix64(draw_index)))
    {
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Linear ratio whose dB value is uniform in [lo_db, hi_db].
    double log_uniform_db(double lo_db, double hi_db);

    /// Log-uniform between two positive values.
    double log_uniform(double lo, double hi);

    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

private:
    std::mt19937_64 engine_;
};

} // namespace fdside
