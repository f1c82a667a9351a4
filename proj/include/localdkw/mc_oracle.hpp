#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "localdkw/types.hpp"

namespace localdkw {

// Monte-Carlo validation of the exact exceedance formulas, plus the exact
// evaluation of the supremum deviation on a realized sample.

struct McConfig {
    std::uint64_t reps = 10'000;
    std::uint64_t seed = 0;
    long long n = 1;
    UnitInterval interval{};
    TailSide tail = TailSide::EmpiricalAbove;
    std::vector<double> eps_grid;  // strictly increasing, all > 0
};

struct McEstimate {
    double eps = 0.0;
    double frequency = 0.0;  // frequency * reps is an integer count
    double stderr_ = 0.0;    // binomial standard error sqrt(p(1-p)/reps)
};

// sup_{u in [lo,hi]} F_n(u) - u on a sorted sample of [0,1] values.
// The supremum is attained at lo or at a sample point inside the interval.
double sup_dev_left(std::span<const double> sorted_uniforms, const UnitInterval& interval);

// sup_{u in [lo,hi]} u - F_n(u), attained as a left limit at hi or at a
// sample point in (lo, hi]; computed exactly via strict-inequality counts.
double sup_dev_right(std::span<const double> sorted_uniforms, const UnitInterval& interval);

// Seeded Monte-Carlo estimate of the exceedance probability on an eps grid.
// One sample set per replication serves the whole grid (common random
// numbers). Deterministic for fixed (seed, reps, n, grid), independent of
// thread count; parallelism capped by LOCALDKW_THREADS.
std::vector<McEstimate> mc_exceedance(const McConfig& cfg);

enum class TailMode { GreaterThan, LessThan };

// Exact P(Bin(n,p) > threshold) or P(Bin(n,p) < threshold) by direct
// summation of log-domain PMF terms.
double binomial_tail(long long n, double p, TailMode mode, double threshold);

}  // namespace localdkw
