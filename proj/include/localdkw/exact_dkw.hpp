#pragma once

#include "localdkw/types.hpp"

namespace localdkw {

// Exact exceedance probabilities for empirical-CDF deviations over a
// sub-interval of [0,1], evaluated in log-domain arithmetic.
//
// left_exceedance:  P( sup_{u in [lo,hi]} F_n(u) - u > eps )
// right_exceedance: P( sup_{u in [lo,hi]} u - F_n(u) > eps )
//
// All functions are pure; safe for concurrent use.

struct ExceedanceQuery {
    long long n = 1;
    double eps = 0.0;
    UnitInterval interval{};
    TailSide tail = TailSide::EmpiricalAbove;
};

enum class Branch {
    Positive,  // the signed index parameter is > 0 (double-sum form)
    Negative,  // < 0 (single-sum form)
    Boundary,  // exactly 0 (evaluated with the double-sum form)
};

struct ExceedanceResult {
    double probability = 0.0;
    Branch branch = Branch::Negative;
    // Magnitude clipped off when forcing the raw sum into [0,1].
    double clamped_excursion = 0.0;
};

// Branch diagnostics exposed for tests: the summation limits of the
// two-sided theorems.
struct BranchParams {
    long long n_bar = 0;    // ceil(n(1-lo-eps)) left, ceil(n(hi-eps)) right
    double n_signed = 0.0;  // n(1-hi-eps) left, n(lo-eps) right
    long long m = 0;        // min(floor(n_signed)+1, n_bar-1)
};

BranchParams branch_params(long long n, double eps, const UnitInterval& interval,
                           TailSide tail);

ExceedanceResult left_exceedance(long long n, double eps, const UnitInterval& interval);
ExceedanceResult right_exceedance(long long n, double eps, const UnitInterval& interval);
ExceedanceResult exceedance(const ExceedanceQuery& query);

// Classical full-interval exceedance probability (re-indexed Smirnov sum);
// cross-check oracle for the [0,1] case of both tails. Requires 0 < eps < 1.
double smirnov_full(long long n, double eps);

// exp(-2 n eps^2). Meaningful as a bound when the value is <= 1/2.
double massart_bound(long long n, double eps);

}  // namespace localdkw
