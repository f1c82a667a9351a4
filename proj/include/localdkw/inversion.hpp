#pragma once

#include <vector>

#include "localdkw/ecdf.hpp"
#include "localdkw/types.hpp"

namespace localdkw {

// Inverts the exact exceedance probabilities into confidence radii
// eps(n, delta) by dichotomous search, tabulates them, and assembles CDF
// confidence bands.

inline constexpr double kEpsMin = 1e-12;
inline constexpr double kDefaultTol = 1e-7;

struct RadiusQuery {
    long long n = 1;
    double delta = 0.05;
    UnitInterval interval{};
    TailSide tail = TailSide::EmpiricalAbove;
    double tol = kDefaultTol;  // bisection precision, in (0, 1e-3]
};

struct RadiusResult {
    double epsilon = 0.0;
    // True when even eps = kEpsMin already meets the target delta; the
    // radius is then reported as kEpsMin rather than 0 so downstream
    // log-domain evaluation stays valid.
    bool saturated = false;
};

// Smallest eps with exceedance(n, eps, interval, tail) <= delta, up to tol.
// Certificate (unless saturated): exceedance(eps*) <= delta and
// exceedance(eps* - 2 tol) > delta.
RadiusResult invert_radius(const RadiusQuery& q);

// min( sqrt(ln(1/delta) / (2n)), 1 )
double massart_radius(long long n, double delta);

struct RadiusTable {
    UnitInterval interval{};
    TailSide tail = TailSide::EmpiricalAbove;
    std::vector<long long> n_values;
    std::vector<double> delta_values;
    std::vector<std::vector<double>> radii;  // radii[i][j] for (n_i, delta_j)
    double tol = kDefaultTol;
};

RadiusTable tabulate(const std::vector<long long>& n_values,
                     const std::vector<double>& delta_values,
                     const UnitInterval& interval, TailSide tail,
                     double tol = kDefaultTol);

struct BandKnot {
    double x = 0.0;
    double lower = 0.0;
    double upper = 1.0;
};

struct ConfidenceBand {
    std::vector<BandKnot> knots;  // at support endpoints and sample points
    double delta = 0.0;
    double radius_lower = 0.0;  // subtracted from F_n (left-tail radius)
    double radius_upper = 0.0;  // added to F_n (right-tail radius)
};

// Two-sided band: upper(x) = min(F_n(x) + eps~, 1), lower(x) = max(F_n(x) - eps, 0),
// with the per-tail budgets delta*split and delta*(1-split).
ConfidenceBand confidence_band(const EmpiricalCdf& ecdf, double delta,
                               const UnitInterval& interval,
                               double tol = kDefaultTol, double split = 0.5);

}  // namespace localdkw
