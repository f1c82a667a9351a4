#pragma once

#include <functional>
#include <vector>

#include "localdkw/inversion.hpp"
#include "localdkw/types.hpp"

namespace localdkw {

// Time-uniform (anytime-valid) radii via geometric peeling, plus the
// catalog of summable g functions used for cumulative error schedules.

struct TimeUniformConfig {
    long long horizon = 1;  // a.s. bound on the stopping time
    double delta = 0.05;
    double eta = 1.1;  // peeling ratio, > 1
    double C = 2.0;    // reflection constant, > 1
    UnitInterval interval{};
    TailSide tail = TailSide::EmpiricalAbove;
    double tol = kDefaultTol;

    void validate() const;
};

// sup_{x in [lo,hi]} x(1-x): 1/4 when 1/2 is inside, else the better endpoint.
double q_sup(const UnitInterval& interval);

// Number of peeling blocks: ceil(ln horizon / ln eta), with the horizon = 1
// boundary mapped to a single block.
long long peeling_blocks(long long horizon, double eta);

// Right-hand side of the per-block maximal inequality:
//   C * P( sup dev at n2 > sqrt(n1/(n2 eta)) (eps - sqrt(C q (eta-1)/((C-1) n1))) ).
// Throws EpsTooSmall when eps does not clear the shrink threshold.
double peeling_rhs(long long n1, long long n2, double eps, const TimeUniformConfig& cfg);

// Time-uniform radius at sample size N, valid at any stopping time <= horizon:
//   (1/sqrt(N - (eta-1))) [ eta sqrt(N) eps(N, (delta/C)/K) + sqrt(C/(C-1) q eta (eta-1)) ]
// with eps given by exact inversion at the peeled confidence level.
double tu_radius(long long N, const TimeUniformConfig& cfg);

// Same radius with a caller-supplied fixed-n radius function eps(n, delta);
// used to check the reduction to the closed-form global bound.
double tu_radius_with(long long N, const TimeUniformConfig& cfg,
                      const std::function<double(long long, double)>& radius_fn);

// Closed-form global bound ([0,1], C = 2, q = 1/4):
//   (1/sqrt(2(N-(eta-1)))) [ eta sqrt(ln(K 2/delta)) + sqrt(eta(eta-1)) ].
double tu_radius_global(long long N, long long horizon, double delta, double eta);

enum class ScheduleScheme {
    PolyLogA,    // eta_t = 1 + ln(t+e)^{-a}, a < 1; delta_t = 1/(t ln^2(t+e))
    KlUcbB,      // eta_t = (f(t)+1)/f(t), delta_t = exp(-f(t)), f = ln t + xi lnln t
    SummableC,   // delta_t = (1/K_t) * 1/(2 g(t)) for a summable g, fixed eta
    UnionBound,  // delta_t = 1/(t g(t)), no peeling (eta_t reported as 1)
};

enum class GFunction {
    ThreeT32,   // 3 t^{3/2}
    TT1,        // t (t+1), telescoping sum exactly 1
    LogSq,      // c (t+1) ln^2(t+1)
    LogLogSq,   // (t+2) ln(t+2) (lnln(t+2))^2 / (lnln 3)^2
    Generalized,  // g_m(t) = C_m (iterated-log)^2 * product of iterated logs
};

// Evaluates the requested catalog g at t >= 1; m is only read for
// Generalized (1 <= m <= 4).
double g_value(GFunction id, long long t, int m = 1);

struct ScheduleEntry {
    long long t = 1;
    double eta_t = 1.0;
    double delta_t = 1.0;
    long long blocks = 1;  // ceil(ln t / ln eta_t), floored at 1
};

struct ScheduleParams {
    double a = 0.5;    // PolyLogA exponent, must be < 1
    double xi = 3.0;   // KlUcbB, must be > 2
    double eta = 1.5;  // SummableC fixed peeling ratio
    GFunction g = GFunction::TT1;
    int g_m = 1;
};

struct Schedule {
    ScheduleScheme scheme;
    ScheduleParams params;
    std::vector<ScheduleEntry> entries;
};

Schedule build_schedule(ScheduleScheme scheme, long long T, const ScheduleParams& params);

}  // namespace localdkw
