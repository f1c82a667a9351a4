#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "localdkw/ecdf.hpp"
#include "localdkw/inversion.hpp"
#include "localdkw/types.hpp"

namespace localdkw {

// CVaR point estimates (optimization and integrated forms, atom-aware),
// CVaR confidence bounds from local radii, and generic functional-of-CDF
// bounds.

enum class VarKind {
    UpperVaR,  // inf{ x : F(x) >  level }
    LowerVaR,  // inf{ x : F(x) >= level }
};

double value_at_risk(const EmpiricalCdf& ecdf, double level, VarKind which);

// Reward-side CVaR at level alpha: the average of the worst (lowest) alpha
// tail, atoms handled exactly (optimization form of the expected shortfall).
double cvar_reward_point(const EmpiricalCdf& ecdf, double alpha);

/// Loss-side CVaR at level kappa: the average of the worst (highest) 1-kappa
// tail.
double cvar_loss_point(const EmpiricalCdf& ecdf, double kappa);

enum class CvarSide { Reward, Loss };

// Integrated form computed by exact piecewise-constant integration over the
// ECDF steps; equals the optimization form. Requires finite support and
// support_lo >= 0.
double cvar_integrated_point(const EmpiricalCdf& ecdf, double level, CvarSide side);

struct BoundPair {
    double lower = 0.0;
    double upper = 0.0;
};

// Confidence bounds on the reward-side CVaR obtained by plugging the CDF
// band edges, with radii inverted on [0, alpha], into the integrated form.
// delta is split evenly between the two edges.
BoundPair cvar_reward_bounds(const EmpiricalCdf& ecdf, double alpha, double delta,
                             double tol = kDefaultTol);

// Loss-side analogue; radii inverted on [kappa, 1].
BoundPair cvar_loss_bounds(const EmpiricalCdf& ecdf, double kappa, double delta,
                           double tol = kDefaultTol);

enum class LipschitzSide { LowerRight, UpperLeft };

// A monotone (non-increasing) functional kernel phi on [0,1] with its
// piecewise one-sided Lipschitz ledger: J segments delimited by
// breakpoints 0 = b_0 < ... < b_J = 1 with constants l_j >= 0.
struct PhiSpec {
    std::function<double(double)> evaluator;
    std::vector<double> breakpoints;  // size J+1, first 0, last 1
    std::vector<double> constants;    // size J, nonnegative
    LipschitzSide side = LipschitzSide::LowerRight;

    void validate() const;
    // Index j of the segment [b_{j-1}, b_j] containing y (1-based -> 0-based).
    std::size_t segment(double y) const;
};

// Increasing sequence 0 = a_0 < a_1 < ... < a_K = 1 with one failure budget
// per segment.
struct Partition {
    std::vector<double> points;
    std::vector<double> deltas;  // size K, each in (0,1)

    void validate() const;
    double total_delta() const;
};

struct FunctionalBounds {
    double lower = 0.0;
    double upper = 0.0;
    double point = 0.0;        // integral of phi(F_n) over the support
    double total_delta = 0.0;  // sum of the per-segment budgets
};

// Lipschitz-corrected bounds on mu = integral of phi(F) dx: the data-facing
// form. gamma is the caller-asserted Lipschitz constant of the quantile
// function; it is never estimated. The partition must refine phi's
// breakpoints. The lower bound requires a LowerRight ledger, the upper an
// UpperLeft one; a bound whose ledger side is absent is reported as the
// uncorrected point value with correction from the supplied ledger only.
FunctionalBounds functional_bounds(const EmpiricalCdf& ecdf, const PhiSpec& phi,
                                   const Partition& partition, double gamma,
                                   double tol = kDefaultTol);

namespace testing {
// The quantile-partition form of the functional bounds, which needs the
// true quantiles of F at the partition points. Unobservable in practice;
// exposed only so synthetic-truth experiments can validate it.
BoundPair functional_bounds_with_quantiles(const EmpiricalCdf& ecdf,
                                           const std::function<double(double)>& phi,
                                           const Partition& partition,
                                           const std::vector<double>& true_quantiles,
                                           double tol = kDefaultTol);
}  // namespace testing

}  // namespace localdkw
