#include "localdkw/risk_functionals.hpp"

#include <algorithm>
#include <cmath>

#include "localdkw/detail/numeric.hpp"

namespace localdkw {

namespace {

using detail::KahanSum;

void require_level(double level) {
    if (!(level > 0.0 && level < 1.0))
        throw InvalidQuery("risk level must be strictly inside (0,1)");
}

void require_integrable_support(const EmpiricalCdf& ecdf) {
    if (!ecdf.has_finite_support())
        throw UnboundedSupport("integrated forms need a finite support upper bound");
    if (ecdf.support_lo() < 0.0)
        throw NegativeSupport("integrated forms need support_lo >= 0");
}

// Integral over [x_lo, x_hi] of fn(F_n(x)) dx, exact piecewise-constant
// segment arithmetic (no quadrature). F_n is right-continuous, so on
// [v_i, v_{i+1}) it equals its value at v_i.
double integrate_over_steps(const EmpiricalCdf& ecdf, double x_lo, double x_hi,
                            const std::function<double(double)>& fn) {
    if (x_hi <= x_lo) return 0.0;
    std::vector<double> cuts;
    cuts.push_back(x_lo);
    for (double v : ecdf.distinct_values())
        if (v > x_lo && v < x_hi) cuts.push_back(v);
    cuts.push_back(x_hi);
    KahanSum total;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total.add(fn(ecdf.value(cuts[i])) * (cuts[i + 1] - cuts[i]));
    return total.value();
}

// Smallest sample with F_n >= level; the optimization-form minimizer
// certificate level in [F(x*) - P(X = x*), F(x*)] holds by construction.
double optimizer_knot(const EmpiricalCdf& ecdf, double level) {
    const auto& s = ecdf.samples();
    double nl = double(ecdf.n()) * level;
    long long k = (long long)std::ceil(nl) - 1;
    k = std::clamp<long long>(k, 0, ecdf.n() - 1);
    // guard against floating fuzz in ceil: move to the first index meeting F >= level
    while (k > 0 && double(k) / double(ecdf.n()) >= level) --k;
    while (k + 1 < ecdf.n() && double(k + 1) / double(ecdf.n()) < level) ++k;
    return s[(std::size_t)k];
}

}  // namespace

double value_at_risk(const EmpiricalCdf& ecdf, double level, VarKind which) {
    require_level(level);
    const auto& s = ecdf.samples();
    const double n = double(ecdf.n());
    if (which == VarKind::LowerVaR) return optimizer_knot(ecdf, level);
    // UpperVaR: smallest sample with F_n > level.
    long long k = (long long)std::floor(n * level);
    k = std::clamp<long long>(k, 0, ecdf.n() - 1);
    while (k > 0 && double(k) / n > level) --k;
    while (k + 1 < ecdf.n() && double(k + 1) / n <= level) ++k;
    return s[(std::size_t)k];
}

double cvar_reward_point(const EmpiricalCdf& ecdf, double alpha) {
    require_level(alpha);
    double xstar = optimizer_knot(ecdf, alpha);
    KahanSum below;
    for (double x : ecdf.samples()) {
        if (x < xstar) below.add(x);
    }
    double mean_below = below.value() / double(ecdf.n());
    double slack = alpha - ecdf.value(xstar) + ecdf.atom(xstar);
    return (mean_below + xstar * slack) / alpha;
}

double cvar_loss_point(const EmpiricalCdf& ecdf, double kappa) {
    require_level(kappa);
    const double alpha = 1.0 - kappa;
    double xstar = optimizer_knot(ecdf, kappa);
    KahanSum above;
    for (double x : ecdf.samples()) {
        if (x > xstar) above.add(x);
    }
    double mean_above = above.value() / double(ecdf.n());
    return (mean_above + xstar * (ecdf.value(xstar) - kappa)) / alpha;
}

double cvar_integrated_point(const EmpiricalCdf& ecdf, double level, CvarSide side) {
    require_level(level);
    require_integrable_support(ecdf);
    const double a = ecdf.support_lo();
    const double b = ecdf.support_hi();
    if (side == CvarSide::Reward) {
        const double alpha = level;
        double integral = integrate_over_steps(
            ecdf, a, b, [&](double f) { return std::max(alpha - f, 0.0); });
        return a + integral / alpha;
    }
    const double kappa = level;
    const double alpha = 1.0 - kappa;
    double integral = integrate_over_steps(
        ecdf, a, b, [&](double f) { return std::max(f - kappa, 0.0); });
    return b - integral / alpha;
}

BoundPair cvar_reward_bounds(const EmpiricalCdf& ecdf, double alpha, double delta,
                             double tol) {
    require_level(alpha);
    require_level(delta);
    require_integrable_support(ecdf);
    const double a = ecdf.support_lo();
    const double b = ecdf.support_hi();
    const long long n = ecdf.n();
    const UnitInterval local{0.0, alpha};
    double eps_up = invert_radius({n, delta / 2, local, TailSide::EmpiricalBelow, tol}).epsilon;
    double eps_dn = invert_radius({n, delta / 2, local, TailSide::EmpiricalAbove, tol}).epsilon;
    // The integrated form is pointwise non-increasing in the CDF argument:
    // inflating F_n gives the lower bound, deflating the upper.
    double lower = a + integrate_over_steps(ecdf, a, b, [&](double f) {
                       return std::max(alpha - std::min(f + eps_up, 1.0), 0.0);
                   }) / alpha;
    double upper = a + integrate_over_steps(ecdf, a, b, [&](double f) {
                       return std::max(alpha - std::max(f - eps_dn, 0.0), 0.0);
                   }) / alpha;
    return {lower, upper};
}

BoundPair cvar_loss_bounds(const EmpiricalCdf& ecdf, double kappa, double delta,
                           double tol) {
    require_level(kappa);
    require_level(delta);
    require_integrable_support(ecdf);
    const double a = ecdf.support_lo();
    const double b = ecdf.support_hi();
    const double alpha = 1.0 - kappa;
    const long long n = ecdf.n();
    const UnitInterval local{kappa, 1.0};
    double eps_up = invert_radius({n, delta / 2, local, TailSide::EmpiricalBelow, tol}).epsilon;
    double eps_dn = invert_radius({n, delta / 2, local, TailSide::EmpiricalAbove, tol}).epsilon;
    double lower = b - integrate_over_steps(ecdf, a, b, [&](double f) {
                       return std::max(std::min(f + eps_up, 1.0) - kappa, 0.0);
                   }) / alpha;
    double upper = b - integrate_over_steps(ecdf, a, b, [&](double f) {
                       return std::max(std::max(f - eps_dn, 0.0) - kappa, 0.0);
                   }) / alpha;
    return {lower, upper};
}

void PhiSpec::validate() const {
    if (!evaluator) throw InvalidLedger("phi evaluator missing");
    if (breakpoints.size() < 2 || breakpoints.front() != 0.0 || breakpoints.back() != 1.0)
        throw InvalidLedger("breakpoints must run from 0 to 1");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i] > breakpoints[i - 1]))
            throw InvalidLedger("breakpoints must be strictly increasing");
    if (constants.size() != breakpoints.size() - 1)
        throw InvalidLedger("one Lipschitz constant per segment required");
    for (double c : constants)
        if (!(c >= 0.0)) throw InvalidLedger("Lipschitz constants must be >= 0");
}

std::size_t PhiSpec::segment(double y) const {
    for (std::size_t j = 1; j < breakpoints.size(); ++j)
        if (y <= breakpoints[j]) return j - 1;
    return breakpoints.size() - 2;
}

void Partition::validate() const {
    if (points.size() < 2 || points.front() != 0.0 || points.back() != 1.0)
        throw InvalidQuery("partition must run from 0 to 1");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i] > points[i - 1]))
            throw InvalidQuery("partition points must be strictly increasing");
    if (deltas.size() != points.size() - 1)
        throw InvalidQuery("one delta per partition segment required");
    for (double d : deltas)
        if (!(d > 0.0 && d < 1.0)) throw InvalidQuery("segment deltas must be in (0,1)");
}

double Partition::total_delta() const {
    KahanSum s;
    for (double d : deltas) s.add(d);
    return s.value();
}

namespace {

// Checks that every phi breakpoint appears among the partition points.
void require_refinement(const PhiSpec& phi, const Partition& partition) {
    for (double b : phi.breakpoints) {
        bool found = false;
        for (double p : partition.points)
            if (std::abs(p - b) <= 1e-12) { found = true; break; }
        if (!found)
            throw PartitionIncompatible("partition does not refine phi's breakpoints");
    }
}

}  // namespace

FunctionalBounds functional_bounds(const EmpiricalCdf& ecdf, const PhiSpec& phi,
                                   const Partition& partition, double gamma,
                                   double tol) {
    phi.validate();
    partition.validate();
    require_refinement(phi, partition);
    if (!(gamma > 0.0)) throw InvalidQuery("gamma must be > 0");
    require_integrable_support(ecdf);

    const double a = ecdf.support_lo();
    const double b = ecdf.support_hi();
    const long long n = ecdf.n();

    FunctionalBounds out;
    out.point = integrate_over_steps(ecdf, a, b, phi.evaluator);
    out.total_delta = partition.total_delta();

    KahanSum corr_lower, corr_upper;
    for (std::size_t k = 0; k + 1 < partition.points.size(); ++k) {
        const UnitInterval seg{partition.points[k], partition.points[k + 1]};
        const double dk = partition.deltas[k];
        // Segment k lies inside one ledger segment by refinement; the
        // Lipschitz constant is the one of the block containing it.
        double lj = phi.constants[phi.segment(0.5 * (seg.lo + seg.hi))];
        if (lj == 0.0) continue;
        double width = gamma * (seg.hi - seg.lo);
        double eps_up = invert_radius({n, dk, seg, TailSide::EmpiricalBelow, tol}).epsilon;
        double eps_dn = invert_radius({n, dk, seg, TailSide::EmpiricalAbove, tol}).epsilon;
        corr_lower.add(lj * width * eps_up);
        corr_upper.add(lj * width * eps_dn);
    }
    out.lower = out.point - corr_lower.value();
    out.upper = out.point + corr_upper.value();
    return out;
}

namespace testing {

BoundPair functional_bounds_with_quantiles(const EmpiricalCdf& ecdf,
                                           const std::function<double(double)>& phi,
                                           const Partition& partition,
                                           const std::vector<double>& true_quantiles,
                                           double tol) {
    partition.validate();
    if (true_quantiles.size() != partition.points.size())
        throw InvalidQuery("one true quantile per partition point required");
    const long long n = ecdf.n();
    KahanSum lower, upper;
    for (std::size_t k = 0; k + 1 < partition.points.size(); ++k) {
        const UnitInterval seg{partition.points[k], partition.points[k + 1]};
        const double dk = partition.deltas[k];
        double eps_up = invert_radius({n, dk, seg, TailSide::EmpiricalBelow, tol}).epsilon;
        double eps_dn = invert_radius({n, dk, seg, TailSide::EmpiricalAbove, tol}).epsilon;
        lower.add(integrate_over_steps(ecdf, true_quantiles[k], true_quantiles[k + 1],
                                       [&](double f) {
                                           return phi(std::min(f + eps_up, 1.0));
                                       }));
        upper.add(integrate_over_steps(ecdf, true_quantiles[k], true_quantiles[k + 1],
                                       [&](double f) {
                                           return phi(std::max(f - eps_dn, 0.0));
                                       }));
    }
    return {lower.value(), upper.value()};
}

}  // namespace testing

}  // namespace localdkw
