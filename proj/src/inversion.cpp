#include "localdkw/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "localdkw/exact_dkw.hpp"

namespace localdkw {

namespace {

// Inversions are expensive (dozens of exact evaluations) and workloads such
// as repeated-band simulations ask for the same radius many times over.
using CacheKey = std::tuple<long long, double, double, double, int, double>;
std::map<CacheKey, RadiusResult> radius_cache;  // NOLINT: guarded below
std::mutex radius_cache_mutex;

}  // namespace

RadiusResult invert_radius(const RadiusQuery& q) {
    if (q.n < 1) throw InvalidQuery("n must be >= 1");
    if (!(q.delta > 0.0 && q.delta < 1.0)) throw InvalidQuery("delta must be in (0,1)");
    if (!(q.tol > 0.0 && q.tol <= 1e-3)) throw InvalidQuery("tol must be in (0, 1e-3]");
    q.interval.validate();

    const CacheKey key{q.n, q.delta, q.interval.lo, q.interval.hi, (int)q.tail, q.tol};
    {
        std::lock_guard<std::mutex> lock(radius_cache_mutex);
        auto it = radius_cache.find(key);
        if (it != radius_cache.end()) return it->second;
    }

    auto prob = [&](double eps) {
        return q.tail == TailSide::EmpiricalAbove
                   ? left_exceedance(q.n, eps, q.interval).probability
                   : right_exceedance(q.n, eps, q.interval).probability;
    };

    auto remember = [&](RadiusResult r) {
        std::lock_guard<std::mutex> lock(radius_cache_mutex);
        if (radius_cache.size() > 100'000) radius_cache.clear();
        radius_cache.emplace(key, r);
        return r;
    };

    if (prob(kEpsMin) <= q.delta) return remember({kEpsMin, true});

    // Bracket upper end: past it the exceedance is exactly zero.
    double hi = q.tail == TailSide::EmpiricalAbove ? 1.0 - q.interval.lo : q.interval.hi;
    double lo = kEpsMin;
    // Invariant: prob(lo) > delta, prob(hi) <= delta. The function is
    // non-increasing with plateaus and jumps, so plain bisection applies.
    int max_iter = (int)std::ceil(std::log2(1.0 / q.tol)) + 4;
    for (int it = 0; it < max_iter && hi - lo > q.tol; ++it) {
        double mid = 0.5 * (lo + hi);
        if (prob(mid) <= q.delta)
            hi = mid;
        else
            lo = mid;
    }
    return remember({hi, false});
}

double massart_radius(long long n, double delta) {
    if (n < 1) throw InvalidQuery("n must be >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidQuery("delta must be in (0,1)");
    return std::min(std::sqrt(std::log(1.0 / delta) / (2.0 * double(n))), 1.0);
}

RadiusTable tabulate(const std::vector<long long>& n_values,
                     const std::vector<double>& delta_values,
                     const UnitInterval& interval, TailSide tail, double tol) {
    if (n_values.empty() || delta_values.empty())
        throw InvalidQuery("tabulate requires non-empty grids");
    for (std::size_t i = 1; i < n_values.size(); ++i)
        if (n_values[i] <= n_values[i - 1])
            throw InvalidQuery("n_values must be strictly increasing");
    for (std::size_t j = 1; j < delta_values.size(); ++j)
        if (delta_values[j] <= delta_values[j - 1])
            throw InvalidQuery("delta_values must be strictly increasing");

    RadiusTable table;
    table.interval = interval;
    table.tail = tail;
    table.n_values = n_values;
    table.delta_values = delta_values;
    table.tol = tol;
    table.radii.resize(n_values.size());
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        table.radii[i].resize(delta_values.size());
        for (std::size_t j = 0; j < delta_values.size(); ++j) {
            RadiusQuery q{n_values[i], delta_values[j], interval, tail, tol};
            table.radii[i][j] = invert_radius(q).epsilon;
        }
    }
    return table;
}

ConfidenceBand confidence_band(const EmpiricalCdf& ecdf, double delta,
                               const UnitInterval& interval, double tol,
                               double split) {
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidQuery("delta must be in (0,1)");
    if (!(split > 0.0 && split < 1.0)) throw InvalidQuery("split must be in (0,1)");
    interval.validate();

    const long long n = ecdf.n();
    // Lower edge needs a left-tail radius (F_n can overshoot F), the upper
    // edge a right-tail radius.
    double eps_lower =
        invert_radius({n, delta * split, interval, TailSide::EmpiricalAbove, tol}).epsilon;
    double eps_upper =
        invert_radius({n, delta * (1.0 - split), interval, TailSide::EmpiricalBelow, tol})
            .epsilon;

    ConfidenceBand band;
    band.delta = delta;
    band.radius_lower = eps_lower;
    band.radius_upper = eps_upper;

    std::vector<double> xs;
    xs.push_back(ecdf.support_lo());
    for (double v : ecdf.distinct_values()) xs.push_back(v);
    if (ecdf.has_finite_support()) xs.push_back(ecdf.support_hi());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    for (double x : xs) {
        double fn = ecdf.value(x);
        band.knots.push_back({x, std::max(fn - eps_lower, 0.0), std::min(fn + eps_upper, 1.0)});
    }
    return band;
}

}  // namespace localdkw
