#include "localdkw/mc_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "localdkw/detail/numeric.hpp"
#include "localdkw/rng.hpp"

namespace localdkw {

using detail::KahanSum;
using detail::kNegInf;
using detail::lchoose;
using detail::log_pow;

namespace {

void check_sorted(std::span<const double> u) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] < 0.0 || u[i] > 1.0)
            throw UnsortedInput("sample values must lie in [0,1]");
        if (i > 0 && u[i] < u[i - 1])
            throw UnsortedInput("sample must be sorted ascending");
    }
}

unsigned thread_budget() {
    if (const char* env = std::getenv("LOCALDKW_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return (unsigned)v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

}  // namespace

double sup_dev_left(std::span<const double> u, const UnitInterval& interval) {
    interval.validate();
    check_sorted(u);
    if (u.empty()) return -interval.lo;
    const double n = double(u.size());
    // Candidate v = lo: F_n(lo) - lo.
    auto ecdf_at = [&](double v) {
        return double(std::upper_bound(u.begin(), u.end(), v) - u.begin()) / n;
    };
    double best = ecdf_at(interval.lo) - interval.lo;
    // Candidates v = u_(k) in [lo, hi]; F_n there is (index of last tie)/n.
    auto first = std::lower_bound(u.begin(), u.end(), interval.lo);
    auto last = std::upper_bound(u.begin(), u.end(), interval.hi);
    for (auto it = first; it != last; ++it) {
        auto tie_end = std::upper_bound(it, last, *it);
        double val = double(tie_end - u.begin()) / n - *it;
        best = std::max(best, val);
        it = tie_end - 1;
    }
    return best;
}

double sup_dev_right(std::span<const double> u, const UnitInterval& interval) {
    interval.validate();
    check_sorted(u);
    if (u.empty()) return interval.hi;
    const double n = double(u.size());
    // Left limit at v: v - #{u_i < v}/n.
    auto strict_below = [&](double v) {
        return double(std::lower_bound(u.begin(), u.end(), v) - u.begin()) / n;
    };
    double best = interval.hi - strict_below(interval.hi);
    auto first = std::upper_bound(u.begin(), u.end(), interval.lo);  // in (lo, hi]
    auto last = std::upper_bound(u.begin(), u.end(), interval.hi);
    for (auto it = first; it != last; ++it) {
        best = std::max(best, *it - strict_below(*it));
        it = std::upper_bound(it, last, *it) - 1;  // skip ties
    }
    return best;
}

std::vector<McEstimate> mc_exceedance(const McConfig& cfg) {
    if (cfg.reps < 1) throw InvalidQuery("reps must be >= 1");
    if (cfg.n < 1) throw InvalidQuery("n must be >= 1");
    cfg.interval.validate();
    if (cfg.eps_grid.empty()) throw InvalidQuery("eps_grid must be non-empty");
    for (std::size_t i = 0; i < cfg.eps_grid.size(); ++i) {
        if (!(cfg.eps_grid[i] > 0.0)) throw InvalidQuery("eps_grid values must be > 0");
        if (i > 0 && !(cfg.eps_grid[i] > cfg.eps_grid[i - 1]))
            throw InvalidQuery("eps_grid must be strictly increasing");
    }

    const std::size_t g = cfg.eps_grid.size();
    std::vector<std::atomic<std::uint64_t>> counts(g);

    auto worker = [&](std::uint64_t rep_begin, std::uint64_t rep_end) {
        std::vector<double> sample((std::size_t)cfg.n);
        std::vector<std::uint64_t> local(g, 0);
        for (std::uint64_t rep = rep_begin; rep < rep_end; ++rep) {
            auto rng = SplitMix64::substream(cfg.seed, rep);
            for (auto& x : sample) x = rng.next_uniform();
            std::sort(sample.begin(), sample.end());
            double sup = cfg.tail == TailSide::EmpiricalAbove
                             ? sup_dev_left(sample, cfg.interval)
                             : sup_dev_right(sample, cfg.interval);
            // grid is increasing: sup > eps for a prefix of the grid
            for (std::size_t i = 0; i < g && sup > cfg.eps_grid[i]; ++i) ++local[i];
        }
        for (std::size_t i = 0; i < g; ++i)
            counts[i].fetch_add(local[i], std::memory_order_relaxed);
    };

    unsigned threads = std::min<std::uint64_t>(thread_budget(), cfg.reps);
    if (threads <= 1) {
        worker(0, cfg.reps);
    } else {
        std::vector<std::thread> pool;
        std::uint64_t chunk = (cfg.reps + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::uint64_t lo = t * chunk;
            std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, cfg.reps);
            if (lo >= hi) break;
            pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    std::vector<McEstimate> out(g);
    for (std::size_t i = 0; i < g; ++i) {
        double p = double(counts[i].load()) / double(cfg.reps);
        out[i] = {cfg.eps_grid[i], p, std::sqrt(p * (1.0 - p) / double(cfg.reps))};
    }
    return out;
}

double binomial_tail(long long n, double p, TailMode mode, double threshold) {
    if (n < 1) throw InvalidQuery("n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidQuery("p must be in [0,1]");
    KahanSum total;
    for (long long k = 0; k <= n; ++k) {
        bool in_tail = mode == TailMode::GreaterThan ? (double(k) > threshold)
                                                     : (double(k) < threshold);
        if (!in_tail) continue;
        double lt = lchoose(n, k) + log_pow(p, double(k)) + log_pow(1.0 - p, double(n - k));
        if (lt != kNegInf) total.add(std::exp(lt));
    }
    return std::clamp(total.value(), 0.0, 1.0);
}

}  // namespace localdkw
