#include "localdkw/exact_dkw.hpp"

#include <algorithm>
#include <cmath>

#include "localdkw/detail/numeric.hpp"

namespace localdkw {

using detail::KahanSum;
using detail::kNegInf;
using detail::lchoose;
using detail::log_pow;
using detail::LogSumExp;

namespace {

void validate(long long n, double eps, const UnitInterval& interval) {
    if (n < 1) throw InvalidQuery("sample count n must be >= 1");
    if (!(eps > 0.0)) throw InvalidQuery("deviation threshold eps must be > 0");
    interval.validate();
}

ExceedanceResult clamp_result(double raw, Branch branch) {
    double p = std::clamp(raw, 0.0, 1.0);
    return {p, branch, std::abs(p - raw)};
}

// eps * (l/n + eps)^(l-1), in log space; equals 1 for l = 0 (eps * eps^-1).
double log_eps_term(long long l, long long n, double eps) {
    if (l == 0) return 0.0;
    return std::log(eps) + double(l - 1) * std::log(double(l) / double(n) + eps);
}

// Shared engine for both theorems. The left tail uses
//   (edge, anchor) = (1 - hi, 1 - lo)   with first-sum base min(1-l/n-eps, hi),
// the right tail uses
//   (edge, anchor) = (lo, hi)           with first-sum base min(1-l/n-eps, 1-lo).
// `zero_above` is the threshold past which the probability is exactly zero,
// `edge_weight` is the geometric factor raised to powers of l and j
// ((1-hi) on the left, lo on the right), and `cap` the min-cap in the first
// sum (hi on the left, 1-lo on the right).
ExceedanceResult evaluate(long long n, double eps, double zero_above,
                          double n_bar_arg, double n_signed, double edge_weight,
                          double cap) {
    if (eps > zero_above) return {0.0, Branch::Negative, 0.0};

    const long long n_bar = (long long)std::ceil(n_bar_arg);
    if (n_bar <= 0) return {0.0, n_signed < 0.0 ? Branch::Negative : Branch::Positive, 0.0};

    const double inv_n = 1.0 / double(n);
    KahanSum total;

    if (n_signed < 0.0) {
        // Single-sum form.
        for (long long l = 0; l < n_bar; ++l) {
            double base = 1.0 - double(l) * inv_n - eps;
            double lt = lchoose(n, l) + log_pow(base, double(n - l)) + log_eps_term(l, n, eps);
            if (lt != kNegInf) total.add(std::exp(lt));
        }
        return clamp_result(total.value(), Branch::Negative);
    }

    // Double-sum form; the boundary n_signed == 0 degenerates gracefully here.
    const Branch branch = (n_signed == 0.0) ? Branch::Boundary : Branch::Positive;
    const long long m = std::min((long long)std::floor(n_signed) + 1, n_bar - 1);

    for (long long l = 0; l <= m; ++l) {
        double base = std::min(1.0 - double(l) * inv_n - eps, cap);
        double lt = lchoose(n, l) + log_pow(base, double(n - l)) + log_pow(edge_weight, double(l));
        if (lt != kNegInf) total.add(std::exp(lt));
    }
    for (long long l = m + 1; l < n_bar; ++l) {
        LogSumExp bracket;  // nonnegative terms: index constraints give
                            // n_signed - j >= 0 and l - n_signed > 0
        bracket.add(log_eps_term(l, n, eps));
        for (long long j = 0; j < m; ++j) {
            double coef = (n_signed - double(j)) * inv_n;
            if (coef <= 0.0) continue;
            double lt = std::log(coef) + lchoose(l, j) +
                        log_pow((double(l) - n_signed) * inv_n, double(l - j - 1)) +
                        log_pow(edge_weight, double(j));
            bracket.add(lt);
        }
        double lb = bracket.value();
        if (lb == kNegInf) continue;
        double base = 1.0 - double(l) * inv_n - eps;
        double lt = lchoose(n, l) + log_pow(base, double(n - l)) + lb;
        if (lt != kNegInf) total.add(std::exp(lt));
    }
    return clamp_result(total.value(), branch);
}

}  // namespace

BranchParams branch_params(long long n, double eps, const UnitInterval& interval,
                           TailSide tail) {
    validate(n, eps, interval);
    BranchParams bp;
    if (tail == TailSide::EmpiricalAbove) {
        bp.n_bar = (long long)std::ceil(double(n) * (1.0 - interval.lo - eps));
        bp.n_signed = double(n) * (1.0 - interval.hi - eps);
    } else {
        bp.n_bar = (long long)std::ceil(double(n) * (interval.hi - eps));
        bp.n_signed = double(n) * (interval.lo - eps);
    }
    bp.m = std::min((long long)std::floor(bp.n_signed) + 1, bp.n_bar - 1);
    return bp;
}

ExceedanceResult left_exceedance(long long n, double eps, const UnitInterval& interval) {
    validate(n, eps, interval);
    return evaluate(n, eps,
                    /*zero_above=*/1.0 - interval.lo,
                    /*n_bar_arg=*/double(n) * (1.0 - interval.lo - eps),
                    /*n_signed=*/double(n) * (1.0 - interval.hi - eps),
                    /*edge_weight=*/1.0 - interval.hi,
                    /*cap=*/interval.hi);
}

ExceedanceResult right_exceedance(long long n, double eps, const UnitInterval& interval) {
    validate(n, eps, interval);
    return evaluate(n, eps,
                    /*zero_above=*/interval.hi,
                    /*n_bar_arg=*/double(n) * (interval.hi - eps),
                    /*n_signed=*/double(n) * (interval.lo - eps),
                    /*edge_weight=*/interval.lo,
                    /*cap=*/1.0 - interval.lo);
}

ExceedanceResult exceedance(const ExceedanceQuery& query) {
    return query.tail == TailSide::EmpiricalAbove
               ? left_exceedance(query.n, query.eps, query.interval)
               : right_exceedance(query.n, query.eps, query.interval);
}

double smirnov_full(long long n, double eps) {
    if (n < 1) throw InvalidQuery("sample count n must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidQuery("smirnov_full requires eps in (0,1)");
    const long long upper = n - (long long)std::floor(double(n) * eps) - 1;
    const double inv_n = 1.0 / double(n);
    KahanSum total;
    for (long long l = 0; l <= upper; ++l) {
        double lt = lchoose(n, l) + std::log(eps) +
                    log_pow(1.0 - double(l) * inv_n - eps, double(n - l)) +
                    log_pow(double(l) * inv_n + eps, double(l - 1));
        if (lt != kNegInf) total.add(std::exp(lt));
    }
    return std::clamp(total.value(), 0.0, 1.0);
}

double massart_bound(long long n, double eps) {
    if (n < 1) throw InvalidQuery("sample count n must be >= 1");
    if (eps < 0.0) throw InvalidQuery("eps must be >= 0");
    return std::exp(-2.0 * double(n) * eps * eps);
}

}  // namespace localdkw
