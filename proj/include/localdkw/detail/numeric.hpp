#pragma once

#include <cassert>
#include <cmath>
#include <limits>
#include <vector>

namespace localdkw::detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Kahan-Neumaier compensated accumulator.
class KahanSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// log(x^k) with the 0^0 = 1 convention; -inf encodes an exactly-zero factor.
inline double log_pow(double x, double k) {
    if (k == 0.0) return 0.0;
    if (x <= 0.0) return kNegInf;
    return k * std::log(x);
}

inline double lgamma_pos(double x) { return std::lgamma(x); }

// log C(n, k)
inline double lchoose(long long n, long long k) {
    if (k < 0 || k > n) return kNegInf;
    if (k == 0 || k == n) return 0.0;
    return lgamma_pos(double(n) + 1.0) - lgamma_pos(double(k) + 1.0) -
           lgamma_pos(double(n - k) + 1.0);
}

// Streaming log-sum-exp over nonnegative terms given in log space.
class LogSumExp {
public:
    void add(double log_term) {
        if (log_term == kNegInf) return;
        terms_.push_back(log_term);
        if (log_term > max_) max_ = log_term;
    }
    double value() const {
        if (terms_.empty()) return kNegInf;
        KahanSum s;
        for (double t : terms_) s.add(std::exp(t - max_));
        return max_ + std::log(s.value());
    }

private:
    std::vector<double> terms_;
    double max_ = kNegInf;
};

}  // namespace localdkw::detail
