#pragma once

#include <limits>
#include <vector>

#include "localdkw/types.hpp"

namespace localdkw {

// Step-function empirical CDF with declared support bounds. Duplicates are
// preserved (atoms stack). Immutable after construction.
class EmpiricalCdf {
public:
    EmpiricalCdf(std::vector<double> samples, double support_lo, double support_hi);

    long long n() const { return (long long)samples_.size(); }
    double support_lo() const { return support_lo_; }
    double support_hi() const { return support_hi_; }
    const std::vector<double>& samples() const { return samples_; }

    // F_n(x) = #{X_i <= x} / n
    double value(double x) const;
    // P_n(X = x), the atom mass at x
    double atom(double x) const;
    // #{X_i < x} / n
    double strictly_below(double x) const;

    // Distinct sample values, ascending.
    std::vector<double> distinct_values() const;

    bool has_finite_support() const {
        return support_hi_ < std::numeric_limits<double>::infinity();
    }

private:
    std::vector<double> samples_;  // sorted ascending
    double support_lo_;
    double support_hi_;
};

inline EmpiricalCdf make_ecdf(std::vector<double> samples,
                              std::pair<double, double> support) {
    return EmpiricalCdf(std::move(samples), support.first, support.second);
}

}  // namespace localdkw
