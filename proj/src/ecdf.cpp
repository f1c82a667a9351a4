#include "localdkw/ecdf.hpp"

#include <algorithm>

namespace localdkw {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples, double support_lo,
                           double support_hi)
    : samples_(std::move(samples)), support_lo_(support_lo), support_hi_(support_hi) {
    if (samples_.empty()) throw EmptySample("ECDF requires at least one sample");
    if (!(support_lo_ <= support_hi_))
        throw SupportViolation("support bounds out of order");
    std::sort(samples_.begin(), samples_.end());
    if (samples_.front() < support_lo_ || samples_.back() > support_hi_)
        throw SupportViolation("sample outside declared support");
}

double EmpiricalCdf::value(double x) const {
    auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
    return double(it - samples_.begin()) / double(samples_.size());
}

double EmpiricalCdf::atom(double x) const {
    auto range = std::equal_range(samples_.begin(), samples_.end(), x);
    return double(range.second - range.first) / double(samples_.size());
}

double EmpiricalCdf::strictly_below(double x) const {
    auto it = std::lower_bound(samples_.begin(), samples_.end(), x);
    return double(it - samples_.begin()) / double(samples_.size());
}

std::vector<double> EmpiricalCdf::distinct_values() const {
    std::vector<double> out = samples_;
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace localdkw
