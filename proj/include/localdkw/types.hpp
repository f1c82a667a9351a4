#pragma once

#include <stdexcept>
#include <string>

namespace localdkw {

// Base class for all argument/contract violations raised by the library.
class InvalidQuery : public std::invalid_argument {
public:
    explicit InvalidQuery(const std::string& what) : std::invalid_argument(what) {}
};

class EmptySample : public InvalidQuery {
public:
    explicit EmptySample(const std::string& what) : InvalidQuery(what) {}
};

class SupportViolation : public InvalidQuery {
public:
    explicit SupportViolation(const std::string& what) : InvalidQuery(what) {}
};

class UnsortedInput : public InvalidQuery {
public:
    explicit UnsortedInput(const std::string& what) : InvalidQuery(what) {}
};

class UnboundedSupport : public InvalidQuery {
public:
    explicit UnboundedSupport(const std::string& what) : InvalidQuery(what) {}
};

class NegativeSupport : public InvalidQuery {
public:
    explicit NegativeSupport(const std::string& what) : InvalidQuery(what) {}
};

class PartitionIncompatible : public InvalidQuery {
public:
    explicit PartitionIncompatible(const std::string& what) : InvalidQuery(what) {}
};

class InvalidLedger : public InvalidQuery {
public:
    explicit InvalidLedger(const std::string& what) : InvalidQuery(what) {}
};

class InvalidParams : public InvalidQuery {
public:
    explicit InvalidParams(const std::string& what) : InvalidQuery(what) {}
};

class DeltaOverflow : public InvalidQuery {
public:
    explicit DeltaOverflow(const std::string& what) : InvalidQuery(what) {}
};

class EpsTooSmall : public InvalidQuery {
public:
    explicit EpsTooSmall(const std::string& what) : InvalidQuery(what) {}
};

class TooEarly : public InvalidQuery {
public:
    explicit TooEarly(const std::string& what) : InvalidQuery(what) {}
};

// Sub-interval [lo, hi] of [0,1] over which suprema of the CDF deviation
// are taken. Degenerate lo == hi is allowed.
struct UnitInterval {
    double lo = 0.0;
    double hi = 1.0;

    UnitInterval() = default;
    UnitInterval(double lo_, double hi_) : lo(lo_), hi(hi_) { validate(); }

    void validate() const {
        if (!(lo >= 0.0) || !(hi <= 1.0) || !(lo <= hi))
            throw InvalidQuery("UnitInterval requires 0 <= lo <= hi <= 1, got [" +
                               std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
};

// Direction of the deviation. EmpiricalAbove is sup F_n - F (the empirical
// CDF exceeds the truth), EmpiricalBelow is sup F - F_n.
enum class TailSide {
    EmpiricalAbove,
    EmpiricalBelow,
};

inline const char* to_string(TailSide t) {
    return t == TailSide::EmpiricalAbove ? "above" : "below";
}

}  // namespace localdkw
