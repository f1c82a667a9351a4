#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "localdkw/exact_dkw.hpp"
#include "localdkw/mc_oracle.hpp"
#include "localdkw/rng.hpp"

using namespace localdkw;

namespace {

// Brute-force references evaluated on a dense grid: F_n(u) - u at grid
// points (right-continuous), u - F_n(u^-) via strict counts.
double brute_left(const std::vector<double>& s, const UnitInterval& iv) {
    double best = -2.0;
    for (double u = iv.lo; u <= iv.hi + 1e-12; u += 1e-6) {
        double v = std::min(u, iv.hi);
        double fn = double(std::upper_bound(s.begin(), s.end(), v) - s.begin()) /
                    double(s.size());
        best = std::max(best, fn - v);
    }
    return best;
}

double brute_right(const std::vector<double>& s, const UnitInterval& iv) {
    double best = -2.0;
    for (double u = iv.lo; u <= iv.hi + 1e-12; u += 1e-6) {
        double v = std::min(u, iv.hi);
        double fn_strict =
            double(std::lower_bound(s.begin(), s.end(), v) - s.begin()) /
            double(s.size());
        best = std::max(best, v - fn_strict);
    }
    return best;
}

}  // namespace

TEST_CASE("sup oracles agree with dense-grid brute force") {
    SplitMix64 rng(0x77aa55ULL);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 1 + (std::size_t)(rng.next_uniform() * 30);
        std::vector<double> s(n);
        for (auto& v : s) v = rng.next_uniform();
        std::sort(s.begin(), s.end());
        double a = rng.next_uniform(), b = rng.next_uniform();
        UnitInterval iv{std::min(a, b), std::max(a, b)};
        // the brute grid undershoots by at most its own step
        CHECK(std::abs(sup_dev_left(s, iv) - brute_left(s, iv)) <= 3e-6);
        CHECK(std::abs(sup_dev_right(s, iv) - brute_right(s, iv)) <= 3e-6);
        CHECK(sup_dev_left(s, iv) >= brute_left(s, iv) - 1e-12);
        CHECK(sup_dev_right(s, iv) >= brute_right(s, iv) - 1e-12);
    }
}

TEST_CASE("sup oracles handle ties and degenerate intervals") {
    std::vector<double> s{0.2, 0.2, 0.2, 0.8};
    CHECK(sup_dev_left(s, {0.2, 0.2}) == doctest::Approx(0.75 - 0.2));
    CHECK(sup_dev_right(s, {0.2, 0.2}) == doctest::Approx(0.2 - 0.0));
    CHECK(sup_dev_left(s, {0.5, 0.7}) == doctest::Approx(0.75 - 0.5));
    CHECK(sup_dev_right(s, {0.5, 1.0}) == doctest::Approx(0.8 - 0.75));
    CHECK_THROWS_AS(sup_dev_left(std::vector<double>{0.5, 0.1}, {0, 1}), UnsortedInput);
}

TEST_CASE("mc_exceedance is deterministic and independent of thread count") {
    McConfig cfg;
    cfg.reps = 4000;
    cfg.seed = 42;
    cfg.n = 12;
    cfg.interval = {0.1, 0.8};
    cfg.tail = TailSide::EmpiricalAbove;
    cfg.eps_grid = {0.05, 0.15, 0.3, 0.5};

    setenv("LOCALDKW_THREADS", "1", 1);
    auto serial = mc_exceedance(cfg);
    setenv("LOCALDKW_THREADS", "7", 1);
    auto threaded = mc_exceedance(cfg);
    unsetenv("LOCALDKW_THREADS");
    REQUIRE(serial.size() == threaded.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].frequency == threaded[i].frequency);
        // counts are integers under common random numbers
        double c = serial[i].frequency * double(cfg.reps);
        CHECK(c == doctest::Approx(std::round(c)).epsilon(1e-12));
    }
    // frequencies are nonincreasing along the grid (same samples, nested events)
    for (std::size_t i = 1; i < serial.size(); ++i)
        CHECK(serial[i].frequency <= serial[i - 1].frequency);
}

TEST_CASE("MC frequencies track the exact formulas") {
    McConfig cfg;
    cfg.reps = 20000;
    cfg.seed = 2026;
    cfg.n = 10;
    cfg.interval = {0, 0.5};
    cfg.tail = TailSide::EmpiricalBelow;
    cfg.eps_grid = {0.05, 0.1, 0.2, 0.35, 0.49};
    auto est = mc_exceedance(cfg);
    for (const auto& e : est) {
        double exact = exceedance({cfg.n, e.eps, cfg.interval, cfg.tail}).probability;
        CHECK(std::abs(e.frequency - exact) <= 4.0 * e.stderr_ + 1e-3);
    }
}

TEST_CASE("binomial_tail matches hand-computed values") {
    // P(Bin(3, 0.5) > 1.5) = (3 + 1) / 8
    CHECK(binomial_tail(3, 0.5, TailMode::GreaterThan, 1.5) == doctest::Approx(0.5));
    // P(Bin(2, 0.3) < 1) = 0.49
    CHECK(binomial_tail(2, 0.3, TailMode::LessThan, 1.0) == doctest::Approx(0.49));
    // threshold beyond the support
    CHECK(binomial_tail(4, 0.2, TailMode::GreaterThan, 4.0) == doctest::Approx(0.0));
    CHECK(binomial_tail(4, 0.2, TailMode::LessThan, 0.0) == doctest::Approx(0.0));
    CHECK(binomial_tail(4, 0.2, TailMode::GreaterThan, -1.0) == doctest::Approx(1.0));
}

TEST_CASE("grid validation") {
    McConfig cfg;
    cfg.n = 5;
    cfg.eps_grid = {0.2, 0.1};
    CHECK_THROWS_AS(mc_exceedance(cfg), InvalidQuery);
    cfg.eps_grid = {0.0, 0.1};
    CHECK_THROWS_AS(mc_exceedance(cfg), InvalidQuery);
}
