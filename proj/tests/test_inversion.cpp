#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "localdkw/exact_dkw.hpp"
#include "localdkw/inversion.hpp"
#include "localdkw/rng.hpp"

using namespace localdkw;

TEST_CASE("bisection certificate: eps* meets delta, eps* - 2 tol does not") {
    SplitMix64 rng(0xabcde12345ULL);
    for (int trial = 0; trial < 200; ++trial) {
        long long n = 1 + (long long)(rng.next_uniform() * 300);
        double a = rng.next_uniform(), b = rng.next_uniform();
        UnitInterval iv{std::min(a, b), std::max(a, b)};
        double delta = 0.001 + 0.498 * rng.next_uniform();
        auto tail = (trial % 2) ? TailSide::EmpiricalAbove : TailSide::EmpiricalBelow;
        auto r = invert_radius({n, delta, iv, tail, 1e-7});
        CHECK(exceedance({n, r.epsilon, iv, tail}).probability <= delta);
        if (!r.saturated) {
            double lo = r.epsilon - 2e-7;
            if (lo > kEpsMin)
                CHECK(exceedance({n, lo, iv, tail}).probability > delta);
        }
    }
}

TEST_CASE("radius shrinks with n and with delta") {
    UnitInterval iv{0, 0.3};
    double prev = 2.0;
    for (long long n : {10, 30, 100, 300}) {
        double e = invert_radius({n, 0.05, iv, TailSide::EmpiricalAbove}).epsilon;
        CHECK(e < prev);
        prev = e;
    }
    prev = 2.0;
    for (double d : {0.01, 0.05, 0.2, 0.4}) {
        double e = invert_radius({100, d, iv, TailSide::EmpiricalAbove}).epsilon;
        CHECK(e < prev);
        prev = e;
    }
}

TEST_CASE("full-interval radius never exceeds the Massart radius") {
    SplitMix64 rng(0x5151ULL);
    for (int trial = 0; trial < 100; ++trial) {
        long long n = 1 + (long long)(rng.next_uniform() * 400);
        double delta = 1e-4 + rng.next_uniform() * 0.4999;
        double local =
            invert_radius({n, delta, {0, 1}, TailSide::EmpiricalAbove}).epsilon;
        CHECK(local <= massart_radius(n, delta) + 1e-7);
    }
}

TEST_CASE("small sub-intervals give markedly tighter radii") {
    double local = invert_radius({100, 0.05, {0, 0.05}, TailSide::EmpiricalAbove}).epsilon;
    double global = massart_radius(100, 0.05);
    CHECK(local * 1.5 < global);
}

TEST_CASE("tabulate matches pointwise inversion and validates its grids") {
    std::vector<long long> ns{5, 20, 80};
    std::vector<double> ds{0.01, 0.1, 0.3};
    auto table = tabulate(ns, ds, {0.2, 0.9}, TailSide::EmpiricalBelow);
    for (std::size_t i = 0; i < ns.size(); ++i)
        for (std::size_t j = 0; j < ds.size(); ++j) {
            double e = invert_radius({ns[i], ds[j], {0.2, 0.9}, TailSide::EmpiricalBelow})
                           .epsilon;
            CHECK(table.radii[i][j] == e);
        }
    CHECK_THROWS_AS(tabulate({10, 10}, ds, {0, 1}, TailSide::EmpiricalAbove),
                    InvalidQuery);
    CHECK_THROWS_AS(tabulate(ns, {0.3, 0.1}, {0, 1}, TailSide::EmpiricalAbove),
                    InvalidQuery);
}

TEST_CASE("confidence band is valid, ordered, and clipped to [0,1]") {
    std::vector<double> xs{0.12, 0.3, 0.3, 0.55, 0.81, 0.97};
    auto ecdf = make_ecdf(xs, {0.0, 1.0});
    auto band = confidence_band(ecdf, 0.1, {0, 1});
    REQUIRE(!band.knots.empty());
    CHECK(band.knots.front().x == 0.0);
    CHECK(band.knots.back().x == 1.0);
    for (std::size_t i = 0; i < band.knots.size(); ++i) {
        const auto& k = band.knots[i];
        CHECK(k.lower >= 0.0);
        CHECK(k.upper <= 1.0);
        CHECK(k.lower <= k.upper);
        if (i) CHECK(band.knots[i - 1].x < k.x);
    }
    // last knot: F_n = 1, so the lower edge is 1 - radius_lower
    CHECK(band.knots.back().lower ==
          doctest::Approx(1.0 - band.radius_lower).epsilon(1e-12));
}

TEST_CASE("band coverage at its nominal level (seeded simulation)") {
    // uniform truth on [0,1]; the band covers F(x) = x at every knot's
    // half-open segment iff both sup deviations stay within their radii.
    const long long n = 60;
    const double delta = 0.2;
    const int reps = 400;
    double eps_above =
        invert_radius({n, delta / 2, {0, 1}, TailSide::EmpiricalAbove}).epsilon;
    double eps_below =
        invert_radius({n, delta / 2, {0, 1}, TailSide::EmpiricalBelow}).epsilon;
    int misses = 0;
    for (int r = 0; r < reps; ++r) {
        auto rng = SplitMix64::substream(0xbadced11ULL, (std::uint64_t)r);
        std::vector<double> u((std::size_t)n);
        for (auto& v : u) v = rng.next_uniform();
        std::sort(u.begin(), u.end());
        double sup_above = 0, sup_below = 0;
        for (long long i = 0; i < n; ++i) {
            double fn_at = double(i + 1) / n, fn_before = double(i) / n;
            sup_above = std::max(sup_above, fn_at - u[(std::size_t)i]);
            sup_below = std::max(sup_below, u[(std::size_t)i] - fn_before);
        }
        if (sup_above > eps_above || sup_below > eps_below) ++misses;
    }
    CHECK(double(misses) / reps <= delta + 0.05);
}

TEST_CASE("inversion rejects out-of-range parameters") {
    CHECK_THROWS_AS(invert_radius({0, 0.05, {0, 1}, TailSide::EmpiricalAbove}),
                    InvalidQuery);
    CHECK_THROWS_AS(invert_radius({10, 0.0, {0, 1}, TailSide::EmpiricalAbove}),
                    InvalidQuery);
    CHECK_THROWS_AS(invert_radius({10, 1.0, {0, 1}, TailSide::EmpiricalAbove}),
                    InvalidQuery);
    CHECK_THROWS_AS(invert_radius({10, 0.05, {0, 1}, TailSide::EmpiricalAbove, 1.0}),
                    InvalidQuery);
}
