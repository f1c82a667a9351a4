#include "localdkw/time_uniform.hpp"

#include <cmath>

#include "localdkw/exact_dkw.hpp"

namespace localdkw {

void TimeUniformConfig::validate() const {
    if (horizon < 1) throw InvalidQuery("horizon must be >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidQuery("delta must be in (0,1)");
    if (!(eta > 1.0)) throw InvalidQuery("eta must be > 1");
    if (!(C > 1.0)) throw InvalidQuery("C must be > 1");
    interval.validate();
}

double q_sup(const UnitInterval& interval) {
    interval.validate();
    if (interval.lo <= 0.5 && 0.5 <= interval.hi) return 0.25;
    double at_lo = interval.lo * (1.0 - interval.lo);
    double at_hi = interval.hi * (1.0 - interval.hi);
    return std::max(at_lo, at_hi);
}

long long peeling_blocks(long long horizon, double eta) {
    if (horizon < 1) throw InvalidQuery("horizon must be >= 1");
    if (!(eta > 1.0)) throw InvalidQuery("eta must be > 1");
    long long k = (long long)std::ceil(std::log(double(horizon)) / std::log(eta));
    return std::max<long long>(k, 1);
}

double peeling_rhs(long long n1, long long n2, double eps, const TimeUniformConfig& cfg) {
    cfg.validate();
    if (n1 < 1 || n2 < 1) throw InvalidQuery("block endpoints must be >= 1");
    if (double(n2) > cfg.eta * double(n1))
        throw InvalidQuery("peeling step needs n2 <= eta * n1");
    const double q = q_sup(cfg.interval);
    const double shrink = std::sqrt(cfg.C * q * (cfg.eta - 1.0) / ((cfg.C - 1.0) * double(n1)));
    if (!(eps > shrink))
        throw EpsTooSmall("eps below the peeling threshold; the step is vacuous");
    double shrunken = std::sqrt(double(n1) / (double(n2) * cfg.eta)) * (eps - shrink);
    ExceedanceQuery query{n2, shrunken, cfg.interval, cfg.tail};
    return cfg.C * exceedance(query).probability;
}

double tu_radius_with(long long N, const TimeUniformConfig& cfg,
                      const std::function<double(long long, double)>& radius_fn) {
    cfg.validate();
    if (N < 1 || N > cfg.horizon) throw InvalidQuery("need 1 <= N <= horizon");
    if (!(double(N) > cfg.eta - 1.0))
        throw TooEarly("N <= eta - 1: the peeled denominator is nonpositive");
    const long long K = peeling_blocks(cfg.horizon, cfg.eta);
    const double level = (cfg.delta / cfg.C) / double(K);
    const double eps = radius_fn(N, level);
    const double q = q_sup(cfg.interval);
    const double slack = std::sqrt(cfg.C / (cfg.C - 1.0) * q * cfg.eta * (cfg.eta - 1.0));
    return (cfg.eta * std::sqrt(double(N)) * eps + slack) /
           std::sqrt(double(N) - (cfg.eta - 1.0));
}

double tu_radius(long long N, const TimeUniformConfig& cfg) {
    return tu_radius_with(N, cfg, [&](long long n, double level) {
        return invert_radius({n, level, cfg.interval, cfg.tail, cfg.tol}).epsilon;
    });
}

double tu_radius_global(long long N, long long horizon, double delta, double eta) {
    if (N < 1 || horizon < N) throw InvalidQuery("need 1 <= N <= horizon");
    if (!(delta > 0.0 && delta < 0.5)) throw InvalidQuery("delta must be in (0, 0.5)");
    if (!(eta > 1.0)) throw InvalidQuery("eta must be > 1");
    if (!(double(N) > eta - 1.0))
        throw TooEarly("N <= eta - 1: the peeled denominator is nonpositive");
    const long long K = peeling_blocks(horizon, eta);
    return (eta * std::sqrt(std::log(double(K) * 2.0 / delta)) + std::sqrt(eta * (eta - 1.0))) /
           std::sqrt(2.0 * (double(N) - (eta - 1.0)));
}

namespace {

// max(ln t, 1)
double ln_bar(double t) { return std::max(std::log(t), 1.0); }

double iterated_ln_bar(double t, int depth) {
    double v = t;
    for (int i = 0; i < depth; ++i) v = ln_bar(v);
    return v;
}

double generalized_g(long long t, int m) {
    if (m < 1 || m > 4) throw InvalidQuery("generalized g supports 1 <= m <= 4");
    // C_m = 2 + ln(exp^{om}(1)) = 2 + exp^{o(m-1)}(1); matches the listed
    // C_1 = 2 + ln 2 + 1/e only approximately, so the listed constants are
    // used verbatim for m <= 2.
    double cm;
    if (m == 1)
        cm = 2.0 + std::log(2.0) + 1.0 / std::exp(1.0);
    else if (m == 2)
        cm = 2.03 + std::log(std::exp(std::exp(1.0)) - 1.0);
    else {
        double e_iter = 1.0;
        for (int i = 0; i < m - 1; ++i) e_iter = std::exp(e_iter);
        cm = 2.0 + e_iter;
    }
    double prod = 1.0;
    for (int i = 0; i < m; ++i) prod *= iterated_ln_bar(double(t), i);  // i = 0 gives t
    double top = iterated_ln_bar(double(t), m);
    return cm * top * top * prod;
}

}  // namespace

double g_value(GFunction id, long long t, int m) {
    if (t < 1) throw InvalidQuery("t must be >= 1");
    const double td = double(t);
    switch (id) {
        case GFunction::ThreeT32:
            return 3.0 * std::pow(td, 1.5);
        case GFunction::TT1:
            return td * (td + 1.0);
        case GFunction::LogSq: {
            // (t+1) ln^2(t+1) scaled so the series provably stays below 1
            // (the ln 2 normalization overshoots; see the summability test).
            const double c = 2.0 / std::log(2.0);
            return c * (td + 1.0) * std::pow(std::log(td + 1.0), 2.0);
        }
        case GFunction::LogLogSq: {
            const double lll3 = std::log(std::log(3.0));
            return (td + 2.0) * std::log(td + 2.0) *
                   std::pow(std::log(std::log(td + 2.0)), 2.0) / (lll3 * lll3);
        }
        case GFunction::Generalized:
            return generalized_g(t, m);
    }
    throw InvalidQuery("unknown g function");
}

Schedule build_schedule(ScheduleScheme scheme, long long T, const ScheduleParams& params) {
    if (T < 1) throw InvalidQuery("T must be >= 1");
    Schedule out{scheme, params, {}};
    out.entries.reserve((std::size_t)T);

    for (long long t = 1; t <= T; ++t) {
        ScheduleEntry e;
        e.t = t;
        switch (scheme) {
            case ScheduleScheme::PolyLogA: {
                if (!(params.a < 1.0 && params.a > 0.0))
                    throw InvalidParams("PolyLogA needs exponent a in (0,1)");
                double lt = std::log(double(t) + std::exp(1.0));
                e.eta_t = 1.0 + std::pow(lt, -params.a);
                e.delta_t = 1.0 / (double(t) * lt * lt);
                break;
            }
            case ScheduleScheme::KlUcbB: {
                if (!(params.xi > 2.0)) throw InvalidParams("KlUcbB needs xi > 2");
                // f(t) = ln t + xi lnln t is undefined below t = 3; the first
                // two entries reuse the t = 3 budget.
                double te = double(std::max<long long>(t, 3));
                double f = std::log(te) + params.xi * std::log(std::log(te));
                e.eta_t = (f + 1.0) / f;
                e.delta_t = std::exp(-f);
                break;
            }
            case ScheduleScheme::SummableC: {
                if (!(params.eta > 1.0)) throw InvalidParams("SummableC needs eta > 1");
                e.eta_t = params.eta;
                long long k = peeling_blocks(t, params.eta);
                e.delta_t = (1.0 / double(k)) * 1.0 / (2.0 * g_value(params.g, t, params.g_m));
                if (e.delta_t > 1.0)
                    throw DeltaOverflow("scheme-C delta_t exceeds 1; eta too small for g");
                break;
            }
            case ScheduleScheme::UnionBound: {
                e.eta_t = 1.0;  // no peeling
                e.delta_t = 1.0 / (double(t) * g_value(params.g, t, params.g_m));
                break;
            }
        }
        e.blocks = scheme == ScheduleScheme::UnionBound
                       ? t
                       : peeling_blocks(t, e.eta_t);
        out.entries.push_back(e);
    }
    return out;
}

}  // namespace localdkw
