#include "localdkw/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "localdkw/ecdf.hpp"
#include "localdkw/exact_dkw.hpp"
#include "localdkw/inversion.hpp"
#include "localdkw/mc_oracle.hpp"
#include "localdkw/risk_functionals.hpp"
#include "localdkw/time_uniform.hpp"

namespace localdkw::cli {

namespace {

// Locale-independent decimal at 12 significant digits.
std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

TailSide parse_tail(const std::string& s) {
    if (s == "above") return TailSide::EmpiricalAbove;
    if (s == "below") return TailSide::EmpiricalBelow;
    throw CLI::ValidationError("--tail must be 'above' or 'below'");
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> g((std::size_t)count);
    for (int i = 0; i < count; ++i)
        g[(std::size_t)i] = lo + (hi - lo) * double(i) / double(count - 1);
    return g;
}

// Sample file: one real per line, '#'-comment lines ignored except an
// optional first-line '# support=a,b' directive.
struct SampleFile {
    std::vector<double> samples;
    std::optional<std::pair<double, double>> support;
};

SampleFile read_samples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open sample file: " + path);
    SampleFile sf;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto pos = line.find("support=");
            if (pos != std::string::npos) {
                auto vals = parse_list(line.substr(pos + 8));
                if (vals.size() == 2) sf.support = {vals[0], vals[1]};
            }
            continue;
        }
        sf.samples.push_back(std::stod(line));
    }
    return sf;
}

void echo_header(std::ostream& os, const std::vector<std::string>& args) {
    os << "# localdkw " << kVersion << "\n# argv:";
    for (const auto& a : args) os << ' ' << a;
    os << '\n';
}

const std::vector<UnitInterval>& family_a() {
    static const std::vector<UnitInterval> f = {{0, 0.05}, {0, 0.1}, {0, 0.2},
                                                {0, 0.5},  {0, 0.9}, {0, 1}};
    return f;
}
const std::vector<UnitInterval>& family_b() {
    static const std::vector<UnitInterval> f = {{0.1, 1},  {0.5, 1},  {0.8, 1},
                                                {0.9, 1},  {0.95, 1}, {0, 1}};
    return f;
}

std::string interval_label(const UnitInterval& iv) {
    return "[" + fmt(iv.lo) + "," + fmt(iv.hi) + "]";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact local empirical-CDF concentration toolkit"};
    app.require_subcommand(1);

    std::string out_path;
    app.add_option("--out", out_path, "output file (default: stdout)")->capture_default_str();

    // Shared option storage.
    long long n = 1;
    double eps = 0.1, delta = 0.05, lo = 0.0, hi = 1.0, tol = kDefaultTol;
    std::string tail_str = "above";

    auto add_interval = [&](CLI::App* cmd) {
        cmd->add_option("--lo", lo, "interval lower end")->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--hi", hi, "interval upper end")->check(CLI::Range(0.0, 1.0));
    };
    auto add_tail = [&](CLI::App* cmd) {
        cmd->add_option("--tail", tail_str, "above (F_n - F) or below (F - F_n)");
    };

    // prob
    auto* prob = app.add_subcommand("prob", "exact exceedance probability");
    prob->add_option("--n", n, "sample count")->required();
    prob->add_option("--eps", eps, "deviation threshold")->required();
    add_interval(prob);
    add_tail(prob);

    // invert
    auto* invert = app.add_subcommand("invert", "confidence radius eps(n, delta)");
    invert->add_option("--n", n)->required();
    invert->add_option("--delta", delta)->required();
    invert->add_option("--tol", tol);
    add_interval(invert);
    add_tail(invert);

    // tabulate
    std::string n_list, delta_list;
    auto* tab = app.add_subcommand("tabulate", "radius table over (n, delta) grids");
    tab->add_option("--n-values", n_list, "comma-separated n grid")->required();
    tab->add_option("--delta-values", delta_list, "comma-separated delta grid")->required();
    tab->add_option("--tol", tol);
    add_interval(tab);
    add_tail(tab);

    // band
    std::string sample_path, support_str;
    auto* band = app.add_subcommand("band", "CDF confidence band from a sample file");
    band->add_option("--samples", sample_path, "one value per line")->required();
    band->add_option("--delta", delta)->required();
    band->add_option("--support", support_str, "a,b support override");
    band->add_option("--tol", tol);
    add_interval(band);

    // cvar
    std::string side_str = "reward";
    double alpha = 0.05, kappa = 0.95;
    auto* cvar = app.add_subcommand("cvar", "CVaR point estimate and confidence bounds");
    cvar->add_option("--samples", sample_path)->required();
    cvar->add_option("--side", side_str, "reward or loss");
    cvar->add_option("--alpha", alpha, "reward-tail level");
    cvar->add_option("--kappa", kappa, "loss-tail level");
    cvar->add_option("--delta", delta)->required();
    cvar->add_option("--support", support_str, "a,b support override");
    cvar->add_option("--tol", tol);

    // mc
    std::uint64_t seed = 0, reps = 10'000;
    std::string eps_grid_str;
    auto* mc = app.add_subcommand("mc", "Monte-Carlo validation of the exact formulas");
    mc->add_option("--n", n)->required();
    mc->add_option("--reps", reps);
    mc->add_option("--seed", seed);
    mc->add_option("--eps-grid", eps_grid_str, "comma-separated eps grid (default 99 pts)");
    add_interval(mc);
    add_tail(mc);

    // tu
    long long horizon = 100, upto = 0;
    double eta = 1.1, bigC = 2.0;
    std::string scheme_str;
    double xi = 3.0, poly_a = 0.5;
    std::string g_str = "tt1";
    auto* tu = app.add_subcommand("tu", "time-uniform radii / cumulative schedules");
    tu->add_option("--horizon", horizon, "a.s. bound on the stopping time");
    tu->add_option("--delta", delta);
    tu->add_option("--eta", eta);
    tu->add_option("--C", bigC);
    tu->add_option("--upto", upto, "emit radii for t = 1..upto (default horizon)");
    tu->add_option("--schedule", scheme_str, "a|b|c|union: emit a schedule instead");
    tu->add_option("--xi", xi, "schedule b exponent (> 2)");
    tu->add_option("--a", poly_a, "schedule a exponent (< 1)");
    tu->add_option("--g", g_str, "3t32|tt1|logsq|loglogsq for schedules c/union");
    tu->add_option("--tol", tol);
    add_interval(tu);
    add_tail(tu);

    // figure
    std::string figure_id, family = "a";
    auto* fig = app.add_subcommand("figure", "plot-ready curve grids");
    fig->add_option("--figure", figure_id, "delta0|delta1|epsilon0|mcmc")->required();
    fig->add_option("--n", n)->required();
    fig->add_option("--family", family, "interval family: a or b");
    fig->add_option("--seed", seed);
    fig->add_option("--reps", reps);

    std::vector<std::string> argv = args;
    try {
        app.parse(std::vector<std::string>(argv.rbegin(), argv.rend()));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    std::ofstream file_out;
    std::ostream* os = &out;
    if (!out_path.empty()) {
        file_out.open(out_path);
        if (!file_out) {
            err << "cannot open output file: " << out_path << '\n';
            return 1;
        }
        os = &file_out;
    }

    try {
        TailSide tail = parse_tail(tail_str);
        UnitInterval interval{lo, hi};

        if (prob->parsed()) {
            echo_header(*os, args);
            auto r = exceedance({n, eps, interval, tail});
            *os << "n,eps,lo,hi,tail,probability\n"
                << n << ',' << fmt(eps) << ',' << fmt(lo) << ',' << fmt(hi) << ','
                << tail_str << ',' << fmt(r.probability) << '\n';
        } else if (invert->parsed()) {
            echo_header(*os, args);
            auto r = invert_radius({n, delta, interval, tail, tol});
            *os << "n,delta,lo,hi,tail,epsilon,saturated\n"
                << n << ',' << fmt(delta) << ',' << fmt(lo) << ',' << fmt(hi) << ','
                << tail_str << ',' << fmt(r.epsilon) << ',' << (r.saturated ? 1 : 0)
                << '\n';
        } else if (tab->parsed()) {
            std::vector<long long> ns;
            for (double v : parse_list(n_list)) ns.push_back((long long)v);
            auto ds = parse_list(delta_list);
            auto table = tabulate(ns, ds, interval, tail, tol);
            echo_header(*os, args);
            *os << "# interval=" << fmt(lo) << ',' << fmt(hi) << " tail=" << tail_str
                << " tol=" << fmt(tol) << '\n'
                << "n,delta,epsilon\n";
            for (std::size_t i = 0; i < table.n_values.size(); ++i)
                for (std::size_t j = 0; j < table.delta_values.size(); ++j)
                    *os << table.n_values[i] << ',' << fmt(table.delta_values[j]) << ','
                        << fmt(table.radii[i][j]) << '\n';
        } else if (band->parsed()) {
            auto sf = read_samples(sample_path);
            if (!support_str.empty()) {
                auto s = parse_list(support_str);
                sf.support = {s.at(0), s.at(1)};
            }
            if (!sf.support) {
                if (sf.samples.empty()) throw EmptySample("no samples in file");
                auto [mn, mx] = std::minmax_element(sf.samples.begin(), sf.samples.end());
                sf.support = {*mn, *mx};
            }
            auto ecdf = make_ecdf(sf.samples, *sf.support);
            auto b = confidence_band(ecdf, delta, interval, tol);
            echo_header(*os, args);
            *os << "# delta=" << fmt(delta) << " radius_lower=" << fmt(b.radius_lower)
                << " radius_upper=" << fmt(b.radius_upper) << '\n'
                << "x,lower,upper\n";
            for (const auto& k : b.knots)
                *os << fmt(k.x) << ',' << fmt(k.lower) << ',' << fmt(k.upper) << '\n';
        } else if (cvar->parsed()) {
            auto sf = read_samples(sample_path);
            if (!support_str.empty()) {
                auto s = parse_list(support_str);
                sf.support = {s.at(0), s.at(1)};
            }
            if (!sf.support) throw InvalidQuery("cvar needs --support a,b (finite)");
            auto ecdf = make_ecdf(sf.samples, *sf.support);
            double level;
            double point;
            BoundPair bounds;
            if (side_str == "reward") {
                level = alpha;
                point = cvar_reward_point(ecdf, level);
                bounds = cvar_reward_bounds(ecdf, level, delta, tol);
            } else if (side_str == "loss") {
                level = kappa;
                point = cvar_loss_point(ecdf, level);
                bounds = cvar_loss_bounds(ecdf, level, delta, tol);
            } else {
                throw CLI::ValidationError("--side must be reward or loss");
            }
            echo_header(*os, args);
            *os << "level,delta,lower,point,upper,n\n"
                << fmt(level) << ',' << fmt(delta) << ',' << fmt(bounds.lower) << ','
                << fmt(point) << ',' << fmt(bounds.upper) << ',' << ecdf.n() << '\n';
        } else if (mc->parsed()) {
            McConfig cfg;
            cfg.reps = reps;
            cfg.seed = seed;
            cfg.n = n;
            cfg.interval = interval;
            cfg.tail = tail;
            cfg.eps_grid = eps_grid_str.empty() ? linspace(0.01, 0.99, 99)
                                                : parse_list(eps_grid_str);
            auto est = mc_exceedance(cfg);
            echo_header(*os, args);
            *os << "# seed=" << seed << " reps=" << reps << " n=" << n
                << " interval=" << fmt(lo) << ',' << fmt(hi) << " tail=" << tail_str
                << '\n'
                << "eps,frequency,stderr,exact,abs_diff\n";
            for (const auto& e : est) {
                double exact = exceedance({n, e.eps, interval, tail}).probability;
                *os << fmt(e.eps) << ',' << fmt(e.frequency) << ',' << fmt(e.stderr_)
                    << ',' << fmt(exact) << ',' << fmt(std::abs(e.frequency - exact))
                    << '\n';
            }
        } else if (tu->parsed()) {
            echo_header(*os, args);
            if (!scheme_str.empty()) {
                ScheduleScheme scheme;
                if (scheme_str == "a") scheme = ScheduleScheme::PolyLogA;
                else if (scheme_str == "b") scheme = ScheduleScheme::KlUcbB;
                else if (scheme_str == "c") scheme = ScheduleScheme::SummableC;
                else if (scheme_str == "union") scheme = ScheduleScheme::UnionBound;
                else throw CLI::ValidationError("--schedule must be a|b|c|union");
                ScheduleParams params;
                params.a = poly_a;
                params.xi = xi;
                params.eta = eta;
                if (g_str == "3t32") params.g = GFunction::ThreeT32;
                else if (g_str == "tt1") params.g = GFunction::TT1;
                else if (g_str == "logsq") params.g = GFunction::LogSq;
                else if (g_str == "loglogsq") params.g = GFunction::LogLogSq;
                else throw CLI::ValidationError("--g must be 3t32|tt1|logsq|loglogsq");
                auto sched = build_schedule(scheme, horizon, params);
                *os << "t,eta_t,delta_t,K_t\n";
                for (const auto& e : sched.entries)
                    *os << e.t << ',' << fmt(e.eta_t) << ',' << fmt(e.delta_t) << ','
                        << e.blocks << '\n';
            } else {
                TimeUniformConfig cfg{horizon, delta, eta, bigC, interval, tail, tol};
                long long last = upto > 0 ? upto : horizon;
                *os << "t,radius\n";
                for (long long t = 1; t <= last; ++t) {
                    if (double(t) <= eta - 1.0) continue;
                    *os << t << ',' << fmt(tu_radius(t, cfg)) << '\n';
                }
            }
        } else if (fig->parsed()) {
            const auto& ivs = family == "b" ? family_b() : family_a();
            echo_header(*os, args);
            if (figure_id == "delta0" || figure_id == "delta1") {
                TailSide t = figure_id == "delta0" ? TailSide::EmpiricalAbove
                                                   : TailSide::EmpiricalBelow;
                auto grid = linspace(1e-3, 1.0, 1000);
                *os << "eps";
                for (const auto& iv : ivs) *os << ',' << interval_label(iv);
                *os << '\n';
                for (double e : grid) {
                    *os << fmt(e);
                    for (const auto& iv : ivs)
                        *os << ',' << fmt(exceedance({n, e, iv, t}).probability);
                    *os << '\n';
                }
            } else if (figure_id == "epsilon0") {
                auto grid = linspace(1e-3, 1.0 - 1e-3, 1000);
                *os << "delta";
                for (const auto& iv : ivs) *os << ',' << interval_label(iv);
                *os << ",dkw\n";
                for (double d : grid) {
                    *os << fmt(d);
                    for (const auto& iv : ivs)
                        *os << ','
                            << fmt(invert_radius({n, d, iv, TailSide::EmpiricalAbove, tol})
                                       .epsilon);
                    *os << ',' << fmt(massart_radius(n, d)) << '\n';
                }
            } else if (figure_id == "mcmc") {
                auto grid = linspace(1e-2, 1.0, 100);
                *os << "# seed=" << seed << " reps=" << reps << '\n';
                *os << "eps";
                for (const auto& iv : ivs)
                    *os << ",mc" << interval_label(iv) << ",exact" << interval_label(iv);
                *os << '\n';
                std::vector<std::vector<McEstimate>> cols;
                for (const auto& iv : ivs) {
                    McConfig cfg{reps, seed, n, iv, TailSide::EmpiricalAbove, grid};
                    cols.push_back(mc_exceedance(cfg));
                }
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    *os << fmt(grid[i]);
                    for (std::size_t c = 0; c < ivs.size(); ++c) {
                        double exact =
                            exceedance({n, grid[i], ivs[c], TailSide::EmpiricalAbove})
                                .probability;
                        *os << ',' << fmt(cols[c][i].frequency) << ',' << fmt(exact);
                    }
                    *os << '\n';
                }
            } else {
                throw CLI::ValidationError("--figure must be delta0|delta1|epsilon0|mcmc");
            }
        }
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidQuery& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::ios_base::failure& e) {
        err << "i/o error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace localdkw::cli
