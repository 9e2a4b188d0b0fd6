// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "property_checks.hpp"
#include "xisis/baselines.hpp"
#include "xisis/evalkit.hpp"
#include "xisis/rankcorr.hpp"
#include "xisis/screening.hpp"
#include "xisis/simgen.hpp"

using namespace xisis;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void check(bool ok, const std::string& what) {
        detail << (ok ? "" : "[x] ") << what << "; ";
        pass = pass && ok;
    }
};

int failures = 0;

void criterion(const char* id, const char* title, double time_limit_s,
               const std::function<void(Outcome&)>& body) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char timing[96];
    std::snprintf(timing, sizeof timing, "runtime %.2fs (limit %.0fs)", secs, time_limit_s);
    out.check(secs < time_limit_s, timing);
    if (!out.pass) ++failures;
    std::printf("[%s] %s %s\n      %s\n", out.pass ? "PASS" : "FAIL", id, title, out.detail.str().c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

SimulationConfig table_config(ModelId id) {
    SimulationConfig cfg;
    cfg.model = ModelSpec::make(id);
    cfg.n = 400;
    cfg.p = 200;
    cfg.replications = 100;
    cfg.d = default_d(400);
    cfg.base_seed = 20220101;
    cfg.methods = {Method::xi, Method::pearson, Method::dcor};
    cfg.threads = 1;
    return cfg;
}

const MethodOutcome& outcome(const SimulationReport& r, Method m) {
    for (const auto& o : r.outcomes)
        if (o.method == m) return o;
    throw std::runtime_error("method missing from report");
}

void print_table(const SimulationReport& r) {
    std::printf("      proportions (rows X_k; cols xi, pearson, dcor):\n");
    for (std::size_t a = 0; a < r.config.model.active_set.size(); ++a)
        std::printf("        X%zu  %.2f  %.2f  %.2f\n", r.config.model.active_set[a] + 1,
                    outcome(r, Method::xi).proportions[a], outcome(r, Method::pearson).proportions[a],
                    outcome(r, Method::dcor).proportions[a]);
}

struct JointFixture {
    const char* name;
    std::vector<double> xs, ys;
    std::vector<std::vector<double>> p;
    double exact = -1.0;  // known target when >= 0
};

}  // namespace

int main() {
    criterion("C1", "exact estimator values 1 - 3/(n+1)", 1.0, [](Outcome& o) {
        for (std::size_t n : {4, 10, 100, 1000}) {
            std::vector<double> x(n), y(n);
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = static_cast<double>(i) * 0.5 - 3.0;
                y[i] = -std::pow(static_cast<double>(i) + 1.0, 1.5);
            }
            const double got = xi_score(x, y, 1);
            const double want = 1.0 - 3.0 / (static_cast<double>(n) + 1.0);
            o.check(got == want, fmt("n=%.0f |diff|=%.1e", static_cast<double>(n), std::abs(got - want)));
        }
    });

    criterion("C2", "population xi vs Monte Carlo xi at n=20000 within 0.02", 10.0, [](Outcome& o) {
        const std::vector<JointFixture> fixtures{
            {"independent",
             {0, 1, 2},
             {0, 1, 2},
             {{0.2 * 0.5, 0.2 * 0.2, 0.2 * 0.3}, {0.3 * 0.5, 0.3 * 0.2, 0.3 * 0.3}, {0.5 * 0.5, 0.5 * 0.2, 0.5 * 0.3}},
             0.0},
            {"deterministic", {0, 1, 2}, {0, 1, 2}, {{1.0 / 3, 0, 0}, {0, 1.0 / 3, 0}, {0, 0, 1.0 / 3}}, 1.0},
            {"2x2", {0, 1}, {0, 1}, {{0.4, 0.1}, {0.1, 0.4}}, -1.0},
            {"y=x^2", {-1, 0, 1}, {0, 1}, {{0, 0.3}, {0.4, 0}, {0, 0.3}}, 1.0},
            {"3x4", {0, 1, 2}, {0, 1, 2, 3},
             {{0.10, 0.05, 0.10, 0.05}, {0.02, 0.20, 0.03, 0.05}, {0.15, 0.02, 0.03, 0.20}}, -1.0},
        };
        std::mt19937_64 rng(97);
        for (const auto& f : fixtures) {
            DiscreteJoint j{f.xs, f.ys, {}};
            for (const auto& row : f.p) j.prob.insert(j.prob.end(), row.begin(), row.end());
            const double pop = xi_population_discrete(j);
            const double brute = oracle::xi_population_bruteforce(f.ys, f.p);
            o.check(std::abs(pop - brute) < 1e-12, std::string(f.name) + " summation==oracle");
            if (f.exact >= 0.0) o.check(std::abs(pop - f.exact) < 1e-12, std::string(f.name) + " exact target");
            std::vector<double> x, y;
            oracle::sample_joint(f.xs, f.ys, f.p, 20000, rng, x, y);
            const double mc = xi_score(x, y, rng());
            o.check(std::abs(mc - pop) <= 0.02,
                    std::string(f.name) + fmt(" pop=%.4f mc=%.4f", pop, mc));
        }
    });

    criterion("C3", "binary identity on 100 random samples within 1e-10", 1.0, [](Outcome& o) {
        std::mt19937_64 rng(31);
        std::normal_distribution<double> z;
        std::uniform_real_distribution<double> rate(0.1, 0.9);
        double worst = 0.0;
        for (int s = 0; s < 100; ++s) {
            const std::size_t n = 5 + static_cast<std::size_t>(s) * 2;
            std::bernoulli_distribution coin(rate(rng));
            std::vector<double> x(n), y(n);
            for (std::size_t i = 0; i < n; ++i) {
                y[i] = coin(rng);
                x[i] = 2.0 * z(rng) + y[i];
            }
            y[0] = 0.0;
            y[n - 1] = 1.0;
            const auto parts = point_biserial_parts(x, y);
            const double rpb = point_biserial(x, y);
            const double rhs = (parts.mean1 - parts.mean0) * (parts.mean1 - parts.mean0) / (rpb * rpb);
            worst = std::max(worst, std::abs(xi_binary_score(x, y) - rhs) / std::max(1.0, std::abs(rhs)));
        }
        o.check(worst <= 1e-10, fmt("max relative diff %.2e", worst));
    });

    criterion("C4", "M1 n=400 p=200 R=100 d=66", 300.0, [](Outcome& o) {
        const auto r = run_simulation(table_config(ModelId::M1));
        print_table(r);
        const auto& xi = outcome(r, Method::xi).proportions;
        for (std::size_t a = 0; a < 4; ++a) o.check(xi[a] >= 0.98, fmt("xi X%.0f=%.2f>=0.98", a + 1.0, xi[a]));
        const double pe = outcome(r, Method::pearson).proportions[2];
        const double dc = outcome(r, Method::dcor).proportions[2];
        o.check(pe <= 0.10, fmt("pearson X3=%.2f<=0.10", pe));
        o.check(dc <= 0.40, fmt("dcor X3=%.2f<=0.40", dc));
    });

    criterion("C5", "M4 (binary) n=400 p=200 R=100", 300.0, [](Outcome& o) {
        const auto r = run_simulation(table_config(ModelId::M4));
        print_table(r);
        const auto& xi = outcome(r, Method::xi).proportions;
        for (std::size_t a = 0; a < 3; ++a) o.check(xi[a] >= 0.90, fmt("xi X%.0f=%.2f>=0.90", a + 1.0, xi[a]));
        const double dc = outcome(r, Method::dcor).proportions[1];
        o.check(dc <= 0.30, fmt("dcor X2=%.2f<=0.30", dc));
    });

    criterion("C6", "M3 (oscillatory, Cauchy noise) n=400 p=200 R=100", 300.0, [](Outcome& o) {
        const auto r = run_simulation(table_config(ModelId::M3));
        print_table(r);
        const auto& xi = outcome(r, Method::xi).proportions;
        const auto& pe = outcome(r, Method::pearson).proportions;
        for (std::size_t a = 0; a < 4; ++a) o.check(xi[a] >= 0.85, fmt("xi X%.0f=%.2f>=0.85", a + 1.0, xi[a]));
        for (std::size_t a = 0; a < 4; ++a) o.check(pe[a] <= 0.05, fmt("pearson X%.0f=%.2f<=0.05", a + 1.0, pe[a]));
    });

    criterion("C7", "concentration on all-noise design, delta=0.15", 120.0, [](Outcome& o) {
        ConcentrationConfig cfg;
        cfg.model = ModelSpec::make(ModelId::Null);
        cfg.n_grid = {100, 200, 400, 800};
        cfg.p = 200;
        cfg.replications = 200;
        cfg.delta = 0.15;
        cfg.seed = 4242;
        cfg.threads = 1;
        const auto r = concentration_experiment(cfg);
        for (std::size_t g = 0; g < r.points.size(); ++g) {
            o.check(true, fmt("n=%.0f freq=%.3f", static_cast<double>(r.points[g].n), r.points[g].frequency));
            if (g > 0)
                o.check(r.points[g].frequency <= r.points[g - 1].frequency,
                        fmt("non-increasing at n=%.0f", static_cast<double>(r.points[g].n)));
        }
        o.check(r.points.back().frequency <= 0.05, "freq at n=800 <= 0.05");
    });

    criterion("C8", "F-measure consistency with reported precision/recall", 1.0, [](Outcome& o) {
        const double f1 = f_measure(0.950, 0.950);
        const double f2 = f_measure(0.850, 0.944);
        o.check(std::abs(f1 - 0.950) <= 0.001, fmt("F(0.950,0.950)=%.4f", f1));
        o.check(std::abs(f2 - 0.895) <= 0.001, fmt("F(0.850,0.944)=%.4f", f2));
    });

    criterion("C9", "property suites, 1000 randomized cases each", 30.0, [](Outcome& o) {
        constexpr std::size_t cases = 1000;
        o.check(props::monotone_invariance(cases, 101) == 0, "monotone invariance");
        o.check(props::pair_permutation_invariance(cases, 102) == 0, "pair permutation invariance");
        o.check(props::selection_containment(cases, 103) == 0, "top-d containment and order invariance");
        o.check(props::threshold_monotonicity(cases, 104) == 0, "threshold monotonicity");
        o.check(props::column_order_equivariance(cases, 105) == 0, "column order equivariance");
        o.check(props::seed_thread_determinism(cases, 106) == 0, "seed and thread-count determinism");
    });

    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
