#pragma once

// Randomized property checks shared by the unit suite and the acceptance
// binary. Each returns the number of failing cases out of `cases`.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <random>
#include <vector>

#include "xisis/rankcorr.hpp"
#include "xisis/screening.hpp"

namespace props {

using Rng = std::mt19937_64;

inline std::vector<double> int_values(Rng& rng, std::size_t n, int lo, int hi) {
    std::uniform_int_distribution<int> u(lo, hi);
    std::vector<double> v(n);
    for (auto& e : v) e = u(rng);
    return v;
}

inline std::vector<double> normals(Rng& rng, std::size_t n) {
    std::normal_distribution<double> z;
    std::vector<double> v(n);
    for (auto& e : v) e = z(rng);
    return v;
}

inline std::size_t size_between(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline void make_nonconstant(std::vector<double>& y) {
    if (std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; })) y[0] += 1.0;
}

/// xi_score(g(x), h(y)) == xi_score(x, y) bit-for-bit for strictly increasing
/// g and h, on integer data with plenty of ties in both variables.
inline std::size_t monotone_invariance(std::size_t cases, std::uint64_t seed) {
    Rng rng(seed);
    std::size_t failures = 0;
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t n = size_between(rng, 2, 60);
        auto x = int_values(rng, n, -15, 15);
        auto y = int_values(rng, n, -6, 6);
        make_nonconstant(y);
        std::vector<double> gx(n), hy(n);
        for (std::size_t i = 0; i < n; ++i) {
            gx[i] = x[i] * x[i] * x[i] + 3.0 * x[i];
            hy[i] = std::exp(0.5 * y[i]);
        }
        const std::uint64_t tie_seed = rng();
        const double base = xisis::xi_score(x, y, tie_seed);
        if (xisis::xi_score(gx, y, tie_seed) != base || xisis::xi_score(x, hy, tie_seed) != base) ++failures;
    }
    return failures;
}

/// Jointly permuting (x_i, y_i) leaves xi unchanged when x has no ties.
inline std::size_t pair_permutation_invariance(std::size_t cases, std::uint64_t seed) {
    Rng rng(seed);
    std::size_t failures = 0;
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t n = size_between(rng, 2, 80);
        const auto x = normals(rng, n);
        auto y = c % 2 ? int_values(rng, n, 0, 3) : normals(rng, n);
        make_nonconstant(y);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<double> px(n), py(n);
        for (std::size_t i = 0; i < n; ++i) {
            px[i] = x[perm[i]];
            py[i] = y[perm[i]];
        }
        if (xisis::xi_score(px, py, rng()) != xisis::xi_score(x, y, rng())) ++failures;
    }
    return failures;
}

/// d1 <= d2 implies top_d(d1) is contained in top_d(d2); ranking and
/// selection are unchanged by a strictly increasing transform of the scores.
inline std::size_t selection_containment(std::size_t cases, std::uint64_t seed) {
    Rng rng(seed);
    std::size_t failures = 0;
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t p = size_between(rng, 1, 50);
        xisis::ScoreVector s;
        s.scores = int_values(rng, p, -5, 5);  // many tied scores
        for (auto& v : s.scores) v /= 5.0;
        const std::size_t d1 = size_between(rng, 1, p + 3);
        const std::size_t d2 = size_between(rng, d1, p + 6);
        const auto a = xisis::top_d(s, d1);
        const auto b = xisis::top_d(s, d2);
        bool ok = std::includes(b.selected.begin(), b.selected.end(), a.selected.begin(), a.selected.end());
        ok = ok && a.selected.size() == std::min(d1, p);

        xisis::ScoreVector t = s;
        for (auto& v : t.scores) v = std::atan(3.0 * v) + v;
        const auto at = xisis::top_d(t, d1);
        ok = ok && at.ranking == a.ranking && at.selected == a.selected;
        if (!ok) ++failures;
    }
    return failures;
}

/// c1 <= c2 implies threshold_select(c2) is contained in threshold_select(c1).
inline std::size_t threshold_monotonicity(std::size_t cases, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> u(0.01, 3.0), k(0.01, 0.49);
    std::size_t failures = 0;
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t p = size_between(rng, 1, 40);
        xisis::ScoreVector s;
        s.scores = normals(rng, p);
        double c1 = u(rng), c2 = u(rng);
        if (c1 > c2) std::swap(c1, c2);
        const double kappa = k(rng);
        const std::size_t n = size_between(rng, 2, 1000);
        const auto lo = xisis::threshold_select(s, c1, kappa, n);
        const auto hi = xisis::threshold_select(s, c2, kappa, n);
        if (!std::includes(lo.selected.begin(), lo.selected.end(), hi.selected.begin(), hi.selected.end()))
            ++failures;
    }
    return failures;
}

/// Permuting tie-free predictor columns permutes the scores identically.
inline std::size_t column_order_equivariance(std::size_t cases, std::uint64_t seed) {
    Rng rng(seed);
    std::size_t failures = 0;
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t n = size_between(rng, 3, 40);
        const std::size_t p = size_between(rng, 1, 8);
        xisis::Matrix x(n, p);
        for (std::size_t k = 0; k < p; ++k) {
            const auto col = normals(rng, n);
            std::copy(col.begin(), col.end(), x.column(k).begin());
        }
        auto y = int_values(rng, n, 0, 4);
        make_nonconstant(y);
        std::vector<std::size_t> perm(p);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        xisis::Matrix xp(n, p);
        for (std::size_t k = 0; k < p; ++k) {
            const auto src = x.column(perm[k]);
            std::copy(src.begin(), src.end(), xp.column(k).begin());
        }
        const xisis::DataMatrix a(x, y, xisis::ResponseKind::continuous);
        const xisis::DataMatrix b(xp, y, xisis::ResponseKind::continuous);
        const auto sa = xisis::score_all(a, xisis::Method::xi, c);
        const auto sb = xisis::score_all(b, xisis::Method::xi, c);
        bool ok = true;
        for (std::size_t k = 0; k < p; ++k) ok = ok && sb.scores[k] == sa.scores[perm[k]];
        if (!ok) ++failures;
    }
    return failures;
}

/// Same seed gives identical scores for 1 and several workers, on tie-heavy data.
inline std::size_t seed_thread_determinism(std::size_t cases, std::uint64_t seed) {
    Rng rng(seed);
    std::size_t failures = 0;
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t n = size_between(rng, 2, 30);
        const std::size_t p = size_between(rng, 1, 12);
        xisis::Matrix x(n, p);
        for (std::size_t k = 0; k < p; ++k) {
            const auto col = int_values(rng, n, 0, 3);
            std::copy(col.begin(), col.end(), x.column(k).begin());
        }
        auto y = int_values(rng, n, 0, 2);
        make_nonconstant(y);
        const xisis::DataMatrix data(x, y, xisis::ResponseKind::continuous);
        const std::uint64_t tie_seed = rng();
        const auto one = xisis::score_all(data, xisis::Method::xi, tie_seed, 1);
        const auto again = xisis::score_all(data, xisis::Method::xi, tie_seed, 1);
        const auto many = xisis::score_all(data, xisis::Method::xi, tie_seed, 4);
        if (one.scores != again.scores || one.scores != many.scores) ++failures;
    }
    return failures;
}

/// xi_score stays in [-1, 1].
inline std::size_t xi_range(std::size_t cases, std::uint64_t seed) {
    Rng rng(seed);
    std::size_t failures = 0;
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t n = size_between(rng, 2, 50);
        const auto x = c % 3 ? normals(rng, n) : int_values(rng, n, 0, 2);
        auto y = c % 2 ? normals(rng, n) : int_values(rng, n, 0, 1);
        make_nonconstant(y);
        const double v = xisis::xi_score(x, y, rng());
        if (!(v >= -1.0 && v <= 1.0)) ++failures;
    }
    return failures;
}

}  // namespace props
