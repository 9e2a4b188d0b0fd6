#include "xisis/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "xisis/errors.hpp"
#include "xisis/rankcorr.hpp"

namespace xisis {

namespace {

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

bool is_constant(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double e) { return e == v.front(); });
}

// Row means of |v_i - v_j| and their grand mean.
struct DistanceMargins {
    std::vector<double> row;
    double grand = 0.0;
};

DistanceMargins distance_margins(std::span<const double> v) {
    const std::size_t n = v.size();
    DistanceMargins m;
    m.row.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += std::abs(v[i] - v[j]);
        m.row[i] = s / static_cast<double>(n);
    }
    m.grand = mean_of(m.row);
    return m;
}

}  // namespace

double pearson_score(std::span<const double> x, std::span<const double> y) {
    validate_sample(x, y);
    if (is_constant(x) || is_constant(y))
        throw DegenerateInput("Pearson correlation needs non-constant x and y");
    const double mx = mean_of(x);
    const double my = mean_of(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    return std::min(1.0, std::abs(sxy) / std::sqrt(sxx * syy));
}

double dcor_score(std::span<const double> x, std::span<const double> y) {
    validate_sample(x, y);
    if (is_constant(x) || is_constant(y))
        throw DegenerateInput("distance correlation needs non-constant x and y");

    const std::size_t n = x.size();
    const auto mx = distance_margins(x);
    const auto my = distance_margins(y);

    // Centred entries A_ij = a_ij - a_i. - a_.j + a_.., formed on the fly.
    double cross = 0.0, xx = 0.0, yy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ox = mx.grand - mx.row[i];
        const double oy = my.grand - my.row[i];
        for (std::size_t j = 0; j < n; ++j) {
            const double a = std::abs(x[i] - x[j]) - mx.row[j] + ox;
            const double b = std::abs(y[i] - y[j]) - my.row[j] + oy;
            cross += a * b;
            xx += a * a;
            yy += b * b;
        }
    }
    const double var_product = xx * yy;
    if (!(var_product > 0.0)) return 0.0;
    const double r2 = cross / std::sqrt(var_product);
    return std::sqrt(std::clamp(r2, 0.0, 1.0));
}

PointBiserialParts point_biserial_parts(std::span<const double> x, std::span<const double> y) {
    validate_sample(x, y);
    double sum1 = 0.0, sum0 = 0.0;
    std::size_t n1 = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] == 1.0) {
            sum1 += x[i];
            ++n1;
        } else if (y[i] == 0.0) {
            sum0 += x[i];
        } else {
            throw InvalidInput("binary response must take values in {0,1}");
        }
    }
    const std::size_t n = x.size();
    if (n1 == 0 || n1 == n) throw InvalidInput("binary response needs both classes present");

    const double mean = mean_of(x);
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);

    PointBiserialParts parts;
    parts.mean1 = sum1 / static_cast<double>(n1);
    parts.mean0 = sum0 / static_cast<double>(n - n1);
    parts.s_x = std::sqrt(ss / static_cast<double>(n - 1));
    parts.p1 = static_cast<double>(n1) / static_cast<double>(n);
    parts.p0 = static_cast<double>(n - n1) / static_cast<double>(n);
    return parts;
}

double point_biserial(std::span<const double> x, std::span<const double> y) {
    const auto parts = point_biserial_parts(x, y);
    if (is_constant(x)) throw DegenerateInput("point-biserial correlation needs non-constant x");
    const auto n = static_cast<double>(x.size());
    return (parts.mean1 - parts.mean0) / parts.s_x * std::sqrt(n * parts.p0 * parts.p1 / (n - 1.0));
}

}  // namespace xisis
