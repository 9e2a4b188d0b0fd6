#include "xisis/rankcorr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include "xisis/errors.hpp"
#include "xisis/seeding.hpp"

namespace xisis {

namespace {

void require_finite(std::span<const double> v, const char* what) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i]))
            throw InvalidInput(std::string(what) + " has a non-finite entry at position " +
                               std::to_string(i));
    }
}

void require_binary(std::span<const double> y, std::size_t& n1) {
    n1 = 0;
    for (double v : y) {
        if (v == 1.0)
            ++n1;
        else if (v != 0.0)
            throw InvalidInput("binary response must take values in {0,1}");
    }
    if (n1 == 0 || n1 == y.size())
        throw InvalidInput("binary response needs both classes present");
}

}  // namespace

void validate_sample(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw InvalidInput("x and y lengths differ (" + std::to_string(x.size()) + " vs " +
                           std::to_string(y.size()) + ")");
    if (x.size() < 2) throw InvalidInput("sample needs at least two observations");
    if (x.size() > max_xi_sample_size) throw InvalidInput("sample too large for exact rank sums");
    require_finite(x, "x");
    require_finite(y, "y");
}

std::vector<std::size_t> order_by_x(std::span<const double> x, std::uint64_t tie_seed) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return x[a] < x[b] || (x[a] == x[b] && a < b);
    });

    // Shuffle each run of equal x values. The engine is only built if a tie exists.
    std::optional<Engine> rng;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i + 1;
        while (j < order.size() && x[order[j]] == x[order[i]]) ++j;
        if (j - i > 1) {
            if (!rng) rng.emplace(make_engine(derive_seed(tie_seed, 0, Stream::ties)));
            std::shuffle(order.begin() + static_cast<std::ptrdiff_t>(i),
                         order.begin() + static_cast<std::ptrdiff_t>(j), *rng);
        }
        i = j;
    }
    return order;
}

ResponseRanks::ResponseRanks(std::span<const double> y) {
    const std::size_t n = y.size();
    if (n < 2) throw InvalidInput("sample needs at least two observations");
    if (n > max_xi_sample_size) throw InvalidInput("sample too large for exact rank sums");
    require_finite(y, "y");

    std::vector<double> sorted(y.begin(), y.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() == sorted.back())
        throw DegenerateResponse("response is constant; the xi coefficient is undefined");

    r_.resize(n);
    l_.resize(n);
    const auto nn = static_cast<std::int64_t>(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto below_or_equal = std::upper_bound(sorted.begin(), sorted.end(), y[i]) - sorted.begin();
        auto below = std::lower_bound(sorted.begin(), sorted.end(), y[i]) - sorted.begin();
        r_[i] = below_or_equal;
        l_[i] = nn - below;
        denominator_ += l_[i] * (nn - l_[i]);
    }
}

RankCounts rank_counts(std::span<const double> x, std::span<const double> y,
                       std::uint64_t tie_seed) {
    validate_sample(x, y);
    const std::size_t n = y.size();
    std::vector<double> sorted(y.begin(), y.end());
    std::sort(sorted.begin(), sorted.end());

    RankCounts out;
    out.r.reserve(n);
    out.l.reserve(n);
    for (std::size_t idx : order_by_x(x, tie_seed)) {
        out.r.push_back(std::upper_bound(sorted.begin(), sorted.end(), y[idx]) - sorted.begin());
        out.l.push_back(static_cast<std::int64_t>(n) -
                        (std::lower_bound(sorted.begin(), sorted.end(), y[idx]) - sorted.begin()));
    }
    return out;
}

double xi_score(std::span<const double> x, std::span<const double> y, std::uint64_t tie_seed) {
    validate_sample(x, y);
    return xi_score(x, ResponseRanks(y), tie_seed);
}

double xi_score(std::span<const double> x, const ResponseRanks& y, std::uint64_t tie_seed) {
    if (x.size() != y.size())
        throw InvalidInput("x and y lengths differ (" + std::to_string(x.size()) + " vs " +
                           std::to_string(y.size()) + ")");
    require_finite(x, "x");

    const auto order = order_by_x(x, tie_seed);
    const auto& r = y.r();
    std::int64_t jumps = 0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const std::int64_t diff = r[order[i + 1]] - r[order[i]];
        jumps += diff < 0 ? -diff : diff;
    }
    const auto n = static_cast<std::int64_t>(order.size());
    return 1.0 - static_cast<double>(n * jumps) / static_cast<double>(2 * y.denominator());
}

double xi_population_discrete(const DiscreteJoint& joint) {
    const std::size_t na = joint.xs.size();
    const std::size_t nb = joint.ys.size();
    if (na == 0 || nb == 0 || joint.prob.size() != na * nb)
        throw InvalidInput("joint probability table does not match the support grid");

    auto distinct = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return std::adjacent_find(v.begin(), v.end()) == v.end();
    };
    if (!distinct(joint.xs) || !distinct(joint.ys))
        throw InvalidInput("support points must be distinct");

    double total = 0.0;
    for (double p : joint.prob) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidInput("probabilities must be non-negative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) throw InvalidInput("probabilities must sum to 1");

    std::vector<double> px(na, 0.0);
    std::vector<double> qy(nb, 0.0);
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b) {
            px[a] += joint.p(a, b);
            qy[b] += joint.p(a, b);
        }

    double numerator = 0.0;
    double denominator = 0.0;
    for (std::size_t t = 0; t < nb; ++t) {
        if (qy[t] == 0.0) continue;
        const double level = joint.ys[t];
        // tail = P(Y >= level), cond_sq = E[P(Y >= level | X)^2]
        double tail = 0.0;
        double cond_sq = 0.0;
        for (std::size_t a = 0; a < na; ++a) {
            if (px[a] == 0.0) continue;
            double joint_tail = 0.0;
            for (std::size_t b = 0; b < nb; ++b)
                if (joint.ys[b] >= level) joint_tail += joint.p(a, b);
            tail += joint_tail;
            cond_sq += joint_tail * joint_tail / px[a];
        }
        numerator += qy[t] * (cond_sq - tail * tail);
        denominator += qy[t] * tail * (1.0 - tail);
    }
    if (!(denominator > 1e-15))
        throw DegenerateResponse("marginal law of Y is degenerate");
    return std::clamp(numerator / denominator, 0.0, 1.0);
}

double xi_binary_score(std::span<const double> x, std::span<const double> y) {
    validate_sample(x, y);
    std::size_t n1 = 0;
    require_binary(y, n1);
    const auto n = static_cast<double>(x.size());
    const double n0 = n - static_cast<double>(n1);

    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return (ss / n) / (static_cast<double>(n1) * n0 / (n * n));
}

}  // namespace xisis
