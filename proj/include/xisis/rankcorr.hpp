#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace xisis {

/// Rank counts of the response after reordering the pairs by ascending x.
/// r[i] = #{j : y(j) <= y(i)} and l[i] = #{j : y(j) >= y(i)}.
struct RankCounts {
    std::vector<std::int64_t> r;
    std::vector<std::int64_t> l;
};

/// Largest sample size for which the integer sums in the estimator are
/// guaranteed not to overflow 64 bits.
inline constexpr std::size_t max_xi_sample_size = 2'000'000;

/// Throws InvalidInput unless x and y have equal length n >= 2 and are finite.
void validate_sample(std::span<const double> x, std::span<const double> y);

/// Permutation sorting x ascending. Ties in x are ordered uniformly at random
/// from `tie_seed`; the result is a pure function of (x, tie_seed).
std::vector<std::size_t> order_by_x(std::span<const double> x, std::uint64_t tie_seed);

/// Response-side quantities of the xi estimator. They do not depend on the
/// predictor, so a screening pass computes them once and reuses them for every
/// column.
class ResponseRanks {
public:
    /// Throws InvalidInput for n < 2 or non-finite entries, DegenerateResponse
    /// for constant y.
    explicit ResponseRanks(std::span<const double> y);

    std::size_t size() const noexcept { return r_.size(); }
    /// r and l indexed in the original order of y.
    const std::vector<std::int64_t>& r() const noexcept { return r_; }
    const std::vector<std::int64_t>& l() const noexcept { return l_; }
    /// sum_i l_i (n - l_i), exact.
    std::int64_t denominator() const noexcept { return denominator_; }

private:
    std::vector<std::int64_t> r_;
    std::vector<std::int64_t> l_;
    std::int64_t denominator_ = 0;
};

/// r and l of y reordered by ascending x (ties in x broken from tie_seed).
RankCounts rank_counts(std::span<const double> x, std::span<const double> y,
                       std::uint64_t tie_seed);

/// Rank-based xi estimator
///   1 - n sum_{i<n} |r_{i+1} - r_i| / (2 sum_i l_i (n - l_i)),
/// with both sums accumulated in integers. Not symmetric in (x, y).
/// Throws DegenerateResponse when y is constant.
double xi_score(std::span<const double> x, std::span<const double> y, std::uint64_t tie_seed);

/// Same estimator against precomputed response ranks.
double xi_score(std::span<const double> x, const ResponseRanks& y, std::uint64_t tie_seed);

/// Joint law on a finite grid: P(X = xs[a], Y = ys[b]) = prob[a * ys.size() + b].
struct DiscreteJoint {
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> prob;

    double p(std::size_t a, std::size_t b) const { return prob[a * ys.size() + b]; }
};

/// Population coefficient
///   int var[E{I(Y >= t) | X}] dmu(t) / int var{I(Y >= t)} dmu(t)
/// evaluated exactly; mu is the marginal law of Y, so both integrals are
/// probability-weighted sums over the y support. Result in [0, 1].
double xi_population_discrete(const DiscreteJoint& joint);

/// Binary-response statistic  [sum (x_i - mean)^2 / n] / [n1 n0 / n^2],
/// implemented as printed. It is not bounded by 1; only its ordering across
/// predictors is meaningful for screening. y must be {0,1} with both classes.
double xi_binary_score(std::span<const double> x, std::span<const double> y);

}  // namespace xisis
