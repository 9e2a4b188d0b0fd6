#pragma once

#include <span>

namespace xisis {

/// Absolute sample Pearson correlation, the marginal utility of FanLv-SIS.
/// Throws DegenerateInput for constant x or y.
double pearson_score(std::span<const double> x, std::span<const double> y);

/// Empirical distance correlation (biased V-statistic, double-centred
/// distances) for scalar x and y. Result in [0, 1] and symmetric in its
/// arguments. O(n^2) time and O(n) memory.
double dcor_score(std::span<const double> x, std::span<const double> y);

/// Ingredients of the point-biserial coefficient.
struct PointBiserialParts {
    double mean1 = 0.0;  ///< mean of x over y == 1
    double mean0 = 0.0;  ///< mean of x over y == 0
    double s_x = 0.0;    ///< sample standard deviation of x, divisor n - 1
    double p0 = 0.0;     ///< n0 / n
    double p1 = 0.0;     ///< n1 / n
};

PointBiserialParts point_biserial_parts(std::span<const double> x, std::span<const double> y);

/// r_pb = (mean1 - mean0) / s_x * sqrt(n p0 p1 / (n - 1)). y must be {0,1}
/// with both classes present and x must not be constant.
double point_biserial(std::span<const double> x, std::span<const double> y);

}  // namespace xisis
