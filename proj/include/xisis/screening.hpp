#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "xisis/matrix.hpp"

namespace xisis {

enum class ResponseKind { continuous, binary };

/// True iff the distinct values of y are exactly {0, 1}.
bool is_binary_response(std::span<const double> y);

/// Predictor matrix (n x p), response and column names.
///
/// Invariants, checked on construction: n >= 2, p >= 1, every entry finite,
/// one name per column, and a binary response holds both 0 and 1 and nothing
/// else.
class DataMatrix {
public:
    DataMatrix(Matrix x, std::vector<double> y, ResponseKind kind,
               std::vector<std::string> names = {});

    std::size_t n() const noexcept { return x_.rows(); }
    std::size_t p() const noexcept { return x_.cols(); }
    const Matrix& x() const noexcept { return x_; }
    std::span<const double> column(std::size_t k) const { return x_.column(k); }
    std::span<const double> response() const noexcept { return y_; }
    ResponseKind kind() const noexcept { return kind_; }
    const std::vector<std::string>& names() const noexcept { return names_; }

private:
    Matrix x_;
    std::vector<double> y_;
    ResponseKind kind_;
    std::vector<std::string> names_;
};

enum class Method { xi, pearson, dcor, xi_binary };

std::string_view to_string(Method m);
/// Accepts "xi", "pearson", "dcor", "xi-binary" (and "xi_binary").
Method parse_method(std::string_view name);

/// Score recorded for a column whose marginal score is undefined (constant
/// column). Finite, and below every real score, so it ranks last.
inline constexpr double degenerate_score = std::numeric_limits<double>::lowest();

struct ScoreVector {
    std::vector<double> scores;
    Method method = Method::xi;
    std::uint64_t tie_seed = 0;
    /// Columns that received `degenerate_score`, ascending.
    std::vector<std::size_t> degenerate;
    std::vector<std::string> warnings;
};

/// Scores every column of `data` against its response. Column k uses the tie
/// seed derive_seed(tie_seed, k), so the output is bit-identical for any
/// `threads`. Throws DegenerateResponse for a constant response and
/// InvalidInput when `method` needs a binary response and the data has none.
ScoreVector score_all(const DataMatrix& data, Method method, std::uint64_t tie_seed,
                      unsigned threads = 1);

struct TopD {
    std::size_t d = 0;
};

struct Threshold {
    double c = 0.0;
    double kappa = 0.0;
    std::size_t n = 0;
    double cutoff = 0.0;  ///< c * n^(-kappa)
};

using Selector = std::variant<TopD, Threshold>;

struct ScreeningResult {
    /// Predictor indices (0-based) by descending score, lower index first on ties.
    std::vector<std::size_t> ranking;
    /// Selected predictor indices, ascending.
    std::vector<std::size_t> selected;
    Selector selector;
};

std::vector<std::size_t> rank_descending(std::span<const double> scores);

/// Keeps the min(d, p) best-ranked predictors. Throws InvalidInput for d < 1.
ScreeningResult top_d(const ScoreVector& scores, std::size_t d);

/// Keeps {k : scores[k] >= c n^(-kappa)}; may be empty. Requires c > 0 and
/// 0 < kappa < 1/2.
ScreeningResult threshold_select(const ScoreVector& scores, double c, double kappa, std::size_t n);

/// floor(n / ln n), at least 1. Throws InvalidInput for n < 2.
std::size_t default_d(std::size_t n);

}  // namespace xisis
