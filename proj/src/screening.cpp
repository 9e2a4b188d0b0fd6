#include "xisis/screening.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "xisis/baselines.hpp"
#include "xisis/errors.hpp"
#include "xisis/parallel.hpp"
#include "xisis/rankcorr.hpp"
#include "xisis/seeding.hpp"

namespace xisis {

bool is_binary_response(std::span<const double> y) {
    bool has0 = false, has1 = false;
    for (double v : y) {
        if (v == 0.0)
            has0 = true;
        else if (v == 1.0)
            has1 = true;
        else
            return false;
    }
    return has0 && has1;
}

DataMatrix::DataMatrix(Matrix x, std::vector<double> y, ResponseKind kind,
                       std::vector<std::string> names)
    : x_(std::move(x)), y_(std::move(y)), kind_(kind), names_(std::move(names)) {
    if (x_.rows() < 2) throw InvalidInput("data needs at least two observations");
    if (x_.cols() < 1) throw InvalidInput("data needs at least one predictor");
    if (y_.size() != x_.rows())
        throw InvalidInput("response length " + std::to_string(y_.size()) +
                           " does not match " + std::to_string(x_.rows()) + " rows");
    for (std::size_t k = 0; k < x_.cols(); ++k)
        for (std::size_t i = 0; i < x_.rows(); ++i)
            if (!std::isfinite(x_(i, k)))
                throw InvalidInput("non-finite predictor value at row " + std::to_string(i) +
                                   ", column " + std::to_string(k));
    for (std::size_t i = 0; i < y_.size(); ++i)
        if (!std::isfinite(y_[i]))
            throw InvalidInput("non-finite response value at row " + std::to_string(i));
    if (kind_ == ResponseKind::binary && !is_binary_response(y_))
        throw InvalidInput("binary response must contain exactly the values 0 and 1");
    if (names_.empty()) {
        names_.reserve(x_.cols());
        for (std::size_t k = 0; k < x_.cols(); ++k) names_.push_back("X" + std::to_string(k + 1));
    }
    if (names_.size() != x_.cols()) throw InvalidInput("one name per predictor column required");
}

std::string_view to_string(Method m) {
    switch (m) {
        case Method::xi: return "xi";
        case Method::pearson: return "pearson";
        case Method::dcor: return "dcor";
        case Method::xi_binary: return "xi-binary";
    }
    return "?";
}

Method parse_method(std::string_view name) {
    if (name == "xi") return Method::xi;
    if (name == "pearson") return Method::pearson;
    if (name == "dcor") return Method::dcor;
    if (name == "xi-binary" || name == "xi_binary") return Method::xi_binary;
    throw InvalidInput("unknown method '" + std::string(name) + "'");
}

ScoreVector score_all(const DataMatrix& data, Method method, std::uint64_t tie_seed,
                      unsigned threads) {
    const auto y = data.response();
    if (std::all_of(y.begin(), y.end(), [&](double v) { return v == y.front(); }))
        throw DegenerateResponse("response is constant");
    if (method == Method::xi_binary && data.kind() != ResponseKind::binary)
        throw InvalidInput("method xi-binary requires a binary response");

    std::optional<ResponseRanks> ranks;
    if (method == Method::xi) ranks.emplace(y);

    ScoreVector out;
    out.method = method;
    out.tie_seed = tie_seed;
    out.scores.assign(data.p(), degenerate_score);
    std::vector<char> constant(data.p(), 0);

    parallel_for(data.p(), threads, [&](std::size_t k) {
        const auto x = data.column(k);
        if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); })) {
            constant[k] = 1;
            return;
        }
        switch (method) {
            case Method::xi: out.scores[k] = xi_score(x, *ranks, derive_seed(tie_seed, k)); break;
            case Method::pearson: out.scores[k] = pearson_score(x, y); break;
            case Method::dcor: out.scores[k] = dcor_score(x, y); break;
            case Method::xi_binary: out.scores[k] = xi_binary_score(x, y); break;
        }
    });

    for (std::size_t k = 0; k < data.p(); ++k) {
        if (!constant[k]) continue;
        out.degenerate.push_back(k);
        out.warnings.push_back("column " + std::to_string(k) + " (" + data.names()[k] +
                               ") is constant; ranked last");
    }
    return out;
}

std::vector<std::size_t> rank_descending(std::span<const double> scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    return order;
}

ScreeningResult top_d(const ScoreVector& scores, std::size_t d) {
    if (d < 1) throw InvalidInput("d must be at least 1");
    ScreeningResult res;
    res.ranking = rank_descending(scores.scores);
    const std::size_t keep = std::min(d, res.ranking.size());
    res.selected.assign(res.ranking.begin(), res.ranking.begin() + static_cast<std::ptrdiff_t>(keep));
    std::sort(res.selected.begin(), res.selected.end());
    res.selector = TopD{d};
    return res;
}

ScreeningResult threshold_select(const ScoreVector& scores, double c, double kappa, std::size_t n) {
    if (!(c > 0.0) || !std::isfinite(c)) throw InvalidInput("threshold constant c must be positive");
    if (!(kappa > 0.0 && kappa < 0.5)) throw InvalidInput("kappa must lie in (0, 1/2)");
    if (n < 1) throw InvalidInput("sample size must be positive");
    const double cutoff = c * std::pow(static_cast<double>(n), -kappa);

    ScreeningResult res;
    res.ranking = rank_descending(scores.scores);
    for (std::size_t k = 0; k < scores.scores.size(); ++k)
        if (scores.scores[k] >= cutoff) res.selected.push_back(k);
    res.selector = Threshold{c, kappa, n, cutoff};
    return res;
}

std::size_t default_d(std::size_t n) {
    if (n < 2) throw InvalidInput("default d needs n >= 2");
    const auto d = static_cast<std::size_t>(std::floor(static_cast<double>(n) / std::log(static_cast<double>(n))));
    return std::max<std::size_t>(d, 1);
}

}  // namespace xisis
