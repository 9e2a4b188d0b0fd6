#include "xisis/evalkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "xisis/errors.hpp"
#include "xisis/seeding.hpp"

namespace xisis {

std::vector<std::size_t> FoldPlan::fold_sizes() const {
    std::vector<std::size_t> sizes(folds, 0);
    for (auto a : assignments) ++sizes[a - 1];
    return sizes;
}

std::vector<std::size_t> FoldPlan::held_out(std::size_t k) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < assignments.size(); ++i)
        if (assignments[i] == k) idx.push_back(i);
    return idx;
}

FoldPlan cv_folds(std::size_t n, std::size_t folds, std::uint64_t seed) {
    if (folds < 2 || folds > n)
        throw InvalidInput("fold count " + std::to_string(folds) + " must lie in [2, " +
                           std::to_string(n) + "]");
    FoldPlan plan;
    plan.folds = folds;
    plan.assignments.resize(n);
    for (std::size_t i = 0; i < n; ++i) plan.assignments[i] = i % folds + 1;
    auto rng = make_engine(derive_seed(seed, 0, Stream::folds));
    std::shuffle(plan.assignments.begin(), plan.assignments.end(), rng);
    return plan;
}

double cv_rmse(std::span<const double> y_true, std::span<const double> y_pred) {
    if (y_true.size() != y_pred.size())
        throw InvalidInput("truth and prediction lengths differ");
    if (y_true.empty()) throw InvalidInput("no predictions to evaluate");
    double ss = 0.0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const double e = y_true[i] - y_pred[i];
        ss += e * e;
    }
    return std::sqrt(ss / static_cast<double>(y_true.size()));
}

ConfusionCounts confusion_counts(std::span<const double> y_true, std::span<const double> y_pred) {
    if (y_true.size() != y_pred.size())
        throw InvalidInput("truth and prediction lengths differ");
    ConfusionCounts c;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const double t = y_true[i];
        const double p = y_pred[i];
        if ((t != 0.0 && t != 1.0) || (p != 0.0 && p != 1.0))
            throw InvalidInput("non-binary label at position " + std::to_string(i));
        if (t == 1.0 && p == 1.0)
            ++c.tp;
        else if (t == 0.0 && p == 1.0)
            ++c.fp;
        else if (t == 1.0 && p == 0.0)
            ++c.fn;
        else
            ++c.tn;
    }
    return c;
}

double f_measure(double precision, double recall) {
    const double s = precision + recall;
    return s > 0.0 ? 2.0 * precision * recall / s : 0.0;
}

PrecisionRecallF precision_recall_f(const ConfusionCounts& counts) {
    if (counts.tp + counts.fp == 0)
        throw UndefinedMetric("precision", "precision undefined: no predicted positives");
    if (counts.tp + counts.fn == 0)
        throw UndefinedMetric("recall", "recall undefined: no actual positives");
    PrecisionRecallF out;
    out.precision = static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fp);
    out.recall = static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fn);
    out.f_measure = f_measure(out.precision, out.recall);
    return out;
}

}  // namespace xisis
