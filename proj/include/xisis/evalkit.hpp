#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace xisis {

/// Fold label (1..K) for each of n observations.
struct FoldPlan {
    std::size_t folds = 0;
    std::vector<std::size_t> assignments;

    std::vector<std::size_t> fold_sizes() const;
    /// Observation indices held out in fold `k` (1-based), ascending.
    std::vector<std::size_t> held_out(std::size_t k) const;
};

/// Random balanced partition of n observations into K folds whose sizes
/// differ by at most one. Requires 2 <= K <= n.
FoldPlan cv_folds(std::size_t n, std::size_t folds, std::uint64_t seed);

/// sqrt(mean((y_true - y_pred)^2)) over pooled held-out predictions.
double cv_rmse(std::span<const double> y_true, std::span<const double> y_pred);

struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;

    std::size_t total() const noexcept { return tp + fp + fn + tn; }
    bool operator==(const ConfusionCounts&) const = default;
};

/// Both vectors must have equal length and contain only 0 and 1.
ConfusionCounts confusion_counts(std::span<const double> y_true, std::span<const double> y_pred);

struct PrecisionRecallF {
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
};

/// Harmonic mean 2pr / (p + r); 0 when both are 0.
double f_measure(double precision, double recall);

/// Throws UndefinedMetric("precision") when tp + fp == 0 and
/// UndefinedMetric("recall") when tp + fn == 0. With tp == 0 and both
/// denominators positive all three values are 0.
PrecisionRecallF precision_recall_f(const ConfusionCounts& counts);

}  // namespace xisis
