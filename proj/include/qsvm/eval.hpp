#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace qsvm {

/// counts[t][p]: samples of true class t predicted as p.
struct ConfusionMatrix {
    std::vector<std::vector<long>> counts;
    std::vector<std::string> class_names;

    int num_classes() const { return static_cast<int>(counts.size()); }
    long total() const;
    long row_sum(int c) const;
    long column_sum(int c) const;
    long trace() const;
};

/// Throws ArgumentError on length mismatch or a label outside [0, K).
/// Missing class names default to "class_<k>".
ConfusionMatrix confusion(std::span<const int> true_labels, std::span<const int> predicted_labels,
                          int num_classes, std::vector<std::string> class_names = {});

/// nullopt marks an undefined statistic (empty column for precision, empty row for recall).
struct ClassMetrics {
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
    long support = 0;
};

struct Metrics {
    double accuracy = 0.0;
    std::vector<ClassMetrics> per_class;
    /// Unweighted mean of the defined per-class F1 scores.
    std::optional<double> macro_f1;
};

/// Throws ArgumentError for an empty matrix.
Metrics metrics(const ConfusionMatrix& cm);

/// (counts[a][b] + counts[b][a]) / (row_sum(a) + row_sum(b)).
/// Throws ArgumentError for a == b, out-of-range classes, or two empty rows.
double pairwise_confusion_rate(const ConfusionMatrix& cm, int class_a, int class_b);

/// Row-normalised percentages in tenths of a percent, rounded half up. Empty rows are zero.
std::vector<std::vector<long>> row_percent_tenths(const ConfusionMatrix& cm);

std::string confusion_counts_csv(const ConfusionMatrix& cm);
std::string confusion_percent_csv(const ConfusionMatrix& cm);

/// Metrics report: accuracy, macro F1, per-class statistics (null plus a *_defined
/// flag when undefined) and the confusion rate of every class pair.
nlohmann::json metrics_report(const ConfusionMatrix& cm, const Metrics& m);

/// Human-readable confusion table with row percentages.
std::string format_confusion(const ConfusionMatrix& cm);

}  // namespace qsvm
