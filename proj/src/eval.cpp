#include "qsvm/eval.hpp"

#include <cstdio>
#include <numeric>
#include <sstream>

#include "qsvm/errors.hpp"

namespace qsvm {

long ConfusionMatrix::total() const {
    long t = 0;
    for (const auto& row : counts) t = std::accumulate(row.begin(), row.end(), t);
    return t;
}

long ConfusionMatrix::row_sum(int c) const {
    const auto& row = counts.at(c);
    return std::accumulate(row.begin(), row.end(), 0L);
}

long ConfusionMatrix::column_sum(int c) const {
    long s = 0;
    for (const auto& row : counts) s += row.at(c);
    return s;
}

long ConfusionMatrix::trace() const {
    long s = 0;
    for (int c = 0; c < num_classes(); ++c) s += counts[c][c];
    return s;
}

ConfusionMatrix confusion(std::span<const int> true_labels, std::span<const int> predicted_labels,
                          int num_classes, std::vector<std::string> class_names) {
    if (true_labels.size() != predicted_labels.size()) {
        throw ArgumentError("confusion: " + std::to_string(true_labels.size()) + " true labels vs " +
                            std::to_string(predicted_labels.size()) + " predictions");
    }
    if (num_classes < 1) throw ArgumentError("confusion: need at least one class");
    if (!class_names.empty() && static_cast<int>(class_names.size()) != num_classes) {
        throw ArgumentError("confusion: class name count does not match K");
    }
    if (class_names.empty()) {
        for (int c = 0; c < num_classes; ++c) class_names.push_back("class_" + std::to_string(c));
    }
    ConfusionMatrix cm{std::vector<std::vector<long>>(num_classes, std::vector<long>(num_classes, 0)),
                       std::move(class_names)};
    for (std::size_t i = 0; i < true_labels.size(); ++i) {
        const int t = true_labels[i];
        const int p = predicted_labels[i];
        if (t < 0 || t >= num_classes || p < 0 || p >= num_classes) {
            throw ArgumentError("confusion: label outside [0, " + std::to_string(num_classes) + ")");
        }
        ++cm.counts[t][p];
    }
    return cm;
}

Metrics metrics(const ConfusionMatrix& cm) {
    const long total = cm.total();
    if (total <= 0) throw ArgumentError("metrics: confusion matrix is empty");

    Metrics m;
    m.accuracy = static_cast<double>(cm.trace()) / static_cast<double>(total);
    double f1_sum = 0.0;
    int f1_count = 0;
    for (int c = 0; c < cm.num_classes(); ++c) {
        ClassMetrics cls;
        const long hits = cm.counts[c][c];
        const long predicted = cm.column_sum(c);
        cls.support = cm.row_sum(c);
        if (predicted > 0) cls.precision = static_cast<double>(hits) / static_cast<double>(predicted);
        if (cls.support > 0) cls.recall = static_cast<double>(hits) / static_cast<double>(cls.support);
        if (cls.precision && cls.recall) {
            const double denom = *cls.precision + *cls.recall;
            cls.f1 = denom > 0.0 ? 2.0 * *cls.precision * *cls.recall / denom : 0.0;
            f1_sum += *cls.f1;
            ++f1_count;
        }
        m.per_class.push_back(cls);
    }
    if (f1_count > 0) m.macro_f1 = f1_sum / f1_count;
    return m;
}

double pairwise_confusion_rate(const ConfusionMatrix& cm, int class_a, int class_b) {
    const int k = cm.num_classes();
    if (class_a < 0 || class_a >= k || class_b < 0 || class_b >= k) {
        throw ArgumentError("pairwise_confusion_rate: class outside the matrix");
    }
    if (class_a == class_b) throw ArgumentError("pairwise_confusion_rate: classes must differ");
    const long rows = cm.row_sum(class_a) + cm.row_sum(class_b);
    if (rows == 0) {
        throw ArgumentError("pairwise_confusion_rate: classes " + std::to_string(class_a) + " and " +
                            std::to_string(class_b) + " have no samples");
    }
    return static_cast<double>(cm.counts[class_a][class_b] + cm.counts[class_b][class_a]) /
           static_cast<double>(rows);
}

std::vector<std::vector<long>> row_percent_tenths(const ConfusionMatrix& cm) {
    std::vector<std::vector<long>> out;
    for (int t = 0; t < cm.num_classes(); ++t) {
        const long row = cm.row_sum(t);
        std::vector<long> cells(cm.num_classes(), 0);
        if (row > 0) {
            // Integer arithmetic keeps half-up rounding exact: floor(1000 c / row + 1/2).
            for (int p = 0; p < cm.num_classes(); ++p) cells[p] = (2000 * cm.counts[t][p] + row) / (2 * row);
        }
        out.push_back(std::move(cells));
    }
    return out;
}

namespace {

std::string csv_header(const ConfusionMatrix& cm) {
    std::string h = "true\\predicted";
    for (const auto& name : cm.class_names) h += "," + name;
    return h + "\n";
}

std::string format_tenths(long tenths) {
    return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

nlohmann::json optional_json(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::string confusion_counts_csv(const ConfusionMatrix& cm) {
    std::string out = csv_header(cm);
    for (int t = 0; t < cm.num_classes(); ++t) {
        out += cm.class_names[t];
        for (long v : cm.counts[t]) out += "," + std::to_string(v);
        out += "\n";
    }
    return out;
}

std::string confusion_percent_csv(const ConfusionMatrix& cm) {
    const auto pct = row_percent_tenths(cm);
    std::string out = csv_header(cm);
    for (int t = 0; t < cm.num_classes(); ++t) {
        out += cm.class_names[t];
        for (long v : pct[t]) out += "," + format_tenths(v);
        out += "\n";
    }
    return out;
}

nlohmann::json metrics_report(const ConfusionMatrix& cm, const Metrics& m) {
    nlohmann::json report;
    report["evaluation"] = "held-out";
    report["num_samples"] = cm.total();
    report["accuracy"] = m.accuracy;
    report["macro_f1"] = optional_json(m.macro_f1);

    nlohmann::json classes = nlohmann::json::array();
    for (int c = 0; c < cm.num_classes(); ++c) {
        const auto& cls = m.per_class[c];
        classes.push_back({
            {"label", c},
            {"name", cm.class_names[c]},
            {"support", cls.support},
            {"precision", optional_json(cls.precision)},
            {"precision_defined", cls.precision.has_value()},
            {"recall", optional_json(cls.recall)},
            {"recall_defined", cls.recall.has_value()},
            {"f1", optional_json(cls.f1)},
            {"f1_defined", cls.f1.has_value()},
        });
    }
    report["classes"] = std::move(classes);

    nlohmann::json pairs = nlohmann::json::array();
    for (int a = 0; a < cm.num_classes(); ++a) {
        for (int b = a + 1; b < cm.num_classes(); ++b) {
            const bool defined = cm.row_sum(a) + cm.row_sum(b) > 0;
            pairs.push_back({
                {"class_a", a},
                {"class_b", b},
                {"rate", defined ? nlohmann::json(pairwise_confusion_rate(cm, a, b)) : nlohmann::json(nullptr)},
            });
        }
    }
    report["pairwise_confusion"] = std::move(pairs);

    nlohmann::json counts = nlohmann::json::array();
    for (const auto& row : cm.counts) counts.push_back(row);
    report["confusion_counts"] = std::move(counts);
    return report;
}

std::string format_confusion(const ConfusionMatrix& cm) {
    const auto pct = row_percent_tenths(cm);
    std::ostringstream out;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-14s", "true\\pred");
    out << buf;
    for (int p = 0; p < cm.num_classes(); ++p) {
        std::snprintf(buf, sizeof buf, "%8d", p);
        out << buf;
    }
    out << '\n';
    for (int t = 0; t < cm.num_classes(); ++t) {
        std::snprintf(buf, sizeof buf, "%-14.14s", cm.class_names[t].c_str());
        out << buf;
        for (long v : pct[t]) {
            std::snprintf(buf, sizeof buf, "%7s%%", format_tenths(v).c_str());
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace qsvm
