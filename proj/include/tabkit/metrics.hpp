#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tabkit {

// 2x2 counts, rows = actual (negative, positive), columns = predicted.
struct Confusion {
    std::int64_t tn = 0, fp = 0, fn = 0, tp = 0;
    std::int64_t total() const { return tn + fp + fn + tp; }
    bool operator==(const Confusion&) const = default;
};

struct ClassificationReport {
    double accuracy = 0;
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    Confusion confusion;
    std::optional<double> auc;
};

// Ratios with a zero denominator are defined as 0 so degenerate predictions
// stay serializable.
ClassificationReport report_from_confusion(const Confusion& counts);

ClassificationReport classification_report(const std::vector<int>& y_true,
                                           const std::vector<int>& y_pred,
                                           const std::vector<double>* scores = nullptr);

// Probability that a random positive outscores a random negative, ties
// counting one half (rank / Mann-Whitney formulation).
double roc_auc(const std::vector<int>& y_true, const std::vector<double>& scores);

// x100, rounded half away from zero to an integer, printed with one
// decimal: 0.896552 -> "90.0".
std::string metric_display(double value);

// "Accuracy is 100.0" etc. plus a confusion-matrix table.
std::string report_text(const ClassificationReport& report);
std::string report_json(const ClassificationReport& report);

}  // namespace tabkit
