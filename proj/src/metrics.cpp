#include "tabkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "tabkit/errors.hpp"

namespace tabkit {

namespace {

double ratio(double numerator, double denominator) {
    return denominator == 0.0 ? 0.0 : numerator / denominator;
}

void check_binary(const std::vector<int>& labels) {
    for (int v : labels) {
        if (v != 0 && v != 1) {
            throw NonBinaryLabel("labels must be 0 or 1, got " + std::to_string(v));
        }
    }
}

}  // namespace

ClassificationReport report_from_confusion(const Confusion& counts) {
    ClassificationReport report;
    report.confusion = counts;
    const double tn = static_cast<double>(counts.tn);
    const double fp = static_cast<double>(counts.fp);
    const double fn = static_cast<double>(counts.fn);
    const double tp = static_cast<double>(counts.tp);
    report.accuracy = ratio(tn + tp, tn + fp + fn + tp);
    report.precision = ratio(tp, tp + fp);
    report.recall = ratio(tp, tp + fn);
    report.f1 = ratio(2.0 * report.precision * report.recall, report.precision + report.recall);
    return report;
}

ClassificationReport classification_report(const std::vector<int>& y_true,
                                           const std::vector<int>& y_pred,
                                           const std::vector<double>* scores) {
    if (y_true.size() != y_pred.size()) {
        throw LengthMismatch("y_true has " + std::to_string(y_true.size()) + " labels, y_pred " +
                             std::to_string(y_pred.size()));
    }
    if (y_true.empty()) throw LengthMismatch("classification_report needs at least one label");
    if (scores && scores->size() != y_true.size()) {
        throw LengthMismatch("scores length differs from labels");
    }
    check_binary(y_true);
    check_binary(y_pred);

    Confusion counts;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if (y_true[i] == 1) {
            ++(y_pred[i] == 1 ? counts.tp : counts.fn);
        } else {
            ++(y_pred[i] == 1 ? counts.fp : counts.tn);
        }
    }
    ClassificationReport report = report_from_confusion(counts);
    if (scores) {
        const bool has_pos = counts.tp + counts.fn > 0;
        const bool has_neg = counts.tn + counts.fp > 0;
        if (has_pos && has_neg) report.auc = roc_auc(y_true, *scores);
    }
    return report;
}

double roc_auc(const std::vector<int>& y_true, const std::vector<double>& scores) {
    if (y_true.size() != scores.size()) {
        throw LengthMismatch("scores length differs from labels");
    }
    check_binary(y_true);
    const std::size_t n = y_true.size();
    std::size_t n_pos = 0;
    for (int v : y_true) n_pos += static_cast<std::size_t>(v);
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) {
        throw SingleClass("roc_auc needs both classes present");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Average ranks over tied scores, then the Mann-Whitney statistic.
    double pos_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) {
            if (y_true[order[k]] == 1) pos_rank_sum += avg_rank;
        }
        i = j;
    }
    const double n_pos_d = static_cast<double>(n_pos);
    const double n_neg_d = static_cast<double>(n_neg);
    return (pos_rank_sum - n_pos_d * (n_pos_d + 1.0) / 2.0) / (n_pos_d * n_neg_d);
}

std::string metric_display(double value) {
    const long long rounded = std::llround(value * 100.0);
    return std::to_string(rounded) + ".0";
}

std::string report_text(const ClassificationReport& report) {
    std::ostringstream os;
    os << "Accuracy is " << metric_display(report.accuracy) << "\n";
    os << "F1 score is " << metric_display(report.f1) << "\n";
    os << "Precision is " << metric_display(report.precision) << "\n";
    os << "Recall is " << metric_display(report.recall) << "\n";
    if (report.auc) {
        os << "AUC is " << *report.auc << "\n";
    }
    os << "\nConfusion Matrix\n";
    os << "                 Predicted negative  Predicted positive\n";
    os << "Actual negative  " << report.confusion.tn << "  " << report.confusion.fp << "\n";
    os << "Actual positive  " << report.confusion.fn << "  " << report.confusion.tp << "\n";
    return os.str();
}

std::string report_json(const ClassificationReport& report) {
    nlohmann::ordered_json out;
    out["accuracy"] = report.accuracy;
    out["precision"] = report.precision;
    out["recall"] = report.recall;
    out["f1"] = report.f1;
    if (report.auc) {
        out["auc"] = *report.auc;
    } else {
        out["auc"] = nullptr;
    }
    out["confusion"] = {{"tn", report.confusion.tn},
                        {"fp", report.confusion.fp},
                        {"fn", report.confusion.fn},
                        {"tp", report.confusion.tp}};
    return out.dump(2);
}

}  // namespace tabkit
