#include "tabkit/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "tabkit/errors.hpp"
#include "tabkit/rng.hpp"

namespace tabkit {

namespace {

void check_xy(const Matrix& X, const std::vector<int>& y) {
    if (X.rows != y.size()) {
        throw ShapeMismatch("matrix has " + std::to_string(X.rows) + " rows, labels " +
                            std::to_string(y.size()));
    }
    for (int v : y) {
        if (v != 0 && v != 1) throw NonBinaryLabel("labels must be 0 or 1");
    }
    for (double v : X.data) {
        if (!std::isfinite(v)) throw NullInFeatures("feature matrix contains a non-finite value");
    }
}

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double softplus(double z) {
    if (z > 0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

}  // namespace

Matrix to_matrix(const Frame& frame, const std::vector<std::string>& feature_cols) {
    Matrix X(frame.n_rows(), feature_cols.size());
    for (std::size_t c = 0; c < feature_cols.size(); ++c) {
        const Column& col = frame.column(feature_cols[c]);
        for (std::size_t r = 0; r < frame.n_rows(); ++r) {
            if (col.is_null(r)) {
                throw NullInFeatures("feature '" + col.name() + "' has a null at row " +
                                     std::to_string(r) + "; fill or drop nulls before fitting");
            }
            switch (col.dtype()) {
                case DType::Int:
                case DType::Float: X.at(r, c) = col.numeric_at(r); break;
                case DType::Bool: X.at(r, c) = col.bool_at(r) ? 1.0 : 0.0; break;
                case DType::DateTime:
                    X.at(r, c) = static_cast<double>(col.ts_at(r).epoch_s);
                    break;
                case DType::Categorical:
                    throw WrongDType("feature '" + col.name() +
                                     "' is categorical; encode it before fitting");
            }
        }
    }
    return X;
}

TargetLabels to_labels(const Column& column, const std::optional<std::string>& positive_override) {
    if (column.dtype() == DType::Float || column.dtype() == DType::DateTime) {
        throw WrongDType("target '" + column.name() + "' must be Int, Bool or Categorical");
    }
    std::vector<std::string> classes;
    for (std::size_t i = 0; i < column.size(); ++i) {
        if (column.is_null(i)) {
            throw NullInFeatures("target '" + column.name() + "' has a null at row " +
                                 std::to_string(i));
        }
        classes.push_back(column.cell_text(i));
    }
    std::vector<std::string> distinct = classes;
    if (column.dtype() == DType::Int) {
        // Numeric order, so "10" counts as larger than "9".
        std::sort(distinct.begin(), distinct.end(), [](const std::string& a, const std::string& b) {
            return std::stoll(a) < std::stoll(b);
        });
    } else {
        std::sort(distinct.begin(), distinct.end());
    }
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() > 2) {
        throw NonBinaryLabel("target '" + column.name() + "' has " +
                             std::to_string(distinct.size()) + " classes, expected 2");
    }
    if (distinct.empty()) throw EmptyColumn(column.name());

    TargetLabels out;
    out.positive = distinct.back();
    out.negative = distinct.size() == 2 ? distinct.front() : "";
    if (positive_override) {
        if (std::find(distinct.begin(), distinct.end(), *positive_override) == distinct.end()) {
            throw NonBinaryLabel("positive class '" + *positive_override +
                                 "' does not occur in target '" + column.name() + "'");
        }
        out.positive = *positive_override;
        out.negative = distinct.size() == 2
                           ? (distinct.front() == out.positive ? distinct.back() : distinct.front())
                           : "";
    }
    out.y.reserve(classes.size());
    for (const std::string& cls : classes) out.y.push_back(cls == out.positive ? 1 : 0);
    return out;
}

SplitResult train_test_split(const Frame& frame, const std::string& target, double test_fraction,
                             std::uint64_t seed) {
    if (!frame.has_column(target)) throw UnknownColumn(target);
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw SchemaError("test_fraction must be in (0, 1)");
    }
    const std::size_t n = frame.n_rows();
    const auto n_test = static_cast<std::size_t>(
        std::ceil(static_cast<double>(n) * test_fraction));
    const std::vector<std::size_t> order = shuffled_indices(n, seed);
    const std::vector<std::size_t> test_rows(order.begin(), order.begin() + n_test);
    const std::vector<std::size_t> train_rows(order.begin() + n_test, order.end());
    return SplitResult{take_rows(frame, train_rows), take_rows(frame, test_rows)};
}

// ---------- logistic regression ----------

double logistic_loss(const Matrix& X, const std::vector<int>& y, const std::vector<double>& w,
                     double b, double l2) {
    double total = 0.0;
    for (std::size_t r = 0; r < X.rows; ++r) {
        double z = b;
        for (std::size_t c = 0; c < X.cols; ++c) z += w[c] * X.at(r, c);
        // -[y log s + (1-y) log(1-s)] == softplus(z) - y*z
        total += softplus(z) - static_cast<double>(y[r]) * z;
    }
    double penalty = 0.0;
    for (double v : w) penalty += v * v;
    return total / static_cast<double>(X.rows) + 0.5 * l2 * penalty;
}

void logistic_gradient(const Matrix& X, const std::vector<int>& y, const std::vector<double>& w,
                       double b, double l2, std::vector<double>& grad_w, double& grad_b) {
    grad_w.assign(X.cols, 0.0);
    grad_b = 0.0;
    for (std::size_t r = 0; r < X.rows; ++r) {
        double z = b;
        for (std::size_t c = 0; c < X.cols; ++c) z += w[c] * X.at(r, c);
        const double err = sigmoid(z) - static_cast<double>(y[r]);
        for (std::size_t c = 0; c < X.cols; ++c) grad_w[c] += err * X.at(r, c);
        grad_b += err;
    }
    const double inv_n = 1.0 / static_cast<double>(X.rows);
    for (std::size_t c = 0; c < X.cols; ++c) grad_w[c] = grad_w[c] * inv_n + l2 * w[c];
    grad_b *= inv_n;
}

LogisticModel fit_logistic(const Matrix& X, const std::vector<int>& y, LogisticHyper hyper) {
    check_xy(X, y);
    const std::size_t pos = static_cast<std::size_t>(
        std::count(y.begin(), y.end(), 1));
    if (pos == 0 || pos == y.size()) {
        throw SingleClass("fit_logistic needs both classes present");
    }

    LogisticModel model;
    model.hyper = hyper;
    model.feature_means.assign(X.cols, 0.0);
    model.feature_stds.assign(X.cols, 1.0);
    for (std::size_t c = 0; c < X.cols; ++c) {
        double sum = 0.0;
        for (std::size_t r = 0; r < X.rows; ++r) sum += X.at(r, c);
        const double mean = sum / static_cast<double>(X.rows);
        double sq = 0.0;
        for (std::size_t r = 0; r < X.rows; ++r) {
            const double d = X.at(r, c) - mean;
            sq += d * d;
        }
        const double std_dev = std::sqrt(sq / static_cast<double>(X.rows));
        model.feature_means[c] = mean;
        model.feature_stds[c] = std_dev > 0.0 ? std_dev : 1.0;
    }

    Matrix Z(X.rows, X.cols);
    for (std::size_t r = 0; r < X.rows; ++r) {
        for (std::size_t c = 0; c < X.cols; ++c) {
            Z.at(r, c) = (X.at(r, c) - model.feature_means[c]) / model.feature_stds[c];
        }
    }

    model.weights.assign(X.cols, 0.0);
    model.bias = 0.0;
    double loss = logistic_loss(Z, y, model.weights, model.bias, hyper.l2);
    model.loss_history.push_back(loss);

    double lr = hyper.learning_rate;
    std::vector<double> grad_w;
    double grad_b = 0.0;
    std::vector<double> trial_w(X.cols, 0.0);
    for (std::size_t iter = 0; iter < hyper.max_iter; ++iter) {
        logistic_gradient(Z, y, model.weights, model.bias, hyper.l2, grad_w, grad_b);

        // Halve the step until it no longer increases the loss; a step that
        // cannot improve even at a tiny rate means we are at a minimum.
        double trial_loss = 0.0;
        double trial_b = 0.0;
        bool accepted = false;
        for (int backtrack = 0; backtrack < 60; ++backtrack) {
            for (std::size_t c = 0; c < X.cols; ++c) {
                trial_w[c] = model.weights[c] - lr * grad_w[c];
            }
            trial_b = model.bias - lr * grad_b;
            trial_loss = logistic_loss(Z, y, trial_w, trial_b, hyper.l2);
            if (trial_loss <= loss) {
                accepted = true;
                break;
            }
            lr *= 0.5;
        }
        if (!accepted) break;

        model.weights = trial_w;
        model.bias = trial_b;
        const double delta = loss - trial_loss;
        loss = trial_loss;
        model.loss_history.push_back(loss);
        if (delta < hyper.tol) break;
    }
    return model;
}

// ---------- CART tree ----------

namespace {

double gini(std::int64_t n0, std::int64_t n1) {
    const double n = static_cast<double>(n0 + n1);
    if (n == 0) return 0.0;
    const double p0 = static_cast<double>(n0) / n;
    const double p1 = static_cast<double>(n1) / n;
    return 1.0 - p0 * p0 - p1 * p1;
}

struct TreeBuilder {
    const Matrix& X;
    const std::vector<int>& y;
    TreeHyper hyper;
    std::size_t features_per_split;  // == X.cols for a plain tree
    SplitMix64* rng = nullptr;       // feature subsetting for forests
    std::vector<TreeNode> nodes;

    std::vector<std::size_t> candidate_features() {
        const std::size_t p = X.cols;
        if (!rng || features_per_split >= p) {
            std::vector<std::size_t> all(p);
            std::iota(all.begin(), all.end(), std::size_t{0});
            return all;
        }
        // Partial Fisher-Yates, then ascending order so the lowest-index
        // tie-break applies within the subset.
        std::vector<std::size_t> pool(p);
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t i = 0; i < features_per_split; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng->next() % (p - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(features_per_split);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

    int build(std::vector<std::size_t>& rows, std::size_t depth) {
        std::int64_t n0 = 0, n1 = 0;
        for (std::size_t r : rows) (y[r] == 1 ? n1 : n0)++;

        const bool pure = n0 == 0 || n1 == 0;
        const bool can_split = !pure && depth < hyper.max_depth &&
                               rows.size() >= hyper.min_samples_split;

        std::size_t best_feature = 0;
        double best_threshold = 0.0;
        double best_gain = -1.0;
        if (can_split) {
            const double parent = gini(n0, n1);
            const double n = static_cast<double>(rows.size());
            std::vector<std::pair<double, int>> sorted;
            for (std::size_t f : candidate_features()) {
                sorted.clear();
                sorted.reserve(rows.size());
                for (std::size_t r : rows) sorted.emplace_back(X.at(r, f), y[r]);
                std::sort(sorted.begin(), sorted.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                std::int64_t l0 = 0, l1 = 0;
                for (std::size_t i = 1; i < sorted.size(); ++i) {
                    (sorted[i - 1].second == 1 ? l1 : l0)++;
                    const double prev = sorted[i - 1].first;
                    const double next = sorted[i].first;
                    if (prev == next) continue;
                    const double threshold = prev + (next - prev) / 2.0;
                    if (!(prev < threshold && threshold <= next)) continue;  // fp-adjacent values
                    const double left_n = static_cast<double>(i);
                    const double right_n = n - left_n;
                    const double gain = parent - (left_n / n) * gini(l0, l1) -
                                        (right_n / n) * gini(n0 - l0, n1 - l1);
                    if (gain > best_gain) {
                        best_gain = gain;
                        best_feature = f;
                        best_threshold = threshold;
                    }
                }
            }
        }

        const int index = static_cast<int>(nodes.size());
        nodes.push_back(TreeNode{});
        if (best_gain < 0.0) {
            nodes[static_cast<std::size_t>(index)] =
                TreeNode{true, 0, 0.0, -1, -1, n0, n1};
            return index;
        }

        std::vector<std::size_t> left_rows, right_rows;
        for (std::size_t r : rows) {
            (X.at(r, best_feature) < best_threshold ? left_rows : right_rows).push_back(r);
        }
        rows.clear();
        rows.shrink_to_fit();
        const int left = build(left_rows, depth + 1);
        const int right = build(right_rows, depth + 1);
        nodes[static_cast<std::size_t>(index)] =
            TreeNode{false, best_feature, best_threshold, left, right, n0, n1};
        return index;
    }
};

const TreeNode& descend(const TreeModel& tree, const Matrix& X, std::size_t row) {
    const TreeNode* node = &tree.nodes[0];
    while (!node->leaf) {
        const std::size_t next = static_cast<std::size_t>(
            X.at(row, node->feature) < node->threshold ? node->left : node->right);
        node = &tree.nodes[next];
    }
    return *node;
}

double leaf_score(const TreeNode& leaf) {
    return static_cast<double>(leaf.n1) / static_cast<double>(leaf.n0 + leaf.n1);
}

}  // namespace

TreeModel fit_tree(const Matrix& X, const std::vector<int>& y, TreeHyper hyper) {
    check_xy(X, y);
    if (y.empty()) throw ShapeMismatch("fit_tree needs at least one sample");
    TreeBuilder builder{X, y, hyper, X.cols, nullptr, {}};
    std::vector<std::size_t> rows(X.rows);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    builder.build(rows, 0);
    TreeModel model;
    model.nodes = std::move(builder.nodes);
    model.n_features = X.cols;
    model.hyper = hyper;
    return model;
}

ForestModel fit_forest(const Matrix& X, const std::vector<int>& y, ForestHyper hyper,
                       std::uint64_t seed) {
    check_xy(X, y);
    if (y.empty()) throw ShapeMismatch("fit_forest needs at least one sample");
    const std::size_t p = X.cols;
    std::size_t per_split = hyper.features_per_split;
    if (per_split == 0) {
        per_split = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(p))));
    }
    per_split = std::min(per_split, p);

    SplitMix64 seeder(seed);
    std::vector<std::uint64_t> tree_seeds(hyper.n_trees);
    for (auto& s : tree_seeds) s = seeder.next();

    ForestModel model;
    model.trees.resize(hyper.n_trees);
    model.n_features = p;
    model.hyper = hyper;

#pragma omp parallel for schedule(dynamic)
    for (long long b = 0; b < static_cast<long long>(hyper.n_trees); ++b) {
        SplitMix64 rng(tree_seeds[static_cast<std::size_t>(b)]);
        std::vector<std::size_t> rows(X.rows);
        if (hyper.bootstrap) {
            for (auto& r : rows) r = static_cast<std::size_t>(rng.next() % X.rows);
        } else {
            std::iota(rows.begin(), rows.end(), std::size_t{0});
        }
        TreeBuilder builder{X, y, hyper.tree, per_split, &rng, {}};
        builder.build(rows, 0);
        TreeModel tree;
        tree.nodes = std::move(builder.nodes);
        tree.n_features = p;
        tree.hyper = hyper.tree;
        model.trees[static_cast<std::size_t>(b)] = std::move(tree);
    }
    return model;
}

// ---------- prediction ----------

std::size_t model_feature_count(const Model& model) {
    if (const auto* lg = std::get_if<LogisticModel>(&model)) return lg->weights.size();
    if (const auto* tr = std::get_if<TreeModel>(&model)) return tr->n_features;
    return std::get<ForestModel>(model).n_features;
}

std::string_view model_kind(const Model& model) {
    if (std::holds_alternative<LogisticModel>(model)) return "logistic";
    if (std::holds_alternative<TreeModel>(model)) return "tree";
    return "forest";
}

std::vector<double> predict_proba(const Model& model, const Matrix& X) {
    const std::size_t expected = model_feature_count(model);
    if (X.cols != expected) {
        throw ShapeMismatch("model expects " + std::to_string(expected) + " features, got " +
                            std::to_string(X.cols));
    }
    std::vector<double> scores(X.rows, 0.0);
    if (const auto* lg = std::get_if<LogisticModel>(&model)) {
        for (std::size_t r = 0; r < X.rows; ++r) {
            double z = lg->bias;
            for (std::size_t c = 0; c < X.cols; ++c) {
                z += lg->weights[c] * (X.at(r, c) - lg->feature_means[c]) / lg->feature_stds[c];
            }
            scores[r] = sigmoid(z);
        }
    } else if (const auto* tr = std::get_if<TreeModel>(&model)) {
        for (std::size_t r = 0; r < X.rows; ++r) scores[r] = leaf_score(descend(*tr, X, r));
    } else {
        const auto& forest = std::get<ForestModel>(model);
        for (std::size_t r = 0; r < X.rows; ++r) {
            std::size_t votes = 0;
            for (const TreeModel& tree : forest.trees) {
                if (leaf_score(descend(tree, X, r)) >= 0.5) ++votes;
            }
            scores[r] = forest.trees.empty()
                            ? 0.0
                            : static_cast<double>(votes) / static_cast<double>(forest.trees.size());
        }
    }
    return scores;
}

std::vector<int> predict_labels(const Model& model, const Matrix& X) {
    const std::vector<double> scores = predict_proba(model, X);
    std::vector<int> labels(scores.size(), 0);
    for (std::size_t i = 0; i < scores.size(); ++i) labels[i] = scores[i] >= 0.5 ? 1 : 0;
    return labels;
}

// ---------- permutation importance ----------

std::string_view metric_name(Metric metric) {
    switch (metric) {
        case Metric::F1: return "f1";
        case Metric::Accuracy: return "accuracy";
        case Metric::Auc: return "auc";
    }
    return "f1";
}

Metric parse_metric(const std::string& name) {
    if (name == "f1") return Metric::F1;
    if (name == "accuracy") return Metric::Accuracy;
    if (name == "auc") return Metric::Auc;
    throw SchemaError("unknown metric '" + name + "' (expected f1, accuracy or auc)");
}

double score_metric(const Model& model, const Matrix& X, const std::vector<int>& y,
                    Metric metric) {
    if (metric == Metric::Auc) return roc_auc(y, predict_proba(model, X));
    const std::vector<int> pred = predict_labels(model, X);
    const ClassificationReport report = classification_report(y, pred);
    return metric == Metric::F1 ? report.f1 : report.accuracy;
}

ImportanceReport permutation_importance(const Model& model, const Matrix& X,
                                        const std::vector<int>& y,
                                        const std::vector<std::string>& feature_names,
                                        Metric metric, std::size_t repeats, std::uint64_t seed) {
    if (feature_names.size() != X.cols) {
        throw ShapeMismatch("feature name count differs from matrix columns");
    }
    if (repeats == 0) throw SchemaError("permutation importance needs repeats >= 1");

    ImportanceReport report;
    report.metric = metric;
    report.baseline = score_metric(model, X, y, metric);

    // One pre-drawn seed per (feature, repeat) keeps shuffles identical at
    // any thread count.
    SplitMix64 seeder(seed);
    std::vector<std::uint64_t> shuffle_seeds(X.cols * repeats);
    for (auto& s : shuffle_seeds) s = seeder.next();

    std::vector<ImportanceRow> rows(X.cols);

#pragma omp parallel for schedule(dynamic)
    for (long long fi = 0; fi < static_cast<long long>(X.cols); ++fi) {
        const std::size_t f = static_cast<std::size_t>(fi);
        std::vector<double> original(X.rows);
        for (std::size_t r = 0; r < X.rows; ++r) original[r] = X.at(r, f);

        Matrix work = X;
        std::vector<double> scores(repeats, 0.0);
        for (std::size_t rep = 0; rep < repeats; ++rep) {
            std::vector<double> shuffled = original;
            SplitMix64 rng(shuffle_seeds[f * repeats + rep]);
            fisher_yates(shuffled, rng);
            for (std::size_t r = 0; r < X.rows; ++r) work.at(r, f) = shuffled[r];
            scores[rep] = score_metric(model, work, y, metric);
        }

        double mean = 0.0;
        for (double s : scores) mean += s;
        mean /= static_cast<double>(repeats);
        double std_dev = 0.0;
        if (repeats >= 2) {
            double sq = 0.0;
            for (double s : scores) sq += (s - mean) * (s - mean);
            std_dev = std::sqrt(sq / static_cast<double>(repeats - 1));
        }
        rows[f] = ImportanceRow{feature_names[f], report.baseline - mean, std_dev};
    }

    std::stable_sort(rows.begin(), rows.end(), [](const ImportanceRow& a, const ImportanceRow& b) {
        return a.importance > b.importance;
    });
    report.rows = std::move(rows);
    return report;
}

std::string importance_json(const ImportanceReport& report) {
    nlohmann::ordered_json out;
    out["metric"] = metric_name(report.metric);
    out["baseline"] = report.baseline;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ImportanceRow& row : report.rows) {
        rows.push_back(
            {{"feature", row.feature}, {"importance", row.importance}, {"std", row.std_dev}});
    }
    out["features"] = std::move(rows);
    return out.dump(2);
}

std::string importance_text(const ImportanceReport& report) {
    std::ostringstream os;
    os << "Permutation importance (metric: " << metric_name(report.metric)
       << ", baseline: " << report.baseline << ")\n";
    for (const ImportanceRow& row : report.rows) {
        os << "  " << row.feature << "  " << row.importance << "  (std " << row.std_dev << ")\n";
    }
    return os.str();
}

}  // namespace tabkit
