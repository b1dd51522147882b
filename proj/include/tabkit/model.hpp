#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tabkit/frame.hpp"
#include "tabkit/metrics.hpp"

namespace tabkit {

// Row-major numeric design matrix.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// Features widened to double: Int/Float as-is, Bool as 0/1, DateTime as
// epoch seconds. Categorical columns must be encoded first; nulls raise
// NullInFeatures.
Matrix to_matrix(const Frame& frame, const std::vector<std::string>& feature_cols);

struct TargetLabels {
    std::vector<int> y;
    std::string positive;  // display form of the class mapped to 1
    std::string negative;
};

// Binary targets from Int, Bool or Categorical columns with at most two
// classes; the larger class value is positive unless overridden.
TargetLabels to_labels(const Column& column,
                       const std::optional<std::string>& positive_override = std::nullopt);

struct SplitResult {
    Frame train;
    Frame test;
};

// Fisher-Yates shuffle of row indices with SplitMix64(seed); the first
// ceil(n * test_fraction) shuffled indices form the test part. Row order
// within each part follows the shuffle.
SplitResult train_test_split(const Frame& frame, const std::string& target, double test_fraction,
                             std::uint64_t seed);

// ---------- logistic regression ----------

struct LogisticHyper {
    double learning_rate = 0.1;
    std::size_t max_iter = 1000;
    double tol = 1e-6;  // stop when |loss delta| < tol
    double l2 = 0.0;
};

struct LogisticModel {
    std::vector<double> weights;  // in standardized feature space
    double bias = 0.0;
    std::vector<double> feature_means;
    std::vector<double> feature_stds;  // > 0; zero-variance features get 1
    LogisticHyper hyper;
    std::vector<double> loss_history;  // accepted iterations, non-increasing
};

// Mean binary cross-entropy + (l2/2)*|w|^2 and its gradient at (w, b) over
// the given matrix; public so independent finite-difference checks can
// probe arbitrary points.
double logistic_loss(const Matrix& X, const std::vector<int>& y, const std::vector<double>& w,
                     double b, double l2);
void logistic_gradient(const Matrix& X, const std::vector<int>& y, const std::vector<double>& w,
                       double b, double l2, std::vector<double>& grad_w, double& grad_b);

LogisticModel fit_logistic(const Matrix& X, const std::vector<int>& y, LogisticHyper hyper = {});

// ---------- CART tree ----------

struct TreeHyper {
    std::size_t max_depth = 8;
    std::size_t min_samples_split = 2;
};

struct TreeNode {
    bool leaf = true;
    std::size_t feature = 0;
    double threshold = 0.0;  // midpoint of adjacent observed values; x < t goes left
    int left = -1;
    int right = -1;
    std::int64_t n0 = 0;  // class counts (leaves)
    std::int64_t n1 = 0;
};

struct TreeModel {
    std::vector<TreeNode> nodes;  // nodes[0] is the root
    std::size_t n_features = 0;
    TreeHyper hyper;
};

TreeModel fit_tree(const Matrix& X, const std::vector<int>& y, TreeHyper hyper = {});

// ---------- bagged forest ----------

struct ForestHyper {
    std::size_t n_trees = 100;
    TreeHyper tree;
    bool bootstrap = true;
    std::size_t features_per_split = 0;  // 0 = ceil(sqrt(p))
};

struct ForestModel {
    std::vector<TreeModel> trees;
    std::size_t n_features = 0;
    ForestHyper hyper;
};

// Per-tree seeds come from a SplitMix64 stream of `seed`; each tree fits a
// bootstrap sample and considers a fresh feature subset at every split.
// Trees are pure functions of (data, tree seed), so fitting order does not
// matter and the result is identical at any thread count.
ForestModel fit_forest(const Matrix& X, const std::vector<int>& y, ForestHyper hyper = {},
                       std::uint64_t seed = 0);

// ---------- prediction ----------

using Model = std::variant<LogisticModel, TreeModel, ForestModel>;

std::size_t model_feature_count(const Model& model);
std::string_view model_kind(const Model& model);  // "logistic" | "tree" | "forest"

// logistic: sigmoid(w.z + b); tree: leaf positive fraction; forest: mean of
// tree hard votes.
std::vector<double> predict_proba(const Model& model, const Matrix& X);
std::vector<int> predict_labels(const Model& model, const Matrix& X);  // score >= 0.5 -> 1

// ---------- permutation importance ----------

enum class Metric { F1, Accuracy, Auc };

std::string_view metric_name(Metric metric);
Metric parse_metric(const std::string& name);

double score_metric(const Model& model, const Matrix& X, const std::vector<int>& y, Metric metric);

struct ImportanceRow {
    std::string feature;
    double importance = 0.0;  // baseline score - mean permuted score
    double std_dev = 0.0;     // over repeats (0 when repeats < 2)
};

struct ImportanceReport {
    Metric metric = Metric::F1;
    double baseline = 0.0;
    std::vector<ImportanceRow> rows;  // descending importance
};

ImportanceReport permutation_importance(const Model& model, const Matrix& X,
                                        const std::vector<int>& y,
                                        const std::vector<std::string>& feature_names,
                                        Metric metric, std::size_t repeats, std::uint64_t seed);

std::string importance_json(const ImportanceReport& report);
std::string importance_text(const ImportanceReport& report);

}  // namespace tabkit
