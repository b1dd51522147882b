#include "tabkit/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tabkit/errors.hpp"

namespace tabkit {

namespace {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

// Nodes serialize as [leaf, feature, threshold, left, right, n0, n1].
ordered_json nodes_json(const std::vector<TreeNode>& nodes) {
    ordered_json out = ordered_json::array();
    for (const TreeNode& node : nodes) {
        out.push_back(ordered_json::array({node.leaf ? 1 : 0, node.feature, node.threshold,
                                           node.left, node.right, node.n0, node.n1}));
    }
    return out;
}

std::vector<TreeNode> nodes_from_json(const json& arr, std::size_t n_features) {
    if (!arr.is_array() || arr.empty()) throw MalformedModelFile("tree has no nodes");
    std::vector<TreeNode> nodes;
    nodes.reserve(arr.size());
    const auto node_count = static_cast<long long>(arr.size());
    for (const json& item : arr) {
        if (!item.is_array() || item.size() != 7) {
            throw MalformedModelFile("tree node must be a 7-element array");
        }
        TreeNode node;
        node.leaf = item[0].get<int>() != 0;
        node.feature = item[1].get<std::size_t>();
        node.threshold = item[2].get<double>();
        node.left = item[3].get<int>();
        node.right = item[4].get<int>();
        node.n0 = item[5].get<std::int64_t>();
        node.n1 = item[6].get<std::int64_t>();
        if (node.leaf) {
            if (node.n0 + node.n1 <= 0) throw MalformedModelFile("leaf with empty class counts");
        } else {
            if (node.feature >= n_features) throw MalformedModelFile("split feature out of range");
            if (node.left < 0 || node.right < 0 || node.left >= node_count ||
                node.right >= node_count) {
                throw MalformedModelFile("child index out of range");
            }
        }
        nodes.push_back(node);
    }
    return nodes;
}

ordered_json tree_hyper_json(const TreeHyper& hyper) {
    return ordered_json{{"max_depth", hyper.max_depth},
                        {"min_samples_split", hyper.min_samples_split}};
}

TreeHyper tree_hyper_from_json(const json& j) {
    TreeHyper hyper;
    hyper.max_depth = j.at("max_depth").get<std::size_t>();
    hyper.min_samples_split = j.at("min_samples_split").get<std::size_t>();
    return hyper;
}

}  // namespace

std::string save_model(const ModelBundle& bundle) {
    ordered_json out;
    out["schema_version"] = 1;
    out["kind"] = model_kind(bundle.model);
    out["target"] = bundle.target;
    out["positive_class"] = bundle.positive_class;
    out["feature_names"] = bundle.feature_names;
    ordered_json encodings = ordered_json::array();
    for (const LabelEncoding& enc : bundle.encodings) {
        encodings.push_back({{"column", enc.column}, {"classes", enc.classes}});
    }
    out["encodings"] = std::move(encodings);

    if (const auto* lg = std::get_if<LogisticModel>(&bundle.model)) {
        out["hyper"] = ordered_json{{"learning_rate", lg->hyper.learning_rate},
                                    {"max_iter", lg->hyper.max_iter},
                                    {"tol", lg->hyper.tol},
                                    {"l2", lg->hyper.l2}};
        out["params"] = ordered_json{{"weights", lg->weights},
                                     {"bias", lg->bias},
                                     {"feature_means", lg->feature_means},
                                     {"feature_stds", lg->feature_stds}};
    } else if (const auto* tr = std::get_if<TreeModel>(&bundle.model)) {
        out["hyper"] = tree_hyper_json(tr->hyper);
        out["params"] = ordered_json{{"n_features", tr->n_features}, {"nodes", nodes_json(tr->nodes)}};
    } else {
        const auto& forest = std::get<ForestModel>(bundle.model);
        ordered_json hyper = tree_hyper_json(forest.hyper.tree);
        hyper["n_trees"] = forest.hyper.n_trees;
        hyper["bootstrap"] = forest.hyper.bootstrap;
        hyper["features_per_split"] = forest.hyper.features_per_split;
        out["hyper"] = std::move(hyper);
        ordered_json trees = ordered_json::array();
        for (const TreeModel& tree : forest.trees) trees.push_back(nodes_json(tree.nodes));
        out["params"] = ordered_json{{"n_features", forest.n_features}, {"trees", std::move(trees)}};
    }
    return out.dump(2);
}

ModelBundle load_model(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw MalformedModelFile(e.what());
    }
    try {
        if (!doc.contains("schema_version")) throw MalformedModelFile("missing schema_version");
        const long long version = doc["schema_version"].get<long long>();
        if (version != 1) throw SchemaVersionMismatch(version);

        ModelBundle bundle;
        bundle.target = doc.at("target").get<std::string>();
        bundle.positive_class = doc.at("positive_class").get<std::string>();
        bundle.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
        for (const json& enc : doc.at("encodings")) {
            LabelEncoding encoding;
            encoding.column = enc.at("column").get<std::string>();
            encoding.classes = enc.at("classes").get<std::vector<std::string>>();
            if (!std::is_sorted(encoding.classes.begin(), encoding.classes.end())) {
                throw MalformedModelFile("encoding classes for '" + encoding.column +
                                         "' are not in lexicographic order");
            }
            bundle.encodings.push_back(std::move(encoding));
        }

        const std::string kind = doc.at("kind").get<std::string>();
        const json& hyper = doc.at("hyper");
        const json& params = doc.at("params");
        if (kind == "logistic") {
            LogisticModel model;
            model.hyper.learning_rate = hyper.at("learning_rate").get<double>();
            model.hyper.max_iter = hyper.at("max_iter").get<std::size_t>();
            model.hyper.tol = hyper.at("tol").get<double>();
            model.hyper.l2 = hyper.at("l2").get<double>();
            model.weights = params.at("weights").get<std::vector<double>>();
            model.bias = params.at("bias").get<double>();
            model.feature_means = params.at("feature_means").get<std::vector<double>>();
            model.feature_stds = params.at("feature_stds").get<std::vector<double>>();
            if (model.weights.size() != bundle.feature_names.size() ||
                model.feature_means.size() != model.weights.size() ||
                model.feature_stds.size() != model.weights.size()) {
                throw MalformedModelFile("logistic parameter lengths disagree");
            }
            for (double s : model.feature_stds) {
                if (!(s > 0.0)) throw MalformedModelFile("feature_stds must be positive");
            }
            bundle.model = std::move(model);
        } else if (kind == "tree") {
            TreeModel model;
            model.hyper = tree_hyper_from_json(hyper);
            model.n_features = params.at("n_features").get<std::size_t>();
            if (model.n_features != bundle.feature_names.size()) {
                throw MalformedModelFile("n_features differs from feature_names");
            }
            model.nodes = nodes_from_json(params.at("nodes"), model.n_features);
            bundle.model = std::move(model);
        } else if (kind == "forest") {
            ForestModel model;
            model.hyper.tree = tree_hyper_from_json(hyper);
            model.hyper.n_trees = hyper.at("n_trees").get<std::size_t>();
            model.hyper.bootstrap = hyper.at("bootstrap").get<bool>();
            model.hyper.features_per_split = hyper.at("features_per_split").get<std::size_t>();
            model.n_features = params.at("n_features").get<std::size_t>();
            if (model.n_features != bundle.feature_names.size()) {
                throw MalformedModelFile("n_features differs from feature_names");
            }
            for (const json& tree_nodes : params.at("trees")) {
                TreeModel tree;
                tree.hyper = model.hyper.tree;
                tree.n_features = model.n_features;
                tree.nodes = nodes_from_json(tree_nodes, model.n_features);
                model.trees.push_back(std::move(tree));
            }
            bundle.model = std::move(model);
        } else {
            throw MalformedModelFile("unknown kind '" + kind + "'");
        }
        return bundle;
    } catch (const json::exception& e) {
        throw MalformedModelFile(e.what());
    }
}

void save_model_file(const ModelBundle& bundle, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << save_model(bundle) << "\n";
}

ModelBundle load_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ModelFileError("cannot open model file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_model(buffer.str());
}

}  // namespace tabkit
