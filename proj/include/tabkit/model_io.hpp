#pragma once
#include <string>
#include <vector>

#include "tabkit/model.hpp"
#include "tabkit/prep.hpp"

namespace tabkit {

// A fitted model plus everything needed to rebuild its feature matrix from
// a raw frame: feature names, frozen label-encoding class orders and the
// target/positive-class choice.
struct ModelBundle {
    Model model;
    std::vector<std::string> feature_names;
    std::vector<LabelEncoding> encodings;
    std::string target;
    std::string positive_class;
};

// JSON document, schema_version 1. load(save(b)) predicts identically.
std::string save_model(const ModelBundle& bundle);
ModelBundle load_model(const std::string& text);

void save_model_file(const ModelBundle& bundle, const std::string& path);
ModelBundle load_model_file(const std::string& path);

}  // namespace tabkit
