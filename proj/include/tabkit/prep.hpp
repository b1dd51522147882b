#pragma once
#include <string>
#include <vector>

#include "tabkit/frame.hpp"

namespace tabkit {

enum class NumericFill { Mean, Median };

// Numeric nulls take the chosen statistic; categorical (and Bool) nulls take
// the mode, ties broken to the lexicographically smallest class.
struct FillStrategy {
    NumericFill numeric = NumericFill::Mean;
};

enum class EncodeMethod { Label, OneHot };

struct DropResult {
    Frame frame;
    std::vector<std::string> dropped;  // original column order
};

struct FillResult {
    Frame frame;
    std::vector<std::string> untouched;  // all-null columns that cannot be filled
};

// Lexicographic class order of one categorical column, frozen at fit time so
// train/test encodings agree.
struct LabelEncoding {
    std::string column;
    std::vector<std::string> classes;
    bool operator==(const LabelEncoding&) const = default;
};

// Drops every column with at most one distinct non-null value.
DropResult drop_redundant(const Frame& frame);

// `Dropped ['A', 'B']` line printed by the clean subcommand.
std::string dropped_display(const std::vector<std::string>& dropped);

FillResult fill_missing(const Frame& frame, FillStrategy strategy = {});

// Re-parses Categorical columns as timestamps; failures become null.
Frame to_date(const Frame& frame, const std::vector<std::string>& cols);

Frame encode_categorical(const Frame& frame, const std::vector<std::string>& cols,
                         EncodeMethod method);

// Sorted distinct non-null classes of a categorical/bool column.
std::vector<std::string> column_classes(const Column& column);

// Applies frozen class orders; classes unseen at fit time map to the index
// right past the known ones.
Frame apply_label_encodings(const Frame& frame, const std::vector<LabelEncoding>& encodings);

}  // namespace tabkit
