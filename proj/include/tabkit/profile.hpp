#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tabkit/frame.hpp"
#include "tabkit/stats.hpp"

namespace tabkit {

// numerical / categorical / datetime partition all columns; date_candidates
// flags Categorical columns whose values look like timestamps.
struct FeatureClasses {
    std::vector<std::string> numerical;
    std::vector<std::string> categorical;
    std::vector<std::string> datetime;
    std::vector<std::string> date_candidates;
    bool operator==(const FeatureClasses&) const = default;
};

struct MissingRow {
    std::string feature;
    std::size_t missing_count = 0;
    double missing_percent = 0.0;  // 100 * missing / n_rows, 0 for empty frames
    bool operator==(const MissingRow&) const = default;
};
using MissingReport = std::vector<MissingRow>;

struct UniqueRow {
    std::string feature;
    std::size_t unique_count = 0;  // distinct non-null classes
    bool operator==(const UniqueRow&) const = default;
};
using UniqueReport = std::vector<UniqueRow>;

struct DescribeReport {
    Frame head;    // first <= 5 rows
    Frame tail;    // last <= 5 rows
    Frame random;  // seeded sample of <= 5 rows
    std::pair<std::size_t, std::size_t> shape;  // (rows, cols)
    std::vector<std::pair<std::string, DType>> dtypes;
    FeatureClasses classes;
    std::vector<std::pair<std::string, StatSummary>> numeric_stats;
    UniqueReport unique;
    MissingReport missing;
    std::vector<std::string> notes;
};

FeatureClasses classify_features(const Frame& frame);
UniqueReport unique_counts(const Frame& frame);
MissingReport missing_report(const Frame& frame);
DescribeReport describe(const Frame& frame, std::uint64_t seed = 0);

// Stable key order: head, tail, random, shape, dtypes, classes,
// numeric_stats, unique, missing, notes.
std::string describe_json(const DescribeReport& report);
std::string describe_markdown(const DescribeReport& report);
std::string describe_text(const DescribeReport& report);

// Frame serialization shared by the report writers.
std::string frame_json(const Frame& frame);
std::string frame_markdown(const Frame& frame);

}  // namespace tabkit
