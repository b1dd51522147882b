#pragma once
#include <optional>
#include <vector>

#include "tabkit/column.hpp"

namespace tabkit {

struct StatSummary {
    std::size_t count = 0;
    double mean = 0;
    std::optional<double> std_dev;  // sample std (n-1 divisor); empty when count < 2
    double min = 0;
    double q25 = 0;
    double q50 = 0;
    double q75 = 0;
    double max = 0;
    bool operator==(const StatSummary&) const = default;
};

double kahan_sum(const std::vector<double>& values);

// Linear interpolation between closest ranks: position p*(n-1) on the
// sorted sample, value v[lo] + frac * (v[lo+1] - v[lo]).
double quantile_sorted(const std::vector<double>& sorted_values, double p);

StatSummary summary_stats(std::vector<double> values);  // non-null values, any order
StatSummary summary_stats(const Column& column);        // Int|Float; throws EmptyColumn

}  // namespace tabkit
