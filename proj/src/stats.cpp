#include "tabkit/stats.hpp"

#include <algorithm>
#include <cmath>

#include "tabkit/errors.hpp"

namespace tabkit {

double kahan_sum(const std::vector<double>& values) {
    double sum = 0.0;
    double carry = 0.0;
    for (double v : values) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double quantile_sorted(const std::vector<double>& sorted_values, double p) {
    const std::size_t n = sorted_values.size();
    if (n == 1) return sorted_values[0];
    const double pos = p * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= n) return sorted_values[n - 1];
    return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo]);
}

StatSummary summary_stats(std::vector<double> values) {
    StatSummary s;
    s.count = values.size();
    if (s.count == 0) return s;

    s.mean = kahan_sum(values) / static_cast<double>(s.count);
    if (s.count >= 2) {
        std::vector<double> sq;
        sq.reserve(values.size());
        for (double v : values) {
            const double d = v - s.mean;
            sq.push_back(d * d);
        }
        s.std_dev = std::sqrt(kahan_sum(sq) / static_cast<double>(s.count - 1));
    }

    std::sort(values.begin(), values.end());
    s.min = values.front();
    s.max = values.back();
    s.q25 = quantile_sorted(values, 0.25);
    s.q50 = quantile_sorted(values, 0.50);
    s.q75 = quantile_sorted(values, 0.75);
    return s;
}

StatSummary summary_stats(const Column& column) {
    if (!is_numeric(column.dtype())) {
        throw WrongDType("summary_stats needs an Int or Float column, got '" +
                         std::string(dtype_name(column.dtype())) + "' for '" + column.name() +
                         "'");
    }
    std::vector<double> values = numeric_values(column);
    if (values.empty()) throw EmptyColumn(column.name());
    return summary_stats(std::move(values));
}

}  // namespace tabkit
