#include "tabkit/plot.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"
#include "tabkit/errors.hpp"
#include "tabkit/stats.hpp"

namespace tabkit {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::size_t kMaxBarClasses = 30;
constexpr std::size_t kMaxTargetClasses = 10;

bool is_categorical_like(const Column& col) {
    return col.dtype() == DType::Categorical || col.dtype() == DType::Bool;
}

std::string display_value(const Column& col, std::size_t row) {
    return col.cell_text(row);
}

// (label, count) pairs sorted by descending count, ties lexicographic.
std::vector<std::pair<std::string, std::size_t>> class_counts(const Column& col) {
    std::map<std::string, std::size_t> counts;
    for (std::size_t i = 0; i < col.size(); ++i) {
        if (!col.is_null(i)) ++counts[display_value(col, i)];
    }
    std::vector<std::pair<std::string, std::size_t>> out(counts.begin(), counts.end());
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

PlotSpec count_bar_for(const Column& col) {
    PlotSpec spec;
    spec.kind = PlotKind::CountBar;
    spec.title = col.name();
    spec.x_label = col.name();
    spec.y_label = "count";
    BarSeries series;
    for (const auto& [label, count] : class_counts(col)) {
        series.labels.push_back(label);
        series.heights.push_back(static_cast<double>(count));
    }
    spec.series = std::move(series);
    return spec;
}

ordered_json series_json(const PlotSpec& spec) {
    ordered_json out;
    switch (spec.kind) {
        case PlotKind::CountBar: {
            const auto& s = std::get<BarSeries>(spec.series);
            out["labels"] = s.labels;
            out["heights"] = s.heights;
            break;
        }
        case PlotKind::GroupedBar: {
            const auto& s = std::get<GroupedBarSeries>(spec.series);
            out["group_labels"] = s.group_labels;
            out["series_names"] = s.series_names;
            out["heights"] = s.heights;
            break;
        }
        case PlotKind::Histogram: {
            const auto& s = std::get<HistogramSeries>(spec.series);
            out["edges"] = s.edges;
            out["counts"] = s.counts;
            break;
        }
        case PlotKind::Box: {
            const auto& s = std::get<BoxStats>(spec.series);
            out["q25"] = s.q25;
            out["q50"] = s.q50;
            out["q75"] = s.q75;
            out["whisker_low"] = s.whisker_low;
            out["whisker_high"] = s.whisker_high;
            out["outliers"] = s.outliers;
            break;
        }
        case PlotKind::Line: {
            const auto& s = std::get<LineSeries>(spec.series);
            std::vector<std::string> dates;
            dates.reserve(s.x.size());
            for (Timestamp ts : s.x) dates.push_back(format_date(ts));
            out["dates"] = dates;
            out["values"] = s.y;
            break;
        }
        case PlotKind::Heatmap: {
            const auto& s = std::get<HeatmapSeries>(spec.series);
            out["row_labels"] = s.row_labels;
            out["col_labels"] = s.col_labels;
            out["cells"] = s.cells;
            break;
        }
    }
    return out;
}

}  // namespace

std::string_view plot_kind_name(PlotKind kind) {
    switch (kind) {
        case PlotKind::CountBar: return "count_bar";
        case PlotKind::GroupedBar: return "grouped_bar";
        case PlotKind::Histogram: return "histogram";
        case PlotKind::Box: return "box";
        case PlotKind::Line: return "line";
        case PlotKind::Heatmap: return "heatmap";
    }
    return "count_bar";
}

std::vector<PlotSpec> countplot_spec(const Frame& frame, const std::vector<std::string>& cat_cols) {
    std::vector<PlotSpec> specs;
    if (cat_cols.empty()) {
        for (const Column& col : frame.columns()) {
            if (is_categorical_like(col) && distinct_count(col) <= kMaxBarClasses) {
                specs.push_back(count_bar_for(col));
            }
        }
        return specs;
    }
    for (const std::string& name : cat_cols) {
        const Column& col = frame.column(name);
        if (!is_categorical_like(col)) {
            throw WrongDType("countplot expects categorical columns, got '" + name + "'");
        }
        specs.push_back(count_bar_for(col));
    }
    return specs;
}

std::vector<PlotSpec> catbox_spec(const Frame& frame, const std::string& target) {
    const Column& target_col = frame.column(target);
    if (!is_categorical_like(target_col)) {
        if (target_col.dtype() != DType::Int || distinct_count(target_col) > kMaxTargetClasses) {
            throw WrongDType("catbox target '" + target +
                             "' must be categorical or an Int column with few classes");
        }
    }

    // Target class display values, sorted; Int targets sort numerically.
    std::vector<std::string> target_classes;
    if (target_col.dtype() == DType::Int) {
        std::vector<std::int64_t> distinct;
        for (std::size_t i = 0; i < target_col.size(); ++i) {
            if (!target_col.is_null(i)) distinct.push_back(target_col.int_at(i));
        }
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (auto v : distinct) target_classes.push_back(std::to_string(v));
    } else {
        for (std::size_t i = 0; i < target_col.size(); ++i) {
            if (!target_col.is_null(i)) target_classes.push_back(display_value(target_col, i));
        }
        std::sort(target_classes.begin(), target_classes.end());
        target_classes.erase(std::unique(target_classes.begin(), target_classes.end()),
                             target_classes.end());
    }

    std::vector<PlotSpec> specs;
    for (const Column& col : frame.columns()) {
        if (col.name() == target || !is_categorical_like(col)) continue;
        if (distinct_count(col) > kMaxBarClasses) continue;

        std::vector<std::string> groups;
        for (std::size_t i = 0; i < col.size(); ++i) {
            if (!col.is_null(i)) groups.push_back(display_value(col, i));
        }
        std::sort(groups.begin(), groups.end());
        groups.erase(std::unique(groups.begin(), groups.end()), groups.end());

        std::map<std::pair<std::string, std::string>, std::size_t> table;
        for (std::size_t i = 0; i < col.size(); ++i) {
            if (col.is_null(i) || target_col.is_null(i)) continue;
            ++table[{display_value(col, i), display_value(target_col, i)}];
        }

        GroupedBarSeries series;
        series.group_labels = groups;
        series.series_names = target_classes;
        series.heights.assign(target_classes.size(), std::vector<double>(groups.size(), 0.0));
        for (std::size_t s = 0; s < target_classes.size(); ++s) {
            for (std::size_t g = 0; g < groups.size(); ++g) {
                const auto it = table.find({groups[g], target_classes[s]});
                if (it != table.end()) series.heights[s][g] = static_cast<double>(it->second);
            }
        }

        PlotSpec spec;
        spec.kind = PlotKind::GroupedBar;
        spec.title = col.name() + " by " + target;
        spec.x_label = col.name();
        spec.y_label = "count";
        spec.series = std::move(series);
        specs.push_back(std::move(spec));
    }
    return specs;
}

namespace {

PlotSpec histogram_for(const Column& col, std::size_t bins) {
    std::vector<double> values = numeric_values(col);
    if (values.empty()) throw EmptyColumn(col.name());
    const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *min_it;
    const double hi = *max_it;

    HistogramSeries series;
    if (lo == hi) {
        // Constant column: a single bin centered on the value.
        series.edges = {lo - 0.5, lo + 0.5};
        series.counts = {values.size()};
    } else {
        const double width = (hi - lo) / static_cast<double>(bins);
        series.edges.resize(bins + 1);
        for (std::size_t i = 0; i <= bins; ++i) {
            series.edges[i] = lo + static_cast<double>(i) * width;
        }
        series.edges[bins] = hi;
        series.counts.assign(bins, 0);
        for (double v : values) {
            auto idx = static_cast<std::size_t>((v - lo) / width);
            if (idx >= bins) idx = bins - 1;  // rightmost bin closed
            ++series.counts[idx];
        }
    }

    PlotSpec spec;
    spec.kind = PlotKind::Histogram;
    spec.title = col.name();
    spec.x_label = col.name();
    spec.y_label = "count";
    spec.series = std::move(series);
    return spec;
}

}  // namespace

std::vector<PlotSpec> histogram_spec(const Frame& frame, const std::vector<std::string>& num_cols,
                                     std::size_t bins) {
    if (bins < 1) throw SchemaError("histogram needs bins >= 1");
    std::vector<PlotSpec> specs;
    if (num_cols.empty()) {
        for (const Column& col : frame.columns()) {
            if (is_numeric(col.dtype()) && col.non_null_count() > 0) {
                specs.push_back(histogram_for(col, bins));
            }
        }
        return specs;
    }
    for (const std::string& name : num_cols) {
        const Column& col = frame.column(name);
        if (!is_numeric(col.dtype())) {
            throw WrongDType("histogram expects numeric columns, got '" + name + "'");
        }
        specs.push_back(histogram_for(col, bins));
    }
    return specs;
}

PlotSpec boxplot_spec(const Column& column) {
    if (!is_numeric(column.dtype())) {
        throw WrongDType("boxplot expects a numeric column, got '" + column.name() + "'");
    }
    std::vector<double> values = numeric_values(column);
    if (values.empty()) throw EmptyColumn(column.name());
    std::sort(values.begin(), values.end());

    BoxStats stats;
    stats.q25 = quantile_sorted(values, 0.25);
    stats.q50 = quantile_sorted(values, 0.50);
    stats.q75 = quantile_sorted(values, 0.75);
    const double iqr = stats.q75 - stats.q25;
    const double fence_low = stats.q25 - 1.5 * iqr;
    const double fence_high = stats.q75 + 1.5 * iqr;
    stats.whisker_low = stats.q25;
    stats.whisker_high = stats.q75;
    for (double v : values) {
        if (v >= fence_low) {
            stats.whisker_low = v;  // first in-sorted-order value inside the fence
            break;
        }
    }
    for (auto it = values.rbegin(); it != values.rend(); ++it) {
        if (*it <= fence_high) {
            stats.whisker_high = *it;
            break;
        }
    }
    for (double v : values) {
        if (v < stats.whisker_low || v > stats.whisker_high) stats.outliers.push_back(v);
    }

    PlotSpec spec;
    spec.kind = PlotKind::Box;
    spec.title = column.name();
    spec.y_label = column.name();
    spec.series = std::move(stats);
    return spec;
}

std::vector<PlotSpec> timeplot_spec(const std::vector<TimeBucketSeries>& series) {
    if (series.empty()) throw SchemaError("timeplot needs at least one series");
    std::vector<PlotSpec> specs;
    specs.reserve(series.size());
    for (const TimeBucketSeries& s : series) {
        PlotSpec spec;
        spec.kind = PlotKind::Line;
        spec.title = s.feature;
        spec.x_label = "date";
        spec.y_label = "mean " + s.feature;
        LineSeries line;
        line.x = s.buckets;
        line.y = s.values;
        spec.series = std::move(line);
        specs.push_back(std::move(spec));
    }
    return specs;
}

PlotSpec bar_spec(std::string title, std::vector<std::string> labels, std::vector<double> heights,
                  std::string x_label, std::string y_label) {
    PlotSpec spec;
    spec.kind = PlotKind::CountBar;
    spec.title = std::move(title);
    spec.x_label = std::move(x_label);
    spec.y_label = std::move(y_label);
    BarSeries series;
    series.labels = std::move(labels);
    series.heights = std::move(heights);
    spec.series = std::move(series);
    return spec;
}

PlotSpec heatmap_spec(std::string title, std::vector<std::string> row_labels,
                      std::vector<std::string> col_labels,
                      std::vector<std::vector<double>> cells) {
    PlotSpec spec;
    spec.kind = PlotKind::Heatmap;
    spec.title = std::move(title);
    HeatmapSeries series;
    series.row_labels = std::move(row_labels);
    series.col_labels = std::move(col_labels);
    series.cells = std::move(cells);
    spec.series = std::move(series);
    return spec;
}

std::string plot_spec_json(const PlotSpec& spec) {
    ordered_json out;
    out["kind"] = plot_kind_name(spec.kind);
    out["title"] = spec.title;
    out["width"] = spec.width;
    out["height"] = spec.height;
    out["x_label"] = spec.x_label;
    out["y_label"] = spec.y_label;
    out["series"] = series_json(spec);
    return out.dump(2);
}

}  // namespace tabkit
