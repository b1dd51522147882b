#pragma once
#include <string>
#include <variant>
#include <vector>

#include "tabkit/dates.hpp"
#include "tabkit/frame.hpp"

namespace tabkit {

enum class PlotKind { CountBar, GroupedBar, Histogram, Box, Line, Heatmap };

std::string_view plot_kind_name(PlotKind kind);  // "count_bar", ...

struct BarSeries {
    std::vector<std::string> labels;
    std::vector<double> heights;  // >= 0
};

struct GroupedBarSeries {
    std::vector<std::string> group_labels;
    std::vector<std::string> series_names;
    // heights[s][g] = count of series s in group g
    std::vector<std::vector<double>> heights;
};

struct HistogramSeries {
    std::vector<double> edges;  // strictly increasing, bins + 1 entries
    std::vector<std::size_t> counts;
};

struct BoxStats {
    double q25 = 0, q50 = 0, q75 = 0;
    double whisker_low = 0;   // smallest value >= q25 - 1.5*IQR
    double whisker_high = 0;  // largest value <= q75 + 1.5*IQR
    std::vector<double> outliers;
};

struct LineSeries {
    std::vector<Timestamp> x;  // ascending day timestamps
    std::vector<double> y;
};

struct HeatmapSeries {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<std::vector<double>> cells;  // cells[row][col]
};

// Renderer-independent chart description; every number here is testable
// without producing an image.
struct PlotSpec {
    PlotKind kind = PlotKind::CountBar;
    std::string title;
    int width = 500;
    int height = 500;
    std::string x_label;
    std::string y_label;
    std::variant<BarSeries, GroupedBarSeries, HistogramSeries, BoxStats, LineSeries,
                 HeatmapSeries>
        series;
};

// One count_bar per categorical column; defaults to columns with <= 30
// classes. Bars sorted by descending count, ties lexicographic; nulls
// excluded.
std::vector<PlotSpec> countplot_spec(const Frame& frame,
                                     const std::vector<std::string>& cat_cols = {});

// Per eligible categorical feature: grouped_bar of per-class counts split
// by target class. Target must be categorical/bool or Int with <= 10
// classes.
std::vector<PlotSpec> catbox_spec(const Frame& frame, const std::string& target);

// Equal-width bins over [min, max] of non-null values; rightmost bin is
// closed on both ends.
std::vector<PlotSpec> histogram_spec(const Frame& frame,
                                     const std::vector<std::string>& num_cols = {},
                                     std::size_t bins = 5);

PlotSpec boxplot_spec(const Column& column);

std::vector<PlotSpec> timeplot_spec(const std::vector<TimeBucketSeries>& series);

// Generic builders used for importance bars and confusion heatmaps.
PlotSpec bar_spec(std::string title, std::vector<std::string> labels,
                  std::vector<double> heights, std::string x_label, std::string y_label);
PlotSpec heatmap_spec(std::string title, std::vector<std::string> row_labels,
                      std::vector<std::string> col_labels,
                      std::vector<std::vector<double>> cells);

// JSON with stable key order: kind, title, width, height, x_label, y_label,
// series.
std::string plot_spec_json(const PlotSpec& spec);

}  // namespace tabkit
