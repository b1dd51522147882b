#include "tabkit/profile.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "tabkit/timestamp.hpp"

namespace tabkit {

namespace {

using ordered_json = nlohmann::ordered_json;

bool looks_like_dates(const Column& column, std::size_t sample_cap = 1000) {
    std::size_t sampled = 0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < column.size() && sampled < sample_cap; ++i) {
        if (column.is_null(i)) continue;
        ++sampled;
        Timestamp ts;
        if (try_parse_timestamp(column.str_at(i), ts)) ++hits;
    }
    return sampled > 0 && hits * 20 >= sampled * 19;
}

ordered_json cell_json(const Column& col, std::size_t row) {
    if (col.is_null(row)) return nullptr;
    switch (col.dtype()) {
        case DType::Int: return col.int_at(row);
        case DType::Float: return col.float_at(row);
        case DType::Bool: return col.bool_at(row);
        case DType::Categorical: return col.str_at(row);
        case DType::DateTime: return format_timestamp(col.ts_at(row));
    }
    return nullptr;
}

ordered_json frame_to_json(const Frame& frame) {
    ordered_json out;
    out["n_rows"] = frame.n_rows();
    ordered_json cols = ordered_json::array();
    for (const Column& col : frame.columns()) {
        ordered_json jc;
        jc["name"] = col.name();
        jc["dtype"] = dtype_name(col.dtype());
        ordered_json values = ordered_json::array();
        for (std::size_t r = 0; r < col.size(); ++r) values.push_back(cell_json(col, r));
        jc["values"] = std::move(values);
        cols.push_back(std::move(jc));
    }
    out["columns"] = std::move(cols);
    return out;
}

ordered_json stats_to_json(const StatSummary& s) {
    ordered_json out;
    out["count"] = s.count;
    out["mean"] = s.mean;
    if (s.std_dev) {
        out["std"] = *s.std_dev;
    } else {
        out["std"] = nullptr;
    }
    out["min"] = s.min;
    out["q25"] = s.q25;
    out["q50"] = s.q50;
    out["q75"] = s.q75;
    out["max"] = s.max;
    return out;
}

ordered_json report_to_json(const DescribeReport& report) {
    ordered_json out;
    out["head"] = frame_to_json(report.head);
    out["tail"] = frame_to_json(report.tail);
    out["random"] = frame_to_json(report.random);
    out["shape"] = ordered_json::array({report.shape.first, report.shape.second});
    ordered_json dtypes;
    for (const auto& [name, dtype] : report.dtypes) dtypes[name] = dtype_name(dtype);
    out["dtypes"] = std::move(dtypes);
    ordered_json classes;
    classes["numerical"] = report.classes.numerical;
    classes["categorical"] = report.classes.categorical;
    classes["datetime"] = report.classes.datetime;
    classes["date_candidates"] = report.classes.date_candidates;
    out["classes"] = std::move(classes);
    ordered_json stats;
    for (const auto& [name, summary] : report.numeric_stats) stats[name] = stats_to_json(summary);
    out["numeric_stats"] = std::move(stats);
    ordered_json unique = ordered_json::array();
    for (const UniqueRow& row : report.unique) {
        unique.push_back({{"feature", row.feature}, {"unique_count", row.unique_count}});
    }
    out["unique"] = std::move(unique);
    ordered_json missing = ordered_json::array();
    for (const MissingRow& row : report.missing) {
        missing.push_back({{"feature", row.feature},
                           {"missing_count", row.missing_count},
                           {"missing_percent", row.missing_percent}});
    }
    out["missing"] = std::move(missing);
    out["notes"] = report.notes;
    return out;
}

std::string md_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == '|') out += "\\|";
        else if (c == '\n') out += ' ';
        else out += c;
    }
    return out;
}

void frame_to_markdown(std::ostream& os, const Frame& frame) {
    if (frame.n_cols() == 0) {
        os << "(empty)\n";
        return;
    }
    os << "|";
    for (const Column& col : frame.columns()) os << " " << md_escape(col.name()) << " |";
    os << "\n|";
    for (std::size_t c = 0; c < frame.n_cols(); ++c) os << " --- |";
    os << "\n";
    for (std::size_t r = 0; r < frame.n_rows(); ++r) {
        os << "|";
        for (const Column& col : frame.columns()) {
            os << " " << (col.is_null(r) ? "" : md_escape(col.cell_text(r))) << " |";
        }
        os << "\n";
    }
}

void frame_to_text(std::ostream& os, const Frame& frame) {
    if (frame.n_cols() == 0) {
        os << "(empty)\n";
        return;
    }
    std::vector<std::size_t> widths(frame.n_cols());
    std::vector<std::vector<std::string>> cells(frame.n_rows());
    for (std::size_t c = 0; c < frame.n_cols(); ++c) {
        widths[c] = frame.column(c).name().size();
    }
    for (std::size_t r = 0; r < frame.n_rows(); ++r) {
        cells[r].resize(frame.n_cols());
        for (std::size_t c = 0; c < frame.n_cols(); ++c) {
            const Column& col = frame.column(c);
            cells[r][c] = col.is_null(r) ? "" : col.cell_text(r);
            widths[c] = std::max(widths[c], cells[r][c].size());
        }
    }
    for (std::size_t c = 0; c < frame.n_cols(); ++c) {
        os << std::left << std::setw(static_cast<int>(widths[c]) + 2) << frame.column(c).name();
    }
    os << "\n";
    for (std::size_t r = 0; r < frame.n_rows(); ++r) {
        for (std::size_t c = 0; c < frame.n_cols(); ++c) {
            os << std::left << std::setw(static_cast<int>(widths[c]) + 2) << cells[r][c];
        }
        os << "\n";
    }
}

std::string fmt_stat(double v) { return format_double(v); }

}  // namespace

FeatureClasses classify_features(const Frame& frame) {
    FeatureClasses classes;
    for (const Column& col : frame.columns()) {
        switch (col.dtype()) {
            case DType::Int:
            case DType::Float:
                classes.numerical.push_back(col.name());
                break;
            case DType::DateTime:
                classes.datetime.push_back(col.name());
                break;
            case DType::Bool:
                classes.categorical.push_back(col.name());
                break;
            case DType::Categorical:
                classes.categorical.push_back(col.name());
                if (looks_like_dates(col)) classes.date_candidates.push_back(col.name());
                break;
        }
    }
    return classes;
}

UniqueReport unique_counts(const Frame& frame) {
    UniqueReport report;
    for (const Column& col : frame.columns()) {
        if (col.dtype() == DType::Categorical || col.dtype() == DType::Bool) {
            report.push_back(UniqueRow{col.name(), distinct_count(col)});
        }
    }
    return report;
}

MissingReport missing_report(const Frame& frame) {
    MissingReport report;
    const std::size_t n = frame.n_rows();
    for (const Column& col : frame.columns()) {
        const std::size_t missing = col.null_count();
        const double percent =
            n == 0 ? 0.0 : 100.0 * static_cast<double>(missing) / static_cast<double>(n);
        report.push_back(MissingRow{col.name(), missing, percent});
    }
    return report;
}

DescribeReport describe(const Frame& frame, std::uint64_t seed) {
    DescribeReport report;
    report.head = slice_rows(frame, SliceMode::Head, 5);
    report.tail = slice_rows(frame, SliceMode::Tail, 5);
    report.random = slice_rows(frame, SliceMode::Sample, 5, seed);
    report.shape = {frame.n_rows(), frame.n_cols()};
    for (const Column& col : frame.columns()) report.dtypes.emplace_back(col.name(), col.dtype());
    report.classes = classify_features(frame);

    // Per-column work is independent; slots keep the output order fixed so
    // the result matches a sequential run exactly.
    const std::size_t n_cols = frame.n_cols();
    std::vector<StatSummary> stats(n_cols);
    std::vector<std::uint8_t> has_stats(n_cols, 0);
    std::vector<std::size_t> uniques(n_cols, 0);
    std::vector<std::uint8_t> is_cat(n_cols, 0);
    std::vector<MissingRow> missing(n_cols);

#pragma omp parallel for schedule(dynamic)
    for (long long ci = 0; ci < static_cast<long long>(n_cols); ++ci) {
        const std::size_t c = static_cast<std::size_t>(ci);
        const Column& col = frame.column(c);
        if (is_numeric(col.dtype()) && col.non_null_count() > 0) {
            stats[c] = summary_stats(col);
            has_stats[c] = 1;
        }
        if (col.dtype() == DType::Categorical || col.dtype() == DType::Bool) {
            uniques[c] = distinct_count(col);
            is_cat[c] = 1;
        }
        const std::size_t nulls = col.null_count();
        missing[c] = MissingRow{
            col.name(), nulls,
            frame.n_rows() == 0
                ? 0.0
                : 100.0 * static_cast<double>(nulls) / static_cast<double>(frame.n_rows())};
    }

    for (std::size_t c = 0; c < n_cols; ++c) {
        if (has_stats[c]) report.numeric_stats.emplace_back(frame.column(c).name(), stats[c]);
        if (is_cat[c]) report.unique.push_back(UniqueRow{frame.column(c).name(), uniques[c]});
        report.missing.push_back(missing[c]);
    }
    for (const std::string& name : report.classes.date_candidates) {
        report.notes.push_back("column '" + name +
                               "' holds timestamp-like text; convert it with to_date before "
                               "extracting date features");
    }
    return report;
}

std::string frame_json(const Frame& frame) { return frame_to_json(frame).dump(2); }

std::string frame_markdown(const Frame& frame) {
    std::ostringstream os;
    frame_to_markdown(os, frame);
    return os.str();
}

std::string describe_json(const DescribeReport& report) { return report_to_json(report).dump(2); }

std::string describe_markdown(const DescribeReport& report) {
    std::ostringstream os;
    os << "# Dataset profile\n\n";
    os << "## First five rows\n\n";
    frame_to_markdown(os, report.head);
    os << "\n## Last five rows\n\n";
    frame_to_markdown(os, report.tail);
    os << "\n## Random five rows\n\n";
    frame_to_markdown(os, report.random);
    os << "\n## Shape\n\n"
       << report.shape.first << " rows x " << report.shape.second << " columns\n";
    os << "\n## Data types\n\n| column | dtype |\n| --- | --- |\n";
    for (const auto& [name, dtype] : report.dtypes) {
        os << "| " << md_escape(name) << " | " << dtype_name(dtype) << " |\n";
    }
    os << "\n## Feature classes\n\n";
    auto list = [&os](const char* label, const std::vector<std::string>& names) {
        os << "- " << label << ":";
        for (const std::string& n : names) os << " " << n;
        os << "\n";
    };
    list("numerical", report.classes.numerical);
    list("categorical", report.classes.categorical);
    list("datetime", report.classes.datetime);
    list("date candidates", report.classes.date_candidates);
    os << "\n## Numeric summary\n\n";
    os << "| column | count | mean | std | min | q25 | q50 | q75 | max |\n";
    os << "| --- | --- | --- | --- | --- | --- | --- | --- | --- |\n";
    for (const auto& [name, s] : report.numeric_stats) {
        os << "| " << md_escape(name) << " | " << s.count << " | " << fmt_stat(s.mean) << " | "
           << (s.std_dev ? fmt_stat(*s.std_dev) : "") << " | " << fmt_stat(s.min) << " | "
           << fmt_stat(s.q25) << " | " << fmt_stat(s.q50) << " | " << fmt_stat(s.q75) << " | "
           << fmt_stat(s.max) << " |\n";
    }
    os << "\n## Unique classes of categorical features\n\n| feature | unique_count |\n| --- | --- |\n";
    for (const UniqueRow& row : report.unique) {
        os << "| " << md_escape(row.feature) << " | " << row.unique_count << " |\n";
    }
    os << "\n## Missing values\n\n| feature | missing_count | missing_percent |\n| --- | --- | --- |\n";
    for (const MissingRow& row : report.missing) {
        os << "| " << md_escape(row.feature) << " | " << row.missing_count << " | "
           << fmt_stat(row.missing_percent) << " |\n";
    }
    if (!report.notes.empty()) {
        os << "\n## Notes\n\n";
        for (const std::string& note : report.notes) os << "- " << note << "\n";
    }
    return os.str();
}

std::string describe_text(const DescribeReport& report) {
    std::ostringstream os;
    os << "First five rows\n";
    frame_to_text(os, report.head);
    os << "\nLast five rows\n";
    frame_to_text(os, report.tail);
    os << "\nRandom five rows\n";
    frame_to_text(os, report.random);
    os << "\nShape: " << report.shape.first << " rows x " << report.shape.second << " columns\n";
    os << "\nData types\n";
    for (const auto& [name, dtype] : report.dtypes) {
        os << "  " << name << ": " << dtype_name(dtype) << "\n";
    }
    auto list = [&os](const char* label, const std::vector<std::string>& names) {
        os << label << ":";
        for (const std::string& n : names) os << " " << n;
        os << "\n";
    };
    os << "\n";
    list("Numerical features", report.classes.numerical);
    list("Categorical features", report.classes.categorical);
    list("Datetime features", report.classes.datetime);
    os << "\nStatistical description of numeric columns\n";
    os << "  column  count  mean  std  min  q25  q50  q75  max\n";
    for (const auto& [name, s] : report.numeric_stats) {
        os << "  " << name << "  " << s.count << "  " << fmt_stat(s.mean) << "  "
           << (s.std_dev ? fmt_stat(*s.std_dev) : "null") << "  " << fmt_stat(s.min) << "  "
           << fmt_stat(s.q25) << "  " << fmt_stat(s.q50) << "  " << fmt_stat(s.q75) << "  "
           << fmt_stat(s.max) << "\n";
    }
    os << "\nUnique class count of categorical features\n";
    for (const UniqueRow& row : report.unique) {
        os << "  " << row.feature << "  " << row.unique_count << "\n";
    }
    os << "\nMissing values\n";
    for (const MissingRow& row : report.missing) {
        os << "  " << row.feature << "  " << row.missing_count << "  "
           << fmt_stat(row.missing_percent) << "\n";
    }
    for (const std::string& note : report.notes) os << "\nNote: " << note << "\n";
    return os.str();
}

}  // namespace tabkit
