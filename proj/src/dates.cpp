#include "tabkit/dates.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "tabkit/errors.hpp"
#include "tabkit/prep.hpp"
#include "tabkit/stats.hpp"

namespace tabkit {

namespace {

constexpr std::array<std::string_view, 7> kDayNames = {
    "Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"};

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) { return a - floor_div(a, b) * b; }

}  // namespace

std::string_view day_of_week(Timestamp ts) {
    // Epoch day 0 (1970-01-01) is a Thursday, index 3 with Monday = 0.
    const std::int64_t days = floor_div(ts.epoch_s, 86400);
    return kDayNames[static_cast<std::size_t>(floor_mod(days + 3, 7))];
}

DateParts date_parts(Timestamp ts) {
    const CivilTime ct = ts.civil();
    DateParts parts;
    parts.dow = std::string(day_of_week(ts));
    parts.doy = day_of_year(ct.year, ct.month, ct.day);
    parts.dom = ct.day;
    parts.hr = ct.hour;
    parts.min = ct.minute;
    parts.is_wkd = (parts.dow == "Saturday" || parts.dow == "Sunday") ? 1 : 0;
    parts.yr = ct.year;
    parts.qtr = (ct.month + 2) / 3;
    parts.mth = ct.month;
    return parts;
}

Frame extract_dates(const Frame& frame, const std::vector<std::string>& date_cols,
                    bool keep_original) {
    std::vector<std::string> to_convert;
    for (const std::string& name : date_cols) {
        const Column& col = frame.column(name);
        if (is_numeric(col.dtype())) {
            throw WrongDType("extract_dates expects DateTime or text columns, got numeric '" +
                             name + "'");
        }
        if (col.dtype() != DType::DateTime) to_convert.push_back(name);
    }
    const Frame source = to_convert.empty() ? frame : to_date(frame, to_convert);

    std::vector<Column> out;
    for (const Column& col : source.columns()) {
        const bool wanted =
            std::find(date_cols.begin(), date_cols.end(), col.name()) != date_cols.end();
        if (!wanted) {
            out.push_back(col);
            continue;
        }
        if (keep_original) out.push_back(col);

        const std::size_t n = col.size();
        Column::NullMask nulls(n, 0);
        Column::StrData dow(n);
        std::array<Column::IntData, 8> fields;
        fields.fill(Column::IntData(n, 0));
        for (std::size_t i = 0; i < n; ++i) {
            if (col.is_null(i)) {
                nulls[i] = 1;
                continue;
            }
            const DateParts parts = date_parts(col.ts_at(i));
            dow[i] = parts.dow;
            fields[0][i] = parts.doy;
            fields[1][i] = parts.dom;
            fields[2][i] = parts.hr;
            fields[3][i] = parts.min;
            fields[4][i] = parts.is_wkd;
            fields[5][i] = parts.yr;
            fields[6][i] = parts.qtr;
            fields[7][i] = parts.mth;
        }
        const std::string& base = col.name();
        out.push_back(Column::categorical(base + "_dow", std::move(dow), nulls));
        static constexpr std::array<std::string_view, 8> suffixes = {
            "_doy", "_dom", "_hr", "_min", "_is_wkd", "_yr", "_qtr", "_mth"};
        for (std::size_t f = 0; f < suffixes.size(); ++f) {
            out.push_back(
                Column::ints(base + std::string(suffixes[f]), std::move(fields[f]), nulls));
        }
    }
    return Frame(std::move(out));
}

std::vector<TimeBucketSeries> timebucket_series(const Frame& frame,
                                                const std::vector<std::string>& num_cols,
                                                const std::string& time_col) {
    const Column& time = frame.column(time_col);
    if (time.dtype() != DType::DateTime) {
        throw WrongDType("time column '" + time_col + "' must be DateTime");
    }
    for (const std::string& name : num_cols) {
        if (!is_numeric(frame.column(name).dtype())) {
            throw WrongDType("timebucket column '" + name + "' must be numeric");
        }
    }

    std::vector<TimeBucketSeries> result;
    result.reserve(num_cols.size());
    for (const std::string& name : num_cols) {
        const Column& col = frame.column(name);
        std::map<std::int64_t, std::pair<double, std::size_t>> groups;  // day -> (sum, count)
        for (std::size_t i = 0; i < frame.n_rows(); ++i) {
            if (time.is_null(i) || col.is_null(i)) continue;
            const std::int64_t day = floor_div(time.ts_at(i).epoch_s, 86400);
            auto& slot = groups[day];
            slot.first += col.numeric_at(i);
            ++slot.second;
        }
        TimeBucketSeries series;
        series.feature = name;
        for (const auto& [day, agg] : groups) {
            series.buckets.push_back(Timestamp{day * 86400});
            series.values.push_back(agg.first / static_cast<double>(agg.second));
        }
        result.push_back(std::move(series));
    }
    return result;
}

}  // namespace tabkit
