#pragma once
#include <string>
#include <string_view>
#include <vector>

#include "tabkit/frame.hpp"
#include "tabkit/timestamp.hpp"

namespace tabkit {

// The nine derived calendar fields, in the order they are appended.
struct DateParts {
    std::string dow;  // Monday..Sunday
    int doy = 1;      // 1-366
    int dom = 1;      // 1-31
    int hr = 0;
    int min = 0;
    int is_wkd = 0;  // 1 iff Saturday or Sunday
    int yr = 1970;
    int qtr = 1;  // ceil(month / 3)
    int mth = 1;
};

std::string_view day_of_week(Timestamp ts);
DateParts date_parts(Timestamp ts);

// For each named column C appends C_dow, C_doy, C_dom, C_hr, C_min,
// C_is_wkd, C_yr, C_qtr, C_mth and drops C (unless keep_original).
// Categorical columns are converted via to_date first; null timestamps
// yield null parts.
Frame extract_dates(const Frame& frame, const std::vector<std::string>& date_cols,
                    bool keep_original = false);

struct TimeBucketSeries {
    std::string feature;
    std::vector<Timestamp> buckets;  // strictly increasing UTC day starts
    std::vector<double> values;      // per-day mean over non-null cells
};

// Rows grouped by UTC calendar day of time_col; days with no rows (or no
// non-null cells of a feature) are absent.
std::vector<TimeBucketSeries> timebucket_series(const Frame& frame,
                                                const std::vector<std::string>& num_cols,
                                                const std::string& time_col);

}  // namespace tabkit
