#pragma once
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace tabkit {

struct CivilTime {
    int year = 1970;
    int month = 1;  // 1-12
    int day = 1;    // 1-31
    int hour = 0;
    int minute = 0;
    int second = 0;
    bool operator==(const CivilTime&) const = default;
};

// Seconds since 1970-01-01T00:00:00 UTC. All civil accessors work in UTC.
struct Timestamp {
    std::int64_t epoch_s = 0;
    CivilTime civil() const;
    static Timestamp from_civil(const CivilTime& ct);
    auto operator<=>(const Timestamp&) const = default;
};

bool is_leap_year(int year);
int days_in_month(int year, int month);

// Days since 1970-01-01 (negative before). Valid for the proleptic
// Gregorian calendar; exact over at least years 1-9999.
std::int64_t days_from_civil(int year, int month, int day);
CivilTime civil_from_days(std::int64_t days);
int day_of_year(int year, int month, int day);  // 1-366

// Accepted forms, tried in order:
//   YYYY-MM-DDTHH:MM:SS[.fff...][Z|+HH:MM|-HH:MM]
//   YYYY-MM-DD HH:MM:SS
//   YYYY-MM-DD
// Offsets are normalized to UTC; fractional seconds are discarded.
// Throws ParseError when no form matches and RangeError when a field is
// outside its calendar range (e.g. 2019-02-29).
Timestamp parse_timestamp(std::string_view text);

// Non-throwing form used by type inference and value coercion.
bool try_parse_timestamp(std::string_view text, Timestamp& out);

std::string format_timestamp(Timestamp ts);  // YYYY-MM-DDTHH:MM:SSZ
std::string format_date(Timestamp ts);       // YYYY-MM-DD

}  // namespace tabkit
