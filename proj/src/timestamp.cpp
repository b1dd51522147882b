#include "tabkit/timestamp.hpp"

#include <array>
#include <cstdio>

#include "tabkit/errors.hpp"

namespace tabkit {

namespace {

constexpr std::int64_t kSecondsPerDay = 86400;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                    31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap_year(year)) return 29;
    return lengths[static_cast<std::size_t>(month - 1)];
}

std::int64_t days_from_civil(int year, int month, int day) {
    // Era-based conversion over the proleptic Gregorian calendar.
    std::int64_t y = year;
    y -= month <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned mp = static_cast<unsigned>(month + (month > 2 ? -3 : 9));
    const unsigned doy = (153 * mp + 2) / 5 + static_cast<unsigned>(day) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilTime civil_from_days(std::int64_t days) {
    const std::int64_t z = days + 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp < 10 ? mp + 3 : mp - 9;
    CivilTime ct;
    ct.year = static_cast<int>(y + (m <= 2));
    ct.month = static_cast<int>(m);
    ct.day = static_cast<int>(d);
    return ct;
}

int day_of_year(int year, int month, int day) {
    return static_cast<int>(days_from_civil(year, month, day) - days_from_civil(year, 1, 1)) + 1;
}

CivilTime Timestamp::civil() const {
    const std::int64_t days = floor_div(epoch_s, kSecondsPerDay);
    std::int64_t rest = epoch_s - days * kSecondsPerDay;
    CivilTime ct = civil_from_days(days);
    ct.hour = static_cast<int>(rest / 3600);
    rest %= 3600;
    ct.minute = static_cast<int>(rest / 60);
    ct.second = static_cast<int>(rest % 60);
    return ct;
}

Timestamp Timestamp::from_civil(const CivilTime& ct) {
    const std::int64_t days = days_from_civil(ct.year, ct.month, ct.day);
    return Timestamp{days * kSecondsPerDay + ct.hour * 3600 + ct.minute * 60 + ct.second};
}

namespace {

bool read_digits(std::string_view text, std::size_t& pos, int count, int& out) {
    if (pos + static_cast<std::size_t>(count) > text.size()) return false;
    int value = 0;
    for (int i = 0; i < count; ++i) {
        char c = text[pos + static_cast<std::size_t>(i)];
        if (c < '0' || c > '9') return false;
        value = value * 10 + (c - '0');
    }
    pos += static_cast<std::size_t>(count);
    out = value;
    return true;
}

bool expect(std::string_view text, std::size_t& pos, char c) {
    if (pos >= text.size() || text[pos] != c) return false;
    ++pos;
    return true;
}

enum class TsStatus { Ok, NoMatch, OutOfRange };

// Parses into ct/offset_s; does not range-check the date fields beyond
// digit structure except where noted.
TsStatus scan_timestamp(std::string_view text, CivilTime& ct, int& offset_s) {
    std::size_t pos = 0;
    offset_s = 0;
    if (!read_digits(text, pos, 4, ct.year)) return TsStatus::NoMatch;
    if (!expect(text, pos, '-')) return TsStatus::NoMatch;
    if (!read_digits(text, pos, 2, ct.month)) return TsStatus::NoMatch;
    if (!expect(text, pos, '-')) return TsStatus::NoMatch;
    if (!read_digits(text, pos, 2, ct.day)) return TsStatus::NoMatch;

    ct.hour = ct.minute = ct.second = 0;
    if (pos == text.size()) return TsStatus::Ok;  // date-only

    const char sep = text[pos];
    if (sep != 'T' && sep != ' ') return TsStatus::NoMatch;
    ++pos;
    if (!read_digits(text, pos, 2, ct.hour)) return TsStatus::NoMatch;
    if (!expect(text, pos, ':')) return TsStatus::NoMatch;
    if (!read_digits(text, pos, 2, ct.minute)) return TsStatus::NoMatch;
    if (!expect(text, pos, ':')) return TsStatus::NoMatch;
    if (!read_digits(text, pos, 2, ct.second)) return TsStatus::NoMatch;

    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::size_t digits = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            ++pos;
            ++digits;
        }
        if (digits == 0) return TsStatus::NoMatch;
    }

    if (pos == text.size()) return TsStatus::Ok;
    const char tail = text[pos];
    if (tail == 'Z') {
        ++pos;
    } else if (tail == '+' || tail == '-') {
        ++pos;
        int oh = 0, om = 0;
        if (!read_digits(text, pos, 2, oh)) return TsStatus::NoMatch;
        if (!expect(text, pos, ':')) return TsStatus::NoMatch;
        if (!read_digits(text, pos, 2, om)) return TsStatus::NoMatch;
        if (oh > 23 || om > 59) return TsStatus::OutOfRange;
        offset_s = (oh * 3600 + om * 60) * (tail == '+' ? 1 : -1);
    } else {
        return TsStatus::NoMatch;
    }
    return pos == text.size() ? TsStatus::Ok : TsStatus::NoMatch;
}

TsStatus parse_impl(std::string_view text, Timestamp& out) {
    CivilTime ct;
    int offset_s = 0;
    TsStatus status = scan_timestamp(text, ct, offset_s);
    if (status != TsStatus::Ok) return status;
    if (ct.month < 1 || ct.month > 12) return TsStatus::OutOfRange;
    if (ct.day < 1 || ct.day > days_in_month(ct.year, ct.month)) return TsStatus::OutOfRange;
    if (ct.hour > 23 || ct.minute > 59 || ct.second > 59) return TsStatus::OutOfRange;
    out = Timestamp{Timestamp::from_civil(ct).epoch_s - offset_s};
    return TsStatus::Ok;
}

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
    Timestamp out;
    switch (parse_impl(text, out)) {
        case TsStatus::Ok: return out;
        case TsStatus::OutOfRange: throw RangeError(std::string(text));
        case TsStatus::NoMatch: break;
    }
    throw ParseError(std::string(text));
}

bool try_parse_timestamp(std::string_view text, Timestamp& out) {
    return parse_impl(text, out) == TsStatus::Ok;
}

std::string format_timestamp(Timestamp ts) {
    const CivilTime ct = ts.civil();
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", ct.year, ct.month, ct.day,
                  ct.hour, ct.minute, ct.second);
    return buf;
}

std::string format_date(Timestamp ts) {
    const CivilTime ct = ts.civil();
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", ct.year, ct.month, ct.day);
    return buf;
}

}  // namespace tabkit
