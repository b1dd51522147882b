#include "tabkit/column.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <set>
#include <unordered_set>

#include "tabkit/errors.hpp"

namespace tabkit {

namespace {

// Null cells are normalized to a default so that equality and hashing can
// look at raw storage.
template <typename T>
void blank_nulls(std::vector<T>& values, const Column::NullMask& nulls) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (nulls[i]) values[i] = T{};
    }
}

}  // namespace

Column::Column(std::string name, DType dtype,
               std::variant<IntData, FloatData, BoolData, StrData> data, NullMask nulls)
    : name_(std::move(name)), dtype_(dtype), data_(std::move(data)), null_mask_(std::move(nulls)) {
    if (name_.empty()) throw SchemaError("column name must be non-empty");
    const std::size_t n = size();
    if (null_mask_.empty()) {
        null_mask_.assign(n, 0);
    } else if (null_mask_.size() != n) {
        throw LengthMismatch("null mask length " + std::to_string(null_mask_.size()) +
                             " != value count " + std::to_string(n));
    }
    std::visit([&](auto& values) { blank_nulls(values, null_mask_); }, data_);
    if (dtype_ == DType::Float) {
        auto& values = std::get<FloatData>(data_);
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!null_mask_[i] && !std::isfinite(values[i])) {
                values[i] = 0.0;
                null_mask_[i] = 1;
            }
        }
    }
}

Column Column::ints(std::string name, IntData values, NullMask nulls) {
    return Column(std::move(name), DType::Int, std::move(values), std::move(nulls));
}

Column Column::floats(std::string name, FloatData values, NullMask nulls) {
    return Column(std::move(name), DType::Float, std::move(values), std::move(nulls));
}

Column Column::bools(std::string name, BoolData values, NullMask nulls) {
    return Column(std::move(name), DType::Bool, std::move(values), std::move(nulls));
}

Column Column::categorical(std::string name, StrData values, NullMask nulls) {
    return Column(std::move(name), DType::Categorical, std::move(values), std::move(nulls));
}

Column Column::datetimes(std::string name, IntData epoch_values, NullMask nulls) {
    return Column(std::move(name), DType::DateTime, std::move(epoch_values), std::move(nulls));
}

std::size_t Column::size() const {
    return std::visit([](const auto& values) { return values.size(); }, data_);
}

std::size_t Column::null_count() const {
    std::size_t count = 0;
    for (auto bit : null_mask_) count += bit;
    return count;
}

std::int64_t Column::int_at(std::size_t i) const {
    assert(dtype_ == DType::Int && !is_null(i));
    return std::get<IntData>(data_)[i];
}

double Column::float_at(std::size_t i) const {
    assert(dtype_ == DType::Float && !is_null(i));
    return std::get<FloatData>(data_)[i];
}

double Column::numeric_at(std::size_t i) const {
    assert(!is_null(i));
    if (dtype_ == DType::Int) return static_cast<double>(std::get<IntData>(data_)[i]);
    return std::get<FloatData>(data_)[i];
}

bool Column::bool_at(std::size_t i) const {
    assert(dtype_ == DType::Bool && !is_null(i));
    return std::get<BoolData>(data_)[i] != 0;
}

const std::string& Column::str_at(std::size_t i) const {
    assert(dtype_ == DType::Categorical && !is_null(i));
    return std::get<StrData>(data_)[i];
}

Timestamp Column::ts_at(std::size_t i) const {
    assert(dtype_ == DType::DateTime && !is_null(i));
    return Timestamp{std::get<IntData>(data_)[i]};
}

std::string Column::cell_text(std::size_t i) const {
    assert(!is_null(i));
    switch (dtype_) {
        case DType::Int: return std::to_string(int_at(i));
        case DType::Float: return format_double(float_at(i));
        case DType::Bool: return bool_at(i) ? "true" : "false";
        case DType::Categorical: return str_at(i);
        case DType::DateTime: return format_timestamp(ts_at(i));
    }
    return {};
}

Column Column::renamed(std::string new_name) const {
    Column copy = *this;
    if (new_name.empty()) throw SchemaError("column name must be non-empty");
    copy.name_ = std::move(new_name);
    return copy;
}

Column Column::with_nulls(NullMask nulls) const {
    return Column(name_, dtype_, data_, std::move(nulls));
}

Column Column::take(const std::vector<std::size_t>& rows) const {
    NullMask nulls(rows.size(), 0);
    for (std::size_t i = 0; i < rows.size(); ++i) nulls[i] = null_mask_[rows[i]];
    auto gather = [&](const auto& values) {
        std::decay_t<decltype(values)> out;
        out.reserve(rows.size());
        for (std::size_t row : rows) out.push_back(values[row]);
        return std::variant<IntData, FloatData, BoolData, StrData>(std::move(out));
    };
    return Column(name_, dtype_, std::visit(gather, data_), std::move(nulls));
}

std::size_t distinct_count(const Column& column) {
    const std::size_t n = column.size();
    switch (column.dtype()) {
        case DType::Int:
        case DType::DateTime: {
            std::unordered_set<std::int64_t> seen;
            for (std::size_t i = 0; i < n; ++i) {
                if (!column.is_null(i)) {
                    seen.insert(column.dtype() == DType::Int ? column.int_at(i)
                                                             : column.ts_at(i).epoch_s);
                }
            }
            return seen.size();
        }
        case DType::Float: {
            std::set<double> seen;
            for (std::size_t i = 0; i < n; ++i) {
                if (!column.is_null(i)) seen.insert(column.float_at(i));
            }
            return seen.size();
        }
        case DType::Bool: {
            bool saw[2] = {false, false};
            for (std::size_t i = 0; i < n; ++i) {
                if (!column.is_null(i)) saw[column.bool_at(i) ? 1 : 0] = true;
            }
            return static_cast<std::size_t>(saw[0]) + static_cast<std::size_t>(saw[1]);
        }
        case DType::Categorical: {
            std::unordered_set<std::string_view> seen;
            for (std::size_t i = 0; i < n; ++i) {
                if (!column.is_null(i)) seen.insert(column.str_at(i));
            }
            return seen.size();
        }
    }
    return 0;
}

std::vector<double> numeric_values(const Column& column) {
    std::vector<double> out;
    out.reserve(column.size());
    for (std::size_t i = 0; i < column.size(); ++i) {
        if (!column.is_null(i)) out.push_back(column.numeric_at(i));
    }
    return out;
}

std::string format_double(double value) {
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    std::string text(buf, end);
    if (text.find_first_of(".eE") == std::string::npos && text != "inf" && text != "-inf" &&
        text != "nan") {
        text += ".0";
    }
    return text;
}

}  // namespace tabkit
