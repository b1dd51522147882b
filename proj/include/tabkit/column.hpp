#pragma once
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tabkit/dtype.hpp"
#include "tabkit/timestamp.hpp"

namespace tabkit {

// One named, typed, nullable column. Cells under a set null bit are
// normalized to a default value and must not be read through the typed
// accessors. DateTime cells are stored as epoch seconds.
class Column {
public:
    using IntData = std::vector<std::int64_t>;
    using FloatData = std::vector<double>;
    using BoolData = std::vector<std::uint8_t>;
    using StrData = std::vector<std::string>;
    using NullMask = std::vector<std::uint8_t>;  // 1 = null

    static Column ints(std::string name, IntData values, NullMask nulls = {});
    static Column floats(std::string name, FloatData values, NullMask nulls = {});
    static Column bools(std::string name, BoolData values, NullMask nulls = {});
    static Column categorical(std::string name, StrData values, NullMask nulls = {});
    static Column datetimes(std::string name, IntData epoch_values, NullMask nulls = {});

    const std::string& name() const { return name_; }
    DType dtype() const { return dtype_; }
    std::size_t size() const;
    bool is_null(std::size_t i) const { return null_mask_[i] != 0; }
    const NullMask& null_mask() const { return null_mask_; }
    std::size_t null_count() const;
    std::size_t non_null_count() const { return size() - null_count(); }

    std::int64_t int_at(std::size_t i) const;
    double float_at(std::size_t i) const;
    double numeric_at(std::size_t i) const;  // Int or Float widened to double
    bool bool_at(std::size_t i) const;
    const std::string& str_at(std::size_t i) const;
    Timestamp ts_at(std::size_t i) const;

    // Display/serialization form of a non-null cell (Float uses shortest
    // round-trip decimal text).
    std::string cell_text(std::size_t i) const;

    Column renamed(std::string new_name) const;
    Column with_nulls(NullMask nulls) const;
    Column take(const std::vector<std::size_t>& rows) const;

    bool operator==(const Column& other) const = default;

private:
    Column(std::string name, DType dtype,
           std::variant<IntData, FloatData, BoolData, StrData> data, NullMask nulls);

    std::string name_;
    DType dtype_ = DType::Categorical;
    std::variant<IntData, FloatData, BoolData, StrData> data_;
    NullMask null_mask_;
};

// Number of distinct non-null values.
std::size_t distinct_count(const Column& column);

// Non-null numeric cells in row order (Int or Float columns).
std::vector<double> numeric_values(const Column& column);

// Shortest decimal text that parses back to exactly the same double;
// integral values carry a ".0" suffix so Float survives re-inference.
std::string format_double(double value);

}  // namespace tabkit
