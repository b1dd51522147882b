#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tabkit/column.hpp"

namespace tabkit {

// Immutable columnar table: equal-length columns with unique names.
// Every transforming operation returns a new Frame.
class Frame {
public:
    Frame() = default;
    explicit Frame(std::vector<Column> columns);

    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_cols() const { return columns_.size(); }
    const std::vector<Column>& columns() const { return columns_; }
    const Column& column(std::size_t i) const { return columns_[i]; }
    const Column& column(const std::string& name) const;  // throws UnknownColumn
    std::optional<std::size_t> find(const std::string& name) const;
    bool has_column(const std::string& name) const { return find(name).has_value(); }
    std::vector<std::string> column_names() const;

    bool operator==(const Frame& other) const = default;

private:
    std::vector<Column> columns_;
    std::size_t n_rows_ = 0;
};

enum class SliceMode { Head, Tail, Sample };

Frame drop_columns(const Frame& frame, const std::vector<std::string>& names);
Frame take_rows(const Frame& frame, const std::vector<std::size_t>& rows);

// Head/tail keep the first/last min(k, n_rows) rows in order; sample draws
// min(k, n_rows) distinct rows (Fisher-Yates over indices, SplitMix64(seed))
// returned in ascending original order.
Frame slice_rows(const Frame& frame, SliceMode mode, std::size_t k, std::uint64_t seed = 0);

}  // namespace tabkit
