#include "tabkit/frame.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "tabkit/errors.hpp"
#include "tabkit/rng.hpp"

namespace tabkit {

Frame::Frame(std::vector<Column> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) return;
    n_rows_ = columns_[0].size();
    std::unordered_set<std::string_view> names;
    for (const Column& col : columns_) {
        if (col.size() != n_rows_) {
            throw LengthMismatch("column '" + col.name() + "' has " +
                                 std::to_string(col.size()) + " rows, expected " +
                                 std::to_string(n_rows_));
        }
        if (!names.insert(col.name()).second) {
            throw SchemaError("duplicate column name '" + col.name() + "'");
        }
    }
}

const Column& Frame::column(const std::string& name) const {
    auto idx = find(name);
    if (!idx) throw UnknownColumn(name);
    return columns_[*idx];
}

std::optional<std::size_t> Frame::find(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i].name() == name) return i;
    }
    return std::nullopt;
}

std::vector<std::string> Frame::column_names() const {
    std::vector<std::string> names;
    names.reserve(columns_.size());
    for (const Column& col : columns_) names.push_back(col.name());
    return names;
}

Frame drop_columns(const Frame& frame, const std::vector<std::string>& names) {
    std::unordered_set<std::string> to_drop;
    for (const std::string& name : names) {
        if (!frame.has_column(name)) throw UnknownColumn(name);
        to_drop.insert(name);
    }
    std::vector<Column> kept;
    kept.reserve(frame.n_cols());
    for (const Column& col : frame.columns()) {
        if (!to_drop.count(col.name())) kept.push_back(col);
    }
    return Frame(std::move(kept));
}

Frame take_rows(const Frame& frame, const std::vector<std::size_t>& rows) {
    std::vector<Column> out;
    out.reserve(frame.n_cols());
    for (const Column& col : frame.columns()) out.push_back(col.take(rows));
    return Frame(std::move(out));
}

Frame slice_rows(const Frame& frame, SliceMode mode, std::size_t k, std::uint64_t seed) {
    const std::size_t n = frame.n_rows();
    const std::size_t take = std::min(k, n);
    std::vector<std::size_t> rows;
    switch (mode) {
        case SliceMode::Head:
            rows.resize(take);
            std::iota(rows.begin(), rows.end(), std::size_t{0});
            break;
        case SliceMode::Tail:
            rows.resize(take);
            std::iota(rows.begin(), rows.end(), n - take);
            break;
        case SliceMode::Sample:
            rows = sample_indices(n, take, seed);
            break;
    }
    return take_rows(frame, rows);
}

}  // namespace tabkit
