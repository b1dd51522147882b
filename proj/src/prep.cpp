#include "tabkit/prep.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "tabkit/errors.hpp"
#include "tabkit/stats.hpp"
#include "tabkit/timestamp.hpp"

namespace tabkit {

namespace {

std::string class_text(const Column& col, std::size_t row) {
    if (col.dtype() == DType::Bool) return col.bool_at(row) ? "true" : "false";
    return col.str_at(row);
}

Column fill_numeric(const Column& col, NumericFill mode) {
    std::vector<double> values = numeric_values(col);
    double fill = 0.0;
    if (mode == NumericFill::Mean) {
        fill = kahan_sum(values) / static_cast<double>(values.size());
    } else {
        std::sort(values.begin(), values.end());
        fill = quantile_sorted(values, 0.5);
    }
    const std::size_t n = col.size();
    if (col.dtype() == DType::Int) {
        // Mean/median of an Int column is generally fractional; widen.
        Column::FloatData out(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = col.is_null(i) ? fill : static_cast<double>(col.int_at(i));
        }
        return Column::floats(col.name(), std::move(out));
    }
    Column::FloatData out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) out[i] = col.is_null(i) ? fill : col.float_at(i);
    return Column::floats(col.name(), std::move(out));
}

Column fill_categorical(const Column& col) {
    std::map<std::string, std::size_t> counts;
    for (std::size_t i = 0; i < col.size(); ++i) {
        if (!col.is_null(i)) ++counts[class_text(col, i)];
    }
    // std::map iterates classes in lexicographic order, so the first maximal
    // entry is the tie-broken mode.
    std::string mode;
    std::size_t best = 0;
    for (const auto& [cls, count] : counts) {
        if (count > best) {
            best = count;
            mode = cls;
        }
    }
    const std::size_t n = col.size();
    if (col.dtype() == DType::Bool) {
        Column::BoolData out(n, 0);
        const bool mode_value = mode == "true";
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = col.is_null(i) ? (mode_value ? 1 : 0) : (col.bool_at(i) ? 1 : 0);
        }
        return Column::bools(col.name(), std::move(out));
    }
    Column::StrData out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = col.is_null(i) ? mode : col.str_at(i);
    return Column::categorical(col.name(), std::move(out));
}

std::size_t class_index(const std::vector<std::string>& classes, const std::string& value) {
    const auto it = std::lower_bound(classes.begin(), classes.end(), value);
    if (it != classes.end() && *it == value) {
        return static_cast<std::size_t>(it - classes.begin());
    }
    return classes.size();  // unseen
}

void check_encodable(const Frame& frame, const std::string& name) {
    const Column& col = frame.column(name);
    if (col.dtype() != DType::Categorical && col.dtype() != DType::Bool) {
        throw WrongDType("cannot encode non-categorical column '" + name + "'");
    }
}

}  // namespace

DropResult drop_redundant(const Frame& frame) {
    DropResult result;
    std::vector<Column> kept;
    for (const Column& col : frame.columns()) {
        if (distinct_count(col) <= 1) {
            result.dropped.push_back(col.name());
        } else {
            kept.push_back(col);
        }
    }
    result.frame = Frame(std::move(kept));
    return result;
}

std::string dropped_display(const std::vector<std::string>& dropped) {
    std::string out = "Dropped [";
    for (std::size_t i = 0; i < dropped.size(); ++i) {
        if (i > 0) out += ", ";
        out += "'" + dropped[i] + "'";
    }
    out += "]";
    return out;
}

FillResult fill_missing(const Frame& frame, FillStrategy strategy) {
    FillResult result;
    std::vector<Column> out;
    out.reserve(frame.n_cols());
    for (const Column& col : frame.columns()) {
        if (col.null_count() == 0 || col.dtype() == DType::DateTime) {
            out.push_back(col);
            continue;
        }
        if (col.non_null_count() == 0) {
            result.untouched.push_back(col.name());
            out.push_back(col);
            continue;
        }
        if (is_numeric(col.dtype())) {
            out.push_back(fill_numeric(col, strategy.numeric));
        } else {
            out.push_back(fill_categorical(col));
        }
    }
    result.frame = Frame(std::move(out));
    return result;
}

Frame to_date(const Frame& frame, const std::vector<std::string>& cols) {
    for (const std::string& name : cols) {
        const Column& col = frame.column(name);
        if (is_numeric(col.dtype())) {
            throw WrongDType("to_date expects text columns, got numeric '" + name + "'");
        }
    }
    std::vector<Column> out;
    out.reserve(frame.n_cols());
    for (const Column& col : frame.columns()) {
        const bool wanted = std::find(cols.begin(), cols.end(), col.name()) != cols.end();
        if (!wanted || col.dtype() == DType::DateTime) {
            out.push_back(col);
            continue;
        }
        const std::size_t n = col.size();
        Column::IntData values(n, 0);
        Column::NullMask nulls(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            Timestamp ts;
            if (col.is_null(i) || !try_parse_timestamp(class_text(col, i), ts)) {
                nulls[i] = 1;
            } else {
                values[i] = ts.epoch_s;
            }
        }
        out.push_back(Column::datetimes(col.name(), std::move(values), std::move(nulls)));
    }
    return Frame(std::move(out));
}

std::vector<std::string> column_classes(const Column& column) {
    std::vector<std::string> classes;
    for (std::size_t i = 0; i < column.size(); ++i) {
        if (!column.is_null(i)) classes.push_back(class_text(column, i));
    }
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    return classes;
}

Frame encode_categorical(const Frame& frame, const std::vector<std::string>& cols,
                         EncodeMethod method) {
    for (const std::string& name : cols) check_encodable(frame, name);

    std::vector<Column> out;
    for (const Column& col : frame.columns()) {
        const bool wanted = std::find(cols.begin(), cols.end(), col.name()) != cols.end();
        if (!wanted) {
            out.push_back(col);
            continue;
        }
        const std::vector<std::string> classes = column_classes(col);
        const std::size_t n = col.size();
        if (method == EncodeMethod::Label) {
            Column::IntData values(n, 0);
            Column::NullMask nulls(n, 0);
            for (std::size_t i = 0; i < n; ++i) {
                if (col.is_null(i)) {
                    nulls[i] = 1;
                } else {
                    values[i] = static_cast<std::int64_t>(class_index(classes, class_text(col, i)));
                }
            }
            out.push_back(Column::ints(col.name(), std::move(values), std::move(nulls)));
        } else {
            if (classes.size() > 1000) throw TooManyClasses(col.name(), classes.size());
            std::vector<Column::IntData> indicators(classes.size(), Column::IntData(n, 0));
            for (std::size_t i = 0; i < n; ++i) {
                if (col.is_null(i)) continue;  // null row -> all zeros
                indicators[class_index(classes, class_text(col, i))][i] = 1;
            }
            for (std::size_t k = 0; k < classes.size(); ++k) {
                out.push_back(
                    Column::ints(col.name() + "_" + classes[k], std::move(indicators[k])));
            }
        }
    }
    return Frame(std::move(out));
}

Frame apply_label_encodings(const Frame& frame, const std::vector<LabelEncoding>& encodings) {
    std::unordered_map<std::string, const LabelEncoding*> by_name;
    for (const LabelEncoding& enc : encodings) {
        if (!frame.has_column(enc.column)) throw UnknownColumn(enc.column);
        check_encodable(frame, enc.column);
        by_name[enc.column] = &enc;
    }
    std::vector<Column> out;
    out.reserve(frame.n_cols());
    for (const Column& col : frame.columns()) {
        const auto it = by_name.find(col.name());
        if (it == by_name.end()) {
            out.push_back(col);
            continue;
        }
        const std::vector<std::string>& classes = it->second->classes;
        const std::size_t n = col.size();
        Column::IntData values(n, 0);
        Column::NullMask nulls(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (col.is_null(i)) {
                nulls[i] = 1;
            } else {
                values[i] = static_cast<std::int64_t>(class_index(classes, class_text(col, i)));
            }
        }
        out.push_back(Column::ints(col.name(), std::move(values), std::move(nulls)));
    }
    return Frame(std::move(out));
}

}  // namespace tabkit
