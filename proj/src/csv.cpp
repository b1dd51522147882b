#include "tabkit/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tabkit/errors.hpp"

namespace tabkit {

namespace {

constexpr std::size_t kNpos = static_cast<std::size_t>(-1);

// Offset of the first invalid byte, or kNpos when the input is valid UTF-8.
std::size_t find_invalid_utf8(std::string_view bytes) {
    const std::size_t n = bytes.size();
    std::size_t i = 0;
    while (i < n) {
        const unsigned char c = static_cast<unsigned char>(bytes[i]);
        if (c < 0x80) {
            ++i;
            continue;
        }
        std::size_t len = 0;
        if ((c & 0xE0) == 0xC0) {
            len = 2;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
        } else {
            return i;
        }
        if (i + len > n) return i;
        for (std::size_t k = 1; k < len; ++k) {
            if ((static_cast<unsigned char>(bytes[i + k]) & 0xC0) != 0x80) return i;
        }
        const unsigned char c1 = static_cast<unsigned char>(bytes[i + 1]);
        if (len == 2 && c < 0xC2) return i;                       // overlong
        if (len == 3 && c == 0xE0 && c1 < 0xA0) return i;         // overlong
        if (len == 3 && c == 0xED && c1 >= 0xA0) return i;        // surrogate
        if (len == 4 && c == 0xF0 && c1 < 0x90) return i;         // overlong
        if (len == 4 && (c > 0xF4 || (c == 0xF4 && c1 >= 0x90))) return i;  // > U+10FFFF
        i += len;
    }
    return kNpos;
}

struct RawField {
    std::string text;
    bool quoted = false;
};

struct RawRecord {
    std::vector<RawField> fields;
    std::size_t start_line = 0;  // 1-based physical line
};

std::vector<RawRecord> tokenize(std::string_view bytes, char delimiter) {
    std::vector<RawRecord> records;
    const std::size_t n = bytes.size();
    std::size_t i = 0;
    std::size_t line = 1;

    while (i < n) {
        RawRecord record;
        record.start_line = line;
        bool record_done = false;
        while (!record_done) {
            RawField field;
            if (i < n && bytes[i] == '"') {
                field.quoted = true;
                ++i;
                while (i < n) {
                    const char c = bytes[i];
                    if (c == '"') {
                        if (i + 1 < n && bytes[i + 1] == '"') {
                            field.text += '"';
                            i += 2;
                        } else {
                            ++i;  // closing quote
                            break;
                        }
                    } else {
                        if (c == '\n') ++line;
                        field.text += c;
                        ++i;
                    }
                }
                // Lenient tail: stray bytes between the closing quote and the
                // next delimiter/EOL are kept verbatim.
                while (i < n && bytes[i] != delimiter && bytes[i] != '\n') {
                    if (bytes[i] == '\r' && i + 1 < n && bytes[i + 1] == '\n') break;
                    field.text += bytes[i];
                    ++i;
                }
            } else {
                while (i < n && bytes[i] != delimiter && bytes[i] != '\n') {
                    if (bytes[i] == '\r' && i + 1 < n && bytes[i + 1] == '\n') break;
                    field.text += bytes[i];
                    ++i;
                }
            }

            if (i < n && bytes[i] == delimiter) {
                ++i;
                record.fields.push_back(std::move(field));
                continue;
            }
            if (i < n && bytes[i] == '\r') ++i;  // CRLF
            if (i < n && bytes[i] == '\n') {
                ++i;
                ++line;
            }
            record.fields.push_back(std::move(field));
            record_done = true;
        }
        records.push_back(std::move(record));
    }
    return records;
}

enum class CellParse { Ok, Fail, Overflow };

CellParse parse_int_detail(std::string_view text, std::int64_t& out) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return CellParse::Fail;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ptr != text.data() + text.size()) return CellParse::Fail;
    if (ec == std::errc::result_out_of_range) return CellParse::Overflow;
    return ec == std::errc() ? CellParse::Ok : CellParse::Fail;
}

CellParse parse_float_detail(std::string_view text, double& out) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return CellParse::Fail;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ptr != text.data() + text.size()) return CellParse::Fail;
    if (ec == std::errc::result_out_of_range) return CellParse::Overflow;
    if (ec != std::errc()) return CellParse::Fail;
    return std::isfinite(out) ? CellParse::Ok : CellParse::Fail;
}

bool is_null_field(const RawField& field, const CsvOptions& options) {
    if (field.quoted) return false;
    const std::string_view trimmed = trim_ascii(field.text);
    return std::find(options.null_tokens.begin(), options.null_tokens.end(), trimmed) !=
           options.null_tokens.end();
}

// Unique, non-empty header names: blanks become column_<i>, duplicates get
// a numeric suffix.
std::vector<std::string> normalize_header(const std::vector<RawField>& fields) {
    std::vector<std::string> names;
    names.reserve(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
        std::string name = fields[i].text;
        if (name.empty()) name = "column_" + std::to_string(i + 1);
        if (std::find(names.begin(), names.end(), name) != names.end()) {
            int suffix = 2;
            std::string candidate;
            do {
                candidate = name + "_" + std::to_string(suffix++);
            } while (std::find(names.begin(), names.end(), candidate) != names.end());
            name = candidate;
        }
        names.push_back(std::move(name));
    }
    return names;
}

struct CellRef {
    const RawField* field;
    bool null;
};

Column materialize(const std::string& name, DType dtype, const std::vector<CellRef>& cells) {
    const std::size_t n = cells.size();
    Column::NullMask nulls(n, 0);
    for (std::size_t i = 0; i < n; ++i) nulls[i] = cells[i].null ? 1 : 0;

    switch (dtype) {
        case DType::Int: {
            Column::IntData values(n, 0);
            for (std::size_t i = 0; i < n; ++i) {
                if (nulls[i]) continue;
                std::int64_t v = 0;
                switch (parse_int_detail(trim_ascii(cells[i].field->text), v)) {
                    case CellParse::Ok: values[i] = v; break;
                    case CellParse::Fail: nulls[i] = 1; break;
                    case CellParse::Overflow:
                        // A numeric value that does not fit i64: keep the
                        // column by widening it instead of dropping cells.
                        return materialize(name, DType::Float, cells);
                }
            }
            return Column::ints(name, std::move(values), std::move(nulls));
        }
        case DType::Float: {
            Column::FloatData values(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                if (nulls[i]) continue;
                double v = 0.0;
                switch (parse_float_detail(trim_ascii(cells[i].field->text), v)) {
                    case CellParse::Ok: values[i] = v; break;
                    case CellParse::Fail: nulls[i] = 1; break;
                    case CellParse::Overflow:
                        return materialize(name, DType::Categorical, cells);
                }
            }
            return Column::floats(name, std::move(values), std::move(nulls));
        }
        case DType::Bool: {
            Column::BoolData values(n, 0);
            for (std::size_t i = 0; i < n; ++i) {
                if (nulls[i]) continue;
                bool v = false;
                if (parse_bool_cell(trim_ascii(cells[i].field->text), v)) {
                    values[i] = v ? 1 : 0;
                } else {
                    nulls[i] = 1;
                }
            }
            return Column::bools(name, std::move(values), std::move(nulls));
        }
        case DType::DateTime: {
            Column::IntData values(n, 0);
            for (std::size_t i = 0; i < n; ++i) {
                if (nulls[i]) continue;
                Timestamp ts;
                if (try_parse_timestamp(trim_ascii(cells[i].field->text), ts)) {
                    values[i] = ts.epoch_s;
                } else {
                    nulls[i] = 1;
                }
            }
            return Column::datetimes(name, std::move(values), std::move(nulls));
        }
        case DType::Categorical: {
            Column::StrData values(n);
            for (std::size_t i = 0; i < n; ++i) {
                if (!nulls[i]) values[i] = cells[i].field->text;
            }
            return Column::categorical(name, std::move(values), std::move(nulls));
        }
    }
    throw Error("unreachable dtype");
}

bool needs_quoting(std::string_view text, const CsvOptions& options) {
    if (text.empty()) return true;
    if (text.find_first_of(std::string{options.delimiter} + "\"\n\r") != std::string_view::npos) {
        return true;
    }
    const std::string_view trimmed = trim_ascii(text);
    if (trimmed.size() != text.size()) return true;  // preserve surrounding whitespace
    return std::find(options.null_tokens.begin(), options.null_tokens.end(), trimmed) !=
           options.null_tokens.end();
}

void append_field(std::string& out, std::string_view text, const CsvOptions& options) {
    if (!needs_quoting(text, options)) {
        out.append(text);
        return;
    }
    out += '"';
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

}  // namespace

std::string_view trim_ascii(std::string_view text) {
    const char* ws = " \t\r\n\f\v";
    const std::size_t begin = text.find_first_not_of(ws);
    if (begin == std::string_view::npos) return {};
    const std::size_t end = text.find_last_not_of(ws);
    return text.substr(begin, end - begin + 1);
}

bool parse_int_cell(std::string_view text, std::int64_t& out) {
    return parse_int_detail(text, out) == CellParse::Ok;
}

bool parse_float_cell(std::string_view text, double& out) {
    return parse_float_detail(text, out) == CellParse::Ok;
}

bool parse_bool_cell(std::string_view text, bool& out) {
    if (text == "true" || text == "True" || text == "1") {
        out = true;
        return true;
    }
    if (text == "false" || text == "False" || text == "0") {
        out = false;
        return true;
    }
    return false;
}

DType infer_dtype(const std::vector<std::string>& raw) {
    const std::size_t n = raw.size();
    if (n == 0) return DType::Categorical;
    std::size_t ints = 0, floats = 0, bools = 0, dates = 0;
    for (const std::string& value : raw) {
        const std::string_view trimmed = trim_ascii(value);
        std::int64_t i64 = 0;
        double f64 = 0.0;
        bool b = false;
        Timestamp ts;
        if (parse_int_detail(trimmed, i64) == CellParse::Ok) ++ints;
        if (parse_float_detail(trimmed, f64) == CellParse::Ok) ++floats;
        if (parse_bool_cell(trimmed, b)) ++bools;
        if (try_parse_timestamp(trimmed, ts)) ++dates;
    }
    // >= 95%, computed as an exact integer comparison.
    const auto passes = [n](std::size_t hits) { return hits * 20 >= n * 19; };
    if (passes(ints)) return DType::Int;
    if (passes(floats)) return DType::Float;
    if (passes(bools)) return DType::Bool;
    if (passes(dates)) return DType::DateTime;
    return DType::Categorical;
}

Frame parse_csv(std::string_view bytes, const CsvOptions& options) {
    const std::size_t bad = find_invalid_utf8(bytes);
    if (bad != kNpos) throw Utf8Error(bad);

    const std::vector<RawRecord> records = tokenize(bytes, options.delimiter);
    if (records.empty()) throw EmptyInput();

    std::vector<std::string> names;
    std::size_t first_data = 0;
    if (options.has_header) {
        names = normalize_header(records[0].fields);
        first_data = 1;
    } else {
        names.reserve(records[0].fields.size());
        for (std::size_t i = 0; i < records[0].fields.size(); ++i) {
            names.push_back("column_" + std::to_string(i + 1));
        }
    }
    const std::size_t n_cols = names.size();
    const std::size_t n_rows = records.size() - first_data;

    for (std::size_t r = first_data; r < records.size(); ++r) {
        if (records[r].fields.size() != n_cols) throw RaggedRow(records[r].start_line);
    }

    std::vector<Column> columns;
    columns.reserve(n_cols);
    for (std::size_t c = 0; c < n_cols; ++c) {
        std::vector<CellRef> cells;
        cells.reserve(n_rows);
        std::vector<std::string> sample;
        for (std::size_t r = first_data; r < records.size(); ++r) {
            const RawField& field = records[r].fields[c];
            const bool null = is_null_field(field, options);
            cells.push_back(CellRef{&field, null});
            if (!null && sample.size() < options.inference_sample) {
                sample.push_back(field.text);
            }
        }
        const DType dtype = sample.empty() ? DType::Categorical : infer_dtype(sample);
        columns.push_back(materialize(names[c], dtype, cells));
    }
    return Frame(std::move(columns));
}

Frame read_csv_file(const std::string& path, const CsvOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_csv(buffer.str(), options);
}

std::string write_csv(const Frame& frame, const CsvOptions& options) {
    std::string out;
    const std::string null_text = options.null_tokens.empty() ? "" : options.null_tokens.front();
    for (std::size_t c = 0; c < frame.n_cols(); ++c) {
        if (c > 0) out += options.delimiter;
        append_field(out, frame.column(c).name(), options);
    }
    out += '\n';
    for (std::size_t r = 0; r < frame.n_rows(); ++r) {
        for (std::size_t c = 0; c < frame.n_cols(); ++c) {
            if (c > 0) out += options.delimiter;
            const Column& col = frame.column(c);
            if (col.is_null(r)) {
                out += null_text;
            } else {
                append_field(out, col.cell_text(r), options);
            }
        }
        out += '\n';
    }
    return out;
}

void write_csv_file(const Frame& frame, const std::string& path, const CsvOptions& options) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << write_csv(frame, options);
}

}  // namespace tabkit
