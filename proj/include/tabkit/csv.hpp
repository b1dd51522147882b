#pragma once
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tabkit/frame.hpp"

namespace tabkit {

struct CsvOptions {
    char delimiter = ',';
    bool has_header = true;
    // Matched against unquoted fields after trimming surrounding ASCII
    // whitespace; quoted fields are never treated as null. Nulls serialize
    // as the first token.
    std::vector<std::string> null_tokens = {"", "NA", "NaN", "null", "NULL"};
    std::size_t inference_sample = 1000;
};

// First variant in the order Int -> Float -> Bool -> DateTime -> Categorical
// for which at least 95% of the values parse. `raw` must be non-empty and
// hold non-null values only.
DType infer_dtype(const std::vector<std::string>& raw);

// RFC 4180: quoted fields may contain the delimiter, doubled quotes and
// newlines; LF and CRLF records are both accepted.
Frame parse_csv(std::string_view bytes, const CsvOptions& options = {});
Frame read_csv_file(const std::string& path, const CsvOptions& options = {});

// Header row then data rows, LF line endings, quoting only where needed.
// parse_csv(write_csv(f)) == f for frames with at least one non-null cell
// per column.
std::string write_csv(const Frame& frame, const CsvOptions& options = {});
void write_csv_file(const Frame& frame, const std::string& path, const CsvOptions& options = {});

// Whole-string cell parsers shared by inference and materialization.
bool parse_int_cell(std::string_view text, std::int64_t& out);
bool parse_float_cell(std::string_view text, double& out);  // finite results only
bool parse_bool_cell(std::string_view text, bool& out);     // {true,false,True,False,0,1}
std::string_view trim_ascii(std::string_view text);

}  // namespace tabkit
