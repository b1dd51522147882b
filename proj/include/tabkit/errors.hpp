#pragma once
#include <cstddef>
#include <stdexcept>
#include <string>

namespace tabkit {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------- ingest: raw bytes -> Frame ----------

struct IngestError : Error {
    using Error::Error;
};

struct RaggedRow : IngestError {
    std::size_t line;
    explicit RaggedRow(std::size_t line_)
        : IngestError("ragged row at line " + std::to_string(line_) +
                      ": field count differs from header"),
          line(line_) {}
};

struct Utf8Error : IngestError {
    std::size_t offset;
    explicit Utf8Error(std::size_t offset_)
        : IngestError("invalid UTF-8 at byte offset " + std::to_string(offset_)),
          offset(offset_) {}
};

struct EmptyInput : IngestError {
    EmptyInput() : IngestError("empty input: no header row") {}
};

// ---------- schema: column / dtype / label contracts ----------

struct SchemaError : Error {
    using Error::Error;
};

struct UnknownColumn : SchemaError {
    std::string column;
    explicit UnknownColumn(std::string column_)
        : SchemaError("unknown column '" + column_ + "'"), column(std::move(column_)) {}
};

struct WrongDType : SchemaError {
    explicit WrongDType(const std::string& what) : SchemaError("wrong dtype: " + what) {}
};

struct EmptyColumn : SchemaError {
    explicit EmptyColumn(const std::string& column)
        : SchemaError("column '" + column + "' has no non-null values") {}
};

struct TooManyClasses : SchemaError {
    std::string column;
    std::size_t count;
    TooManyClasses(std::string column_, std::size_t count_)
        : SchemaError("column '" + column_ + "' has " + std::to_string(count_) +
                      " classes, too many to one-hot encode"),
          column(std::move(column_)),
          count(count_) {}
};

struct SingleClass : SchemaError {
    explicit SingleClass(const std::string& what) : SchemaError(what) {}
};

struct NullInFeatures : SchemaError {
    explicit NullInFeatures(const std::string& what) : SchemaError(what) {}
};

struct ShapeMismatch : SchemaError {
    explicit ShapeMismatch(const std::string& what) : SchemaError(what) {}
};

struct LengthMismatch : SchemaError {
    explicit LengthMismatch(const std::string& what) : SchemaError(what) {}
};

struct NonBinaryLabel : SchemaError {
    explicit NonBinaryLabel(const std::string& what) : SchemaError(what) {}
};

// ---------- timestamp text ----------

struct ParseError : Error {
    explicit ParseError(const std::string& text)
        : Error("cannot parse timestamp '" + text + "'") {}
};

struct RangeError : Error {
    explicit RangeError(const std::string& what) : Error("out of range: " + what) {}
};

// ---------- model files ----------

struct ModelFileError : Error {
    using Error::Error;
};

struct SchemaVersionMismatch : ModelFileError {
    explicit SchemaVersionMismatch(long long found)
        : ModelFileError("model file schema_version " + std::to_string(found) +
                         " is not supported (expected 1)") {}
};

struct MalformedModelFile : ModelFileError {
    explicit MalformedModelFile(const std::string& what)
        : ModelFileError("malformed model file: " + what) {}
};

}  // namespace tabkit
