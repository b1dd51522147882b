#pragma once
#include <string_view>

namespace tabkit {

// Categorical is the fallback: any column is representable as strings.
enum class DType { Int, Float, Bool, Categorical, DateTime };

std::string_view dtype_name(DType dtype);

inline bool is_numeric(DType dtype) { return dtype == DType::Int || dtype == DType::Float; }

}  // namespace tabkit
