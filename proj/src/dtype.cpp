#include "tabkit/dtype.hpp"

namespace tabkit {

std::string_view dtype_name(DType dtype) {
    switch (dtype) {
        case DType::Int: return "Int";
        case DType::Float: return "Float";
        case DType::Bool: return "Bool";
        case DType::Categorical: return "Categorical";
        case DType::DateTime: return "DateTime";
    }
    return "Categorical";
}

}  // namespace tabkit
