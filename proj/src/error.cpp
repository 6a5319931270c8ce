#include "gme/error.hpp"

namespace gme {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::ZeroTensor: return "ZeroTensor";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidTensor: return "InvalidTensor";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::NotMatrix: return "NotMatrix";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::UnknownCatalogIndex: return "UnknownCatalogIndex";
    case ErrorCode::TooManyParties: return "TooManyParties";
    case ErrorCode::MalformedInput: return "MalformedInput";
    }
    return "Unknown";
}

} // namespace gme
