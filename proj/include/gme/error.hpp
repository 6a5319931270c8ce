#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gme {

enum class ErrorCode {
    ZeroTensor,
    NotNormalized,
    DimensionMismatch,
    InvalidTensor,
    InvalidPartition,
    NotMatrix,
    InvalidParams,
    CapacityExceeded,
    UnknownCatalogIndex,
    TooManyParties,
    MalformedInput,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. Every failure carries one of the error kinds above
/// so callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace gme
