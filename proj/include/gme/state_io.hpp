#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "gme/tensor.hpp"

namespace gme {

/// State file format:
///
///   {"dims": [2,2,2],
///    "amplitudes": [{"idx": [0,0,1], "re": 0.57735, "im": 0.0}, ...]}
///
/// Index tuples that are not listed are zero; "re" and "im" default to 0.
/// Listing the same tuple twice is an error. Parse failures throw
/// MalformedInput; with `normalize` a zero state throws ZeroTensor.
ComplexTensor parse_state_json(std::string_view text, bool normalize = true);
ComplexTensor load_state_file(const std::filesystem::path& path, bool normalize = true);

/// Serializes the nonzero entries with round-trip double precision.
std::string state_to_json(const ComplexTensor& t);
void save_state_file(const std::filesystem::path& path, const ComplexTensor& t);

/// FNV-1a over dims and amplitude bytes; identifies a state in run reports.
std::uint64_t tensor_digest(const ComplexTensor& t);

} // namespace gme
