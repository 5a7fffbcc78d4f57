#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "bsq/dense_matrix.hpp"

namespace bsq {

// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::uint64_t fnv1a(std::span<const unsigned char> bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string fingerprint(std::string_view text);
std::string fingerprint(const ComplexMatrix& m);

}  // namespace bsq
