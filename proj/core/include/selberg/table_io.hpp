#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "selberg/coefficients.hpp"

namespace selberg {

/// CSV with header `m,A` and one row per m, values in %.17g.
void write_csv(const CoefficientTable& table, std::ostream& out);

/// Binary cache: magic "SLBC", u32 version, u64 x_max, then x_max doubles,
/// all little-endian.
void write_binary(const CoefficientTable& table, std::ostream& out);

/// Reads a binary cache. Throws std::runtime_error on a bad magic, an
/// unsupported version or a truncated payload.
CoefficientTable read_binary(std::istream& in, std::string spec_name = "cached");

inline constexpr std::uint32_t kBinaryCacheVersion = 1;

}  // namespace selberg
