#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace selberg {

/// Signed 128-bit integer; wide enough for tau(n) with n <= 10^6, where
/// |tau(n)| <= d(n) n^{11/2} < 2^118.
__extension__ typedef __int128 wide_int;
__extension__ typedef unsigned __int128 wide_uint;

/// Largest N accepted by tau_qexpansion.
inline constexpr std::size_t kTauMaxTerms = 1'000'000;

/// Ramanujan tau(1..N) as exact integers: the coefficients of
/// q * prod_{n>=1} (1 - q^n)^24 through q^N. Element i holds tau(i + 1).
///
/// The product is built from Jacobi's identity for prod (1 - q^n)^3, squared
/// exactly, then raised to the fourth power modulo five NTT primes and
/// reassembled by Garner's algorithm. Throws std::invalid_argument for
/// N = 0 or N > kTauMaxTerms.
std::vector<wide_int> tau_qexpansion(std::size_t N);

std::string to_string(wide_int value);

}  // namespace selberg
