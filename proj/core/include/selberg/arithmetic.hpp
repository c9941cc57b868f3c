#pragma once

#include <cstdint>
#include <vector>

namespace selberg {

/// Smallest-prime-factor sieve up to a fixed limit, together with the
/// multiplicative helpers read off it: the Moebius function mu(n), the
/// number of distinct prime factors omega(n) and the radical rad(n), the
/// product of the distinct primes dividing n.
///
/// Construction is a linear sieve, O(limit) time and memory. Lookups are
/// range-checked and throw std::out_of_range for n = 0 or n > limit.
class ArithmeticCache {
 public:
  explicit ArithmeticCache(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }

  std::uint32_t smallest_prime_factor(std::uint64_t n) const;
  int moebius(std::uint64_t n) const;
  int omega(std::uint64_t n) const;
  std::uint64_t radical(std::uint64_t n) const;

  bool is_prime(std::uint64_t n) const;
  bool is_squarefree(std::uint64_t n) const { return moebius(n) != 0; }

  /// Distinct primes dividing n, increasing.
  std::vector<std::uint32_t> prime_divisors(std::uint64_t n) const;

  /// All primes up to limit(), increasing.
  const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

 private:
  void check(std::uint64_t n) const;

  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::int8_t> moebius_;
  std::vector<std::uint8_t> omega_;
  std::vector<std::uint32_t> radical_;
  std::vector<std::uint32_t> primes_;
};

}  // namespace selberg
