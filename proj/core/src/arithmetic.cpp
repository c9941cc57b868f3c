#include "selberg/arithmetic.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace selberg {

ArithmeticCache::ArithmeticCache(std::uint64_t limit) : limit_(limit) {
  if (limit == 0) throw std::invalid_argument("ArithmeticCache: limit must be positive");
  if (limit > std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("ArithmeticCache: limit exceeds 32-bit range");

  const std::size_t size = static_cast<std::size_t>(limit) + 1;
  spf_.assign(size, 0);
  moebius_.assign(size, 0);
  omega_.assign(size, 0);
  radical_.assign(size, 0);

  moebius_[1] = 1;
  radical_[1] = 1;
  for (std::size_t n = 2; n < size; ++n) {
    if (spf_[n] == 0) {
      spf_[n] = static_cast<std::uint32_t>(n);
      primes_.push_back(static_cast<std::uint32_t>(n));
      moebius_[n] = -1;
      omega_[n] = 1;
      radical_[n] = static_cast<std::uint32_t>(n);
    }
    for (std::uint32_t p : primes_) {
      const std::uint64_t composite = static_cast<std::uint64_t>(p) * n;
      if (p > spf_[n] || composite >= size) break;
      spf_[composite] = p;
      if (p == spf_[n]) {
        moebius_[composite] = 0;
        omega_[composite] = omega_[n];
        radical_[composite] = radical_[n];
      } else {
        moebius_[composite] = static_cast<std::int8_t>(-moebius_[n]);
        omega_[composite] = static_cast<std::uint8_t>(omega_[n] + 1);
        radical_[composite] = radical_[n] * p;
      }
    }
  }
}

void ArithmeticCache::check(std::uint64_t n) const {
  if (n == 0 || n > limit_)
    throw std::out_of_range("ArithmeticCache: n = " + std::to_string(n) +
                            " outside [1, " + std::to_string(limit_) + "]");
}

std::uint32_t ArithmeticCache::smallest_prime_factor(std::uint64_t n) const {
  check(n);
  return spf_[n];
}

int ArithmeticCache::moebius(std::uint64_t n) const {
  check(n);
  return moebius_[n];
}

int ArithmeticCache::omega(std::uint64_t n) const {
  check(n);
  return omega_[n];
}

std::uint64_t ArithmeticCache::radical(std::uint64_t n) const {
  check(n);
  return radical_[n];
}

bool ArithmeticCache::is_prime(std::uint64_t n) const {
  check(n);
  return n > 1 && spf_[n] == n;
}

std::vector<std::uint32_t> ArithmeticCache::prime_divisors(std::uint64_t n) const {
  check(n);
  std::vector<std::uint32_t> out;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  return out;
}

}  // namespace selberg
