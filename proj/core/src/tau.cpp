#include "selberg/tau.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>

namespace selberg {
namespace {

// Montgomery arithmetic for odd moduli below 2^31.
class Montgomery {
 public:
  explicit Montgomery(std::uint32_t mod) : mod_(mod) {
    std::uint32_t inv = mod;
    for (int i = 0; i < 5; ++i) inv *= 2u - mod * inv;
    neg_inv_ = 0u - inv;
    r2_ = static_cast<std::uint32_t>((static_cast<wide_uint>(1) << 64) % mod);
  }

  std::uint32_t mod() const { return mod_; }

  std::uint32_t reduce(std::uint64_t t) const {
    const std::uint32_t m = static_cast<std::uint32_t>(t) * neg_inv_;
    const std::uint32_t r = static_cast<std::uint32_t>((t + static_cast<std::uint64_t>(m) * mod_) >> 32);
    return r >= mod_ ? r - mod_ : r;
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return reduce(static_cast<std::uint64_t>(a) * b);
  }
  std::uint32_t to(std::uint32_t a) const { return mul(a, r2_); }
  std::uint32_t from(std::uint32_t a) const { return reduce(a); }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    const std::uint32_t s = a + b;
    return s >= mod_ ? s - mod_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + mod_ - b;
  }
  std::uint32_t pow(std::uint32_t base_mont, std::uint64_t e) const {
    std::uint32_t result = to(1);
    while (e) {
      if (e & 1) result = mul(result, base_mont);
      base_mont = mul(base_mont, base_mont);
      e >>= 1;
    }
    return result;
  }

 private:
  std::uint32_t mod_;
  std::uint32_t neg_inv_;
  std::uint32_t r2_;
};

struct NttPrime {
  std::uint32_t mod;
  std::uint32_t generator;
  int max_log2;
};

// mod - 1 = c * 2^k; generator is a quadratic non-residue.
constexpr std::array<NttPrime, 5> kPrimes{{
    {998244353u, 3u, 23},
    {167772161u, 3u, 25},
    {469762049u, 3u, 26},
    {754974721u, 11u, 24},
    {1004535809u, 3u, 21},
}};

void ntt(std::vector<std::uint32_t>& a, bool inverse, const Montgomery& mg, std::uint32_t generator) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const std::uint32_t g = mg.to(generator);
  std::vector<std::uint32_t> twiddles;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint32_t w = mg.pow(g, (mg.mod() - 1) / len);
    if (inverse) w = mg.pow(w, mg.mod() - 2);
    const std::size_t half = len / 2;
    twiddles.resize(half);
    twiddles[0] = mg.to(1);
    for (std::size_t k = 1; k < half; ++k) twiddles[k] = mg.mul(twiddles[k - 1], w);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::uint32_t u = a[i + k];
        const std::uint32_t v = mg.mul(a[i + k + half], twiddles[k]);
        a[i + k] = mg.add(u, v);
        a[i + k + half] = mg.sub(u, v);
      }
    }
  }
  if (inverse) {
    const std::uint32_t n_inv = mg.pow(mg.to(static_cast<std::uint32_t>(n % mg.mod())), mg.mod() - 2);
    for (auto& x : a) x = mg.mul(x, n_inv);
  }
}

// Square a series (Montgomery form) and keep the first `keep` coefficients.
std::vector<std::uint32_t> square_truncated(std::vector<std::uint32_t> a, std::size_t keep,
                                            const Montgomery& mg, const NttPrime& prime) {
  std::size_t size = 1;
  int log2 = 0;
  while (size < 2 * a.size() - 1) {
    size <<= 1;
    ++log2;
  }
  if (log2 > prime.max_log2) throw std::length_error("tau_qexpansion: transform too long");
  a.resize(size, 0);
  ntt(a, false, mg, prime.generator);
  for (auto& x : a) x = mg.mul(x, x);
  ntt(a, true, mg, prime.generator);
  a.resize(keep);
  return a;
}

}  // namespace

std::vector<wide_int> tau_qexpansion(std::size_t N) {
  if (N == 0 || N > kTauMaxTerms)
    throw std::invalid_argument("tau_qexpansion: N must lie in [1, 1000000]");

  // prod (1-q^n)^24 is needed through q^{N-1}.
  const std::size_t len = N;

  // Jacobi: prod (1-q^n)^3 = sum_k (-1)^k (2k+1) q^{k(k+1)/2}.
  std::vector<std::pair<std::size_t, std::int64_t>> cube;
  for (std::size_t k = 0; k * (k + 1) / 2 < len; ++k)
    cube.emplace_back(k * (k + 1) / 2, (k % 2 ? -1 : 1) * static_cast<std::int64_t>(2 * k + 1));

  std::vector<std::int64_t> sixth(len, 0);
  for (const auto& [i, ci] : cube)
    for (const auto& [j, cj] : cube) {
      if (i + j >= len) break;
      sixth[i + j] += ci * cj;
    }

  std::array<std::vector<std::uint32_t>, kPrimes.size()> residues;
  for (std::size_t r = 0; r < kPrimes.size(); ++r) {
    const Montgomery mg(kPrimes[r].mod);
    const auto mod = static_cast<std::int64_t>(kPrimes[r].mod);
    std::vector<std::uint32_t> series(len);
    for (std::size_t i = 0; i < len; ++i) {
      std::int64_t v = sixth[i] % mod;
      if (v < 0) v += mod;
      series[i] = mg.to(static_cast<std::uint32_t>(v));
    }
    series = square_truncated(std::move(series), len, mg, kPrimes[r]);
    series = square_truncated(std::move(series), len, mg, kPrimes[r]);
    for (auto& x : series) x = mg.from(x);
    residues[r] = std::move(series);
  }

  // Garner coefficients inv[i][j] = m_j^{-1} mod m_i for j < i.
  std::array<std::array<std::uint64_t, kPrimes.size()>, kPrimes.size()> inv{};
  auto pow_mod = [](std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    b %= m;
    while (e) {
      if (e & 1) r = r * b % m;
      b = b * b % m;
      e >>= 1;
    }
    return r;
  };
  for (std::size_t i = 0; i < kPrimes.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      inv[i][j] = pow_mod(kPrimes[j].mod, kPrimes[i].mod - 2, kPrimes[i].mod);

  using u128 = wide_uint;
  std::vector<wide_int> tau(N);
  for (std::size_t n = 0; n < N; ++n) {
    std::array<std::uint64_t, kPrimes.size()> digit{};
    for (std::size_t i = 0; i < kPrimes.size(); ++i) {
      const std::uint64_t m = kPrimes[i].mod;
      // x_i = (r_i - (d_0 + d_1 m_0 + ...)) / (m_0 ... m_{i-1}) mod m_i, iteratively.
      std::uint64_t x = residues[i][n];
      for (std::size_t j = 0; j < i; ++j) {
        x = (x + m - digit[j] % m) % m;
        x = x * inv[i][j] % m;
      }
      digit[i] = x;
    }
    // Value = sum digit_i * prod_{j<i} m_j, evaluated modulo 2^128.
    u128 value = 0;
    u128 weight = 1;
    for (std::size_t i = 0; i < kPrimes.size(); ++i) {
      value += weight * digit[i];
      weight *= kPrimes[i].mod;
    }
    // Fraction value / (m_0 ... m_4) decides the centred lift.
    long double fraction = 0.0L;
    for (std::size_t i = 0; i < kPrimes.size(); ++i)
      fraction = (fraction + static_cast<long double>(digit[i])) / static_cast<long double>(kPrimes[i].mod);
    if (fraction > 0.5L) value -= weight;  // weight == full product mod 2^128
    tau[n] = static_cast<wide_int>(value);
  }
  return tau;
}

std::string to_string(wide_int value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  wide_uint mag = negative ? static_cast<wide_uint>(0) - static_cast<wide_uint>(value)
                                   : static_cast<wide_uint>(value);
  std::string out;
  while (mag > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace selberg
