#include "selberg/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace selberg {

namespace {

// Distinct prime factors of a squarefree d; throws if d is not squarefree.
std::vector<std::uint64_t> squarefree_primes(std::uint64_t d) {
  if (d == 0) throw std::invalid_argument("modulus d must be positive");
  std::vector<std::uint64_t> primes;
  std::uint64_t rest = d;
  for (std::uint64_t p = 2; p * p <= rest; ++p) {
    if (rest % p) continue;
    rest /= p;
    if (rest % p == 0) throw std::invalid_argument("d = " + std::to_string(d) + " is not squarefree");
    primes.push_back(p);
  }
  if (rest > 1) primes.push_back(rest);
  return primes;
}

std::complex<double> power(std::uint64_t n, std::complex<double> s) {
  const long double log_n = std::log(static_cast<long double>(n));
  const long double magnitude = std::exp(-static_cast<long double>(s.real()) * log_n);
  const long double phase = -static_cast<long double>(s.imag()) * log_n;
  return {static_cast<double>(magnitude * std::cos(phase)), static_cast<double>(magnitude * std::sin(phase))};
}

// sum_{j >= J + 1} (d j)^{0.51 - sigma} <= d^{0.51 - sigma} J^{1.51 - sigma} / (sigma - 1.51)
double tail_integral(double sigma, double d, double J) {
  const double a = sigma - kTailGrowthExponent;
  if (a <= 1.0) return std::numeric_limits<double>::infinity();
  return std::pow(d, -a) * std::pow(J, 1.0 - a) / (a - 1.0);
}

void check_series_args(const CoefficientTable& table, std::uint64_t d, std::complex<double> s, std::uint64_t N) {
  squarefree_primes(d);
  if (!(s.real() > 1.0)) throw std::invalid_argument("series needs Re(s) > 1");
  if (N < d) throw std::invalid_argument("N_trunc must be >= d");
  if (N > table.x_max()) throw std::out_of_range("N_trunc exceeds the coefficient table");
}

std::complex<double> partial_sum(const CoefficientTable& table, std::uint64_t d, std::complex<double> s,
                                 std::uint64_t N) {
  std::complex<long double> acc = 0.0L;
  for (std::uint64_t m = d; m <= N; m += d) {
    const double a = table[m];
    if (a != 0.0) acc += std::complex<long double>(power(m, s)) * static_cast<long double>(a);
  }
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

// Max over the first N_trunc entries only, so the sieve size does not leak in.
double growth_constant(const CoefficientTable& table, std::uint64_t N) {
  double c = 0.0;
  for (std::uint64_t m = 1; m <= N; ++m)
    c = std::max(c, std::abs(table[m]) / std::pow(static_cast<double>(m), kTailGrowthExponent));
  return c;
}

std::complex<double> one_minus_P(const LFunctionSpec& spec, std::uint64_t p, std::complex<double> s) {
  const EulerLocalFactor factor = spec.local_factor(p);
  const std::complex<double> x = power(p, s);
  std::complex<double> value = 0.0;
  for (std::size_t j = factor.poly.size(); j-- > 0;) value = value * x + factor.poly[j];
  return 1.0 - value;
}

}  // namespace

double table_growth_constant(const CoefficientTable& table) { return growth_constant(table, table.x_max()); }

TruncatedSeries congruence_restricted_series(const CoefficientTable& table, std::uint64_t d, std::complex<double> s,
                                             std::uint64_t N_trunc) {
  check_series_args(table, d, s, N_trunc);
  TruncatedSeries r;
  r.N_trunc = N_trunc;
  r.value = partial_sum(table, d, s, N_trunc);
  r.tail_bound = growth_constant(table, N_trunc) *
                 tail_integral(s.real(), static_cast<double>(d), static_cast<double>(N_trunc / d));
  return r;
}

TruncatedSeries congruence_restricted_series(const LFunctionSpec& spec, std::uint64_t d, std::complex<double> s,
                                             std::uint64_t N_trunc) {
  return congruence_restricted_series(sieve(spec, N_trunc), d, s, N_trunc);
}

std::complex<double> congruence_factor(const LFunctionSpec& spec, std::uint64_t d, std::complex<double> s) {
  std::complex<double> factor = power(d, s);
  for (std::uint64_t p : squarefree_primes(d)) factor *= one_minus_P(spec, p, s) / power(p, s);
  return factor;
}

std::complex<double> congruence_factor_product_form(const LFunctionSpec& spec, std::uint64_t d,
                                                    std::complex<double> s) {
  std::complex<double> factor = 1.0;
  for (std::uint64_t p : squarefree_primes(d)) factor *= one_minus_P(spec, p, s);
  return factor;
}

TruncatedSeries congruence_identity_rhs(const LFunctionSpec& spec, const CoefficientTable& table, std::uint64_t d,
                                        std::complex<double> s, std::uint64_t N_trunc) {
  check_series_args(table, d, s, N_trunc);
  const std::complex<double> factor = congruence_factor(spec, d, s);
  TruncatedSeries r;
  r.N_trunc = N_trunc;
  r.value = factor * partial_sum(table, 1, s, N_trunc);
  r.tail_bound = std::abs(factor) * growth_constant(table, N_trunc) *
                 tail_integral(s.real(), 1.0, static_cast<double>(N_trunc));
  return r;
}

TruncatedSeries congruence_identity_rhs(const LFunctionSpec& spec, std::uint64_t d, std::complex<double> s,
                                        std::uint64_t N_trunc) {
  return congruence_identity_rhs(spec, sieve(spec, N_trunc), d, s, N_trunc);
}

CongruenceSuite verify_congruence_identity(const LFunctionSpec& spec, std::uint64_t d_max, std::complex<double> s,
                                           std::uint64_t N_trunc) {
  if (d_max == 0) throw std::invalid_argument("d_max must be positive");
  if (N_trunc < d_max) throw std::invalid_argument("N_trunc must be >= d_max");
  if (!(s.real() > 1.0)) throw std::invalid_argument("series needs Re(s) > 1");
  const CoefficientTable table = sieve(spec, N_trunc);

  CongruenceSuite suite;
  suite.spec_name = spec.name;
  suite.s = s;
  suite.N_trunc = N_trunc;
  suite.d_max = d_max;
  suite.growth_constant = growth_constant(table, N_trunc);

  const std::complex<double> full = partial_sum(table, 1, s, N_trunc);
  const double full_tail = suite.growth_constant * tail_integral(s.real(), 1.0, static_cast<double>(N_trunc));
  for (std::uint64_t d = 1; d <= d_max; ++d) {
    try {
      squarefree_primes(d);
    } catch (const std::invalid_argument&) {
      continue;
    }
    CongruenceCheck check;
    check.d = d;
    check.lhs = congruence_restricted_series(table, d, s, N_trunc);
    const std::complex<double> factor = congruence_factor(spec, d, s);
    check.rhs.N_trunc = N_trunc;
    check.rhs.value = factor * full;
    check.rhs.tail_bound = std::abs(factor) * full_tail;
    check.abs_diff = std::abs(check.lhs.value - check.rhs.value);
    check.budget = check.lhs.tail_bound + check.rhs.tail_bound;
    check.pass = check.abs_diff <= check.budget;
    suite.all_pass = suite.all_pass && check.pass;
    suite.checks.push_back(check);
  }
  return suite;
}

CoprimeDoublePolynomial coprime_double_polynomial(const CoefficientTable& table, std::uint64_t M, std::uint64_t X) {
  if (M == 0 || X == 0) throw std::invalid_argument("coprime_double_polynomial: M and X must be positive");
  CoprimeDoublePolynomial D;
  D.M = M;
  D.X = X;
  D.m_lo = M + 1;
  D.m_hi = 2 * M;
  D.k_lo = std::max<std::uint64_t>(1, (X + 3 * M - 1) / (3 * M));
  D.k_hi = 3 * X / M;
  if (D.k_hi < D.k_lo) throw std::invalid_argument("coprime_double_polynomial: empty k range");
  const std::uint64_t need = std::max(D.m_hi, D.k_hi);
  if (need > table.x_max())
    throw std::out_of_range("coprime_double_polynomial: needs coefficients up to " + std::to_string(need));

  const std::uint64_t n_lo = D.m_lo * D.k_lo;
  std::vector<double> coeffs(D.m_hi * D.k_hi - n_lo + 1, 0.0);

  // gcd(m, k) <= m <= 2M, so every squarefree d <= 2M can carry a term.
  for (std::uint64_t d = 1; d <= D.m_hi; ++d) {
    std::vector<std::uint64_t> primes;
    try {
      primes = squarefree_primes(d);
    } catch (const std::invalid_argument&) {
      continue;
    }
    const double mu = primes.size() % 2 ? -1.0 : 1.0;
    const std::uint64_t m_first = (D.m_lo + d - 1) / d * d;
    const std::uint64_t k_first = (D.k_lo + d - 1) / d * d;
    if (m_first > D.m_hi || k_first > D.k_hi) continue;
    D.moduli.push_back(d);
    for (std::uint64_t m = m_first; m <= D.m_hi; m += d) {
      const double am = mu * table[m];
      if (am == 0.0) continue;
      for (std::uint64_t k = k_first; k <= D.k_hi; k += d) coeffs[m * k - n_lo] += am * table[k];
    }
  }
  D.collapsed = DirichletPolynomial::make(n_lo, std::move(coeffs));
  return D;
}

std::string to_string(SplitCheck check) {
  switch (check) {
    case SplitCheck::holds:
      return "holds";
    case SplitCheck::violated:
      return "violated";
    case SplitCheck::not_applicable:
      return "not_applicable";
  }
  return "unknown";
}

SplitCheck multiplicative_split_check(const CoefficientTable& table, std::uint64_t m, std::uint64_t k) {
  if (m == 0 || k == 0 || m > table.x_max() / k)
    throw std::out_of_range("multiplicative_split_check: m * k outside the table");
  if (std::gcd(m, k) != 1) return SplitCheck::not_applicable;
  const double product = table[m] * table[k];
  return std::abs(table[m * k] - product) <= 1e-9 * (1.0 + std::abs(product)) ? SplitCheck::holds
                                                                              : SplitCheck::violated;
}

}  // namespace selberg
