#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "selberg/coefficients.hpp"
#include "selberg/dirichlet_poly.hpp"

namespace selberg {

/// A truncated Dirichlet series together with a bound on the omitted tail.
struct TruncatedSeries {
  std::complex<double> value;
  double tail_bound = 0.0;  // +infinity when Re s <= 1.51
  std::uint64_t N_trunc = 0;
};

/// Exponent of the growth envelope |A(m)| <= C m^{0.51} used for tail bounds.
inline constexpr double kTailGrowthExponent = 0.51;

/// C = max_m |A(m)| / m^{0.51} over the table.
double table_growth_constant(const CoefficientTable& table);

/// sum_{m <= N, d | m} A(m) m^{-s}. Requires d squarefree, Re s > 1 and
/// d <= N <= x_max; violations throw std::invalid_argument / std::out_of_range.
TruncatedSeries congruence_restricted_series(const CoefficientTable& table, std::uint64_t d, std::complex<double> s,
                                             std::uint64_t N_trunc);
/// Same, sieving the spec up to N first.
TruncatedSeries congruence_restricted_series(const LFunctionSpec& spec, std::uint64_t d, std::complex<double> s,
                                             std::uint64_t N_trunc);

/// d^{-s} prod_{p | d} p^s (1 - P_p(p^{-s})).
std::complex<double> congruence_factor(const LFunctionSpec& spec, std::uint64_t d, std::complex<double> s);
/// prod_{p | d} (1 - P_p(p^{-s})); equal to congruence_factor for squarefree d.
std::complex<double> congruence_factor_product_form(const LFunctionSpec& spec, std::uint64_t d,
                                                    std::complex<double> s);

/// congruence_factor(d, s) * sum_{m <= N} A(m) m^{-s}.
TruncatedSeries congruence_identity_rhs(const LFunctionSpec& spec, const CoefficientTable& table, std::uint64_t d,
                                        std::complex<double> s, std::uint64_t N_trunc);
TruncatedSeries congruence_identity_rhs(const LFunctionSpec& spec, std::uint64_t d, std::complex<double> s,
                                        std::uint64_t N_trunc);

struct CongruenceCheck {
  std::uint64_t d = 0;
  TruncatedSeries lhs;
  TruncatedSeries rhs;
  double abs_diff = 0.0;
  double budget = 0.0;  // lhs.tail_bound + rhs.tail_bound
  bool pass = false;
};

struct CongruenceSuite {
  std::string spec_name;
  std::complex<double> s;
  std::uint64_t N_trunc = 0;
  std::uint64_t d_max = 0;
  double growth_constant = 0.0;
  std::vector<CongruenceCheck> checks;  // one per squarefree d <= d_max
  bool all_pass = true;
};

/// Both sides of the congruence-removal identity for every squarefree
/// d <= d_max, sharing one sieve of the spec up to N_trunc.
CongruenceSuite verify_congruence_identity(const LFunctionSpec& spec, std::uint64_t d_max, std::complex<double> s,
                                           std::uint64_t N_trunc);

/// D(s) = sum_{M < m <= 2M} sum_{X/3M <= k <= 3X/M, (m, k) = 1} A(m) A(k) (mk)^{-s},
/// assembled as sum_d mu(d) M_d(s) K_d(s) and collapsed onto n = mk.
struct CoprimeDoublePolynomial {
  std::uint64_t M = 0;
  std::uint64_t X = 0;
  std::uint64_t m_lo = 0, m_hi = 0;  // (M, 2M]
  std::uint64_t k_lo = 0, k_hi = 0;  // [ceil(X/3M), floor(3X/M)]
  std::vector<std::uint64_t> moduli;  // squarefree d <= 2M with a nonzero term
  DirichletPolynomial collapsed;      // support [m_lo k_lo, m_hi k_hi]
};

CoprimeDoublePolynomial coprime_double_polynomial(const CoefficientTable& table, std::uint64_t M, std::uint64_t X);

enum class SplitCheck { holds, violated, not_applicable };

std::string to_string(SplitCheck check);

/// For gcd(m, k) = 1: holds iff |A(mk) - A(m)A(k)| <= 1e-9 (1 + |A(m)A(k)|).
/// Throws std::out_of_range when mk exceeds the table.
SplitCheck multiplicative_split_check(const CoefficientTable& table, std::uint64_t m, std::uint64_t k);

}  // namespace selberg
