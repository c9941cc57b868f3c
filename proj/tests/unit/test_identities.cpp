#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <numeric>

#include "selberg/identities.hpp"

using namespace selberg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Coefficients of sum over coprime pairs, by direct gcd filtering.
std::vector<double> brute_coprime(const CoefficientTable& t, const CoprimeDoublePolynomial& D, std::vector<double>* scale) {
  const std::uint64_t n_lo = D.m_lo * D.k_lo;
  std::vector<double> c(D.m_hi * D.k_hi - n_lo + 1, 0.0);
  if (scale) scale->assign(c.size(), 0.0);
  for (std::uint64_t m = D.m_lo; m <= D.m_hi; ++m)
    for (std::uint64_t k = D.k_lo; k <= D.k_hi; ++k)
      if (std::gcd(m, k) == 1) {
        c[m * k - n_lo] += t[m] * t[k];
        if (scale) (*scale)[m * k - n_lo] += std::abs(t[m] * t[k]);
      }
  return c;
}

}  // namespace

TEST_CASE("congruence restricted series for zeta", "[identities]") {
  const auto zeta = sieve(zeta_spec(), 1'000'000);
  const auto two = congruence_restricted_series(zeta, 2, {2.0, 0.0}, 1'000'000);
  CHECK(std::abs(two.value - std::numbers::pi * std::numbers::pi / 24.0) <= two.tail_bound);
  CHECK_THAT(two.value.real(), WithinAbs(0.4112335, 1e-6));
  const auto six = congruence_restricted_series(zeta, 6, {2.0, 0.0}, 1'000'000);
  CHECK(std::abs(six.value - std::numbers::pi * std::numbers::pi / 216.0) <= six.tail_bound);
  CHECK_THAT(six.value.real(), WithinAbs(0.0456926, 1e-6));
}

TEST_CASE("congruence series preconditions", "[identities]") {
  const auto zeta = sieve(zeta_spec(), 1000);
  CHECK_THROWS_AS(congruence_restricted_series(zeta, 4, {2.0, 0.0}, 1000), std::invalid_argument);
  CHECK_THROWS_AS(congruence_restricted_series(zeta, 2, {1.0, 0.0}, 1000), std::invalid_argument);
  CHECK_THROWS_AS(congruence_restricted_series(zeta, 7, {2.0, 0.0}, 5), std::invalid_argument);
  CHECK_THROWS_AS(congruence_restricted_series(zeta, 2, {2.0, 0.0}, 5000), std::out_of_range);
  CHECK_THROWS_AS(congruence_identity_rhs(zeta_spec(), zeta, 12, {2.0, 0.0}, 1000), std::invalid_argument);
  // The tail budget needs Re s > 1.51.
  CHECK(std::isinf(congruence_restricted_series(zeta, 2, {1.4, 0.0}, 1000).tail_bound));
}

TEST_CASE("congruence factor", "[identities]") {
  const std::complex<double> s(2.0, 0.0);
  CHECK_THAT(congruence_factor(zeta_spec(), 2, s).real(), WithinAbs(0.25, 1e-15));
  CHECK(congruence_factor(zeta_spec(), 1, s) == std::complex<double>(1.0, 0.0));
  const auto chi = dirichlet_character_for_modulus(4);
  CHECK_THAT(congruence_factor(chi, 3, s).real(), WithinAbs(-1.0 / 9.0, 1e-15));

  // Displayed form equals the product form for squarefree d.
  const std::complex<double> s2(2.0, 3.5);
  for (const auto& spec : {zeta_spec(), chi, ramanujan_delta_spec(), random_sato_tate_spec(3)})
    for (std::uint64_t d : {1ull, 2ull, 3ull, 6ull, 10ull, 15ull, 30ull, 210ull}) {
      const auto a = congruence_factor(spec, d, s2);
      const auto b = congruence_factor_product_form(spec, d, s2);
      REQUIRE(std::abs(a - b) <= 1e-14 * (1.0 + std::abs(b)));
    }
}

TEST_CASE("identity right side", "[identities]") {
  const auto zeta_spec_ = zeta_spec();
  const auto zeta = sieve(zeta_spec_, 100'000);
  const std::complex<double> s(2.0, 0.0);
  const auto lhs = congruence_restricted_series(zeta, 2, s, 100'000);
  const auto rhs = congruence_identity_rhs(zeta_spec_, zeta, 2, s, 100'000);
  CHECK(std::abs(lhs.value - rhs.value) <= lhs.tail_bound + rhs.tail_bound);
  const auto full = congruence_identity_rhs(zeta_spec_, zeta, 1, s, 100'000);
  CHECK(full.value == congruence_restricted_series(zeta, 1, s, 100'000).value);

  const auto chi_spec = dirichlet_character_for_modulus(4);
  const auto chi = sieve(chi_spec, 1'000'000);
  const auto l = congruence_restricted_series(chi, 3, s, 1'000'000);
  const auto r = congruence_identity_rhs(chi_spec, chi, 3, s, 1'000'000);
  CHECK(std::abs(l.value - r.value) <= l.tail_bound + r.tail_bound);

  const auto delta_spec = ramanujan_delta_spec();
  const auto dl = congruence_restricted_series(delta_spec, 2, {3.0, 0.0}, 100'000);
  const auto dr = congruence_identity_rhs(delta_spec, 2, {3.0, 0.0}, 100'000);
  CHECK(std::abs(dl.value - dr.value) <= dl.tail_bound + dr.tail_bound);
}

TEST_CASE("identity suite at a complex point", "[identities]") {
  const auto suite = verify_congruence_identity(random_sato_tate_spec(8), 30, {2.0, 7.0}, 200'000);
  CHECK(suite.all_pass);
  CHECK(suite.checks.size() == 19);  // squarefree d <= 30
  for (const auto& c : suite.checks) CHECK(c.abs_diff <= c.budget);
}

TEST_CASE("coprime double polynomial against gcd enumeration", "[identities]") {
  for (const auto& spec : {zeta_spec(), ramanujan_delta_spec()}) {
    const auto table = sieve(spec, 3000);
    for (auto [M, X] : {std::pair<std::uint64_t, std::uint64_t>{3, 30}, {10, 1000}, {1, 50}, {7, 200}}) {
      const auto D = coprime_double_polynomial(table, M, X);
      std::vector<double> scale;
      const auto brute = brute_coprime(table, D, &scale);
      REQUIRE(D.collapsed.coeffs.size() == brute.size());
      for (std::size_t i = 0; i < brute.size(); ++i)
        REQUIRE(std::abs(D.collapsed.coeffs[i] - brute[i]) <= 1e-12 * std::max(1.0, scale[i]));
    }
  }
  const auto table = sieve(zeta_spec(), 100);
  const auto D1 = coprime_double_polynomial(table, 1, 30);
  CHECK(D1.m_lo == 2);
  CHECK(D1.m_hi == 2);
  CHECK(D1.moduli == std::vector<std::uint64_t>{1, 2});
}

TEST_CASE("coprime double polynomial of a zero table", "[identities]") {
  std::vector<double> zeros(500, 0.0);
  zeros[0] = 1.0;
  const auto D = coprime_double_polynomial(CoefficientTable::from_values("zeros", zeros), 5, 100);
  for (double c : D.collapsed.coeffs) CHECK(c == 0.0);
}

TEST_CASE("multiplicative split", "[identities]") {
  CHECK(multiplicative_split_check(sieve(zeta_spec(), 20), 3, 4) == SplitCheck::holds);
  const auto delta = sieve(ramanujan_delta_spec(), 20);
  CHECK(multiplicative_split_check(delta, 2, 3) == SplitCheck::holds);
  CHECK_THAT(delta[6] * std::pow(6.0, 5.5), WithinRel(-6048.0, 1e-12));
  CHECK(multiplicative_split_check(delta, 2, 4) == SplitCheck::not_applicable);
  std::vector<double> v(12, 1.0);
  v[5] = 2.0;
  CHECK(multiplicative_split_check(CoefficientTable::from_values("v", v), 2, 3) == SplitCheck::violated);
  CHECK_THROWS_AS(multiplicative_split_check(delta, 5, 5), std::out_of_range);
  CHECK(to_string(SplitCheck::not_applicable) == "not_applicable");
}
