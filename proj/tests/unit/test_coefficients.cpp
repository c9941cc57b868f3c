#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "selberg/coefficients.hpp"
#include "selberg/tau.hpp"

using namespace selberg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double tau_normalised(std::uint64_t m, const std::vector<wide_int>& tau) {
  return static_cast<double>(static_cast<long double>(tau[m - 1]) / std::pow(static_cast<long double>(m), 5.5L));
}

void check_multiplicative(const CoefficientTable& table) {
  const std::uint64_t X = table.x_max();
  for (std::uint64_t m = 2; m <= X; ++m)
    for (std::uint64_t n = 2; m * n <= X; ++n) {
      if (std::gcd(m, n) != 1) continue;
      const double product = table[m] * table[n];
      INFO(table.spec_name() << ": m = " << m << ", n = " << n);
      REQUIRE(std::abs(table[m * n] - product) <= 1e-12 * (1.0 + std::abs(product)));
    }
}

}  // namespace

TEST_CASE("local coefficients invert the local polynomial", "[coefficients]") {
  CHECK(local_coefficients({2, {1.0, -1.0}}, 3) == std::vector<double>{1, 1, 1, 1});
  CHECK(local_coefficients({3, {1.0, 1.0}}, 4) == std::vector<double>{1, -1, 1, -1, 1});

  const double lambda2 = -24.0 / std::pow(2.0, 5.5);
  const auto delta2 = local_coefficients({2, {1.0, -lambda2, 1.0}}, 1);
  REQUIRE(delta2.size() == 2);
  CHECK(delta2[0] == 1.0);
  CHECK_THAT(delta2[1], WithinAbs(-0.530330, 5e-7));

  CHECK_THROWS_AS(local_coefficients({2, {2.0, 1.0}}, 2), std::invalid_argument);
}

TEST_CASE("local coefficients satisfy P * L = 1 as power series", "[coefficients]") {
  const std::vector<double> poly{1.0, -0.7, 0.3, 0.2};
  const auto a = local_coefficients({5, poly}, 12);
  for (std::size_t k = 0; k <= 12; ++k) {
    double conv = 0.0;
    for (std::size_t j = 0; j < poly.size() && j <= k; ++j) conv += poly[j] * a[k - j];
    CHECK_THAT(conv, WithinAbs(k == 0 ? 1.0 : 0.0, 1e-14));
  }
}

TEST_CASE("zeta table is all ones", "[coefficients]") {
  const auto table = sieve(zeta_spec(), 10'000);
  CHECK(table.x_max() == 10'000);
  for (double v : table.values()) REQUIRE(v == 1.0);
  CHECK(coefficient(table, 7) == 1.0);
}

TEST_CASE("chi_{-4} table", "[coefficients]") {
  const auto table = sieve(dirichlet_character_for_modulus(4), 6);
  const std::vector<double> expected{1, 0, -1, 0, 1, 0};
  for (std::uint64_t m = 1; m <= 6; ++m) CHECK(table[m] == expected[m - 1]);
  CHECK(coefficient(table, 4) == 0.0);
  CHECK(table.spec_name() == "chi_m4");
}

TEST_CASE("character tables agree with the Kronecker symbol", "[coefficients]") {
  for (std::int64_t D : {-4, -3, 5, 8, -8, 12, -7, 13, -15}) {
    INFO("D = " << D);
    REQUIRE(is_fundamental_discriminant(D));
    const auto table = sieve(dirichlet_character_spec(D), 2000);
    for (std::uint64_t m = 1; m <= 2000; ++m) REQUIRE(table[m] == kronecker_symbol(D, m));
  }
}

TEST_CASE("Kronecker symbol values", "[coefficients]") {
  // (-4/n): 1, 0, -1, 0 on n = 1, 2, 3, 4; (5/n) is the Legendre symbol mod 5.
  CHECK(kronecker_symbol(-4, 3) == -1);
  CHECK(kronecker_symbol(5, 2) == -1);
  CHECK(kronecker_symbol(5, 4) == 1);
  CHECK(kronecker_symbol(5, 5) == 0);
  CHECK(kronecker_symbol(8, 7) == 1);
  CHECK(kronecker_symbol(8, 3) == -1);
  CHECK_FALSE(is_fundamental_discriminant(1));
  CHECK_FALSE(is_fundamental_discriminant(4));
  CHECK_FALSE(is_fundamental_discriminant(-16));
  CHECK_FALSE(is_fundamental_discriminant(18));
}

TEST_CASE("ambiguous or impossible moduli are rejected", "[coefficients]") {
  CHECK_THROWS_AS(dirichlet_character_for_modulus(8), std::invalid_argument);
  CHECK_THROWS_AS(dirichlet_character_for_modulus(6), std::invalid_argument);
  CHECK_THROWS_AS(dirichlet_character_spec(-16), std::invalid_argument);
  CHECK(dirichlet_character_for_modulus(3).discriminant == -3);
  CHECK(dirichlet_character_for_modulus(5).discriminant == 5);
}

TEST_CASE("Delta table matches the tau oracle", "[coefficients]") {
  constexpr std::uint64_t X = 10'000;
  const auto table = sieve(ramanujan_delta_spec(), X);
  const auto tau = tau_qexpansion(X);
  for (std::uint64_t m = 1; m <= X; ++m) {
    INFO("m = " << m);
    REQUIRE_THAT(table[m], WithinRel(tau_normalised(m, tau), 1e-9));
  }
  CHECK_THAT(coefficient(table, 2), WithinRel(-24.0 / std::pow(2.0, 5.5), 1e-14));
}

TEST_CASE("sieved tables are multiplicative", "[coefficients]") {
  check_multiplicative(sieve(zeta_spec(), 3000));
  check_multiplicative(sieve(dirichlet_character_for_modulus(4), 3000));
  check_multiplicative(sieve(ramanujan_delta_spec(), 3000));
  check_multiplicative(sieve(random_sato_tate_spec(7), 3000));
  check_multiplicative(sieve(custom_spec("toy", 2, {{2, {1.0, -1.0}}}, {1.0, 0.0, 1.0}), 3000));
}

TEST_CASE("prime powers come from the local factor", "[coefficients]") {
  const auto spec = random_sato_tate_spec(11);
  const auto table = sieve(spec, 5000);
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 13ull, 67ull}) {
    std::uint64_t q = p;
    for (std::size_t k = 1; q <= 5000; ++k, q *= p) {
      const auto local = local_coefficients(spec.local_factor(p), k);
      REQUIRE_THAT(table[q], WithinAbs(local[k], 1e-12));
    }
  }
}

TEST_CASE("Sato-Tate family", "[coefficients]") {
  const auto a = random_sato_tate_spec(1);
  const auto b = random_sato_tate_spec(1);
  const auto c = random_sato_tate_spec(2);
  bool differs = false;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::uint64_t p = 2; p <= 100'000; ++p) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= p && prime; ++d) prime = p % d != 0;
    if (!prime) continue;
    const auto fa = a.local_factor(p);
    const double ap = -fa.poly[1];
    REQUIRE(std::abs(ap) <= 2.0);
    REQUIRE(fa.poly == b.local_factor(p).poly);
    differs = differs || fa.poly != c.local_factor(p).poly;
    sum += ap;
    ++count;
  }
  CHECK(differs);
  CHECK(std::abs(sum / static_cast<double>(count)) < 0.05);
}

TEST_CASE("custom spec defaults unlisted primes to the fallback", "[coefficients]") {
  const auto spec = custom_spec("toy", 2, {{3, {1.0, 0.5, 0.25}}});
  const auto table = sieve(spec, 30);
  CHECK(table[2] == 0.0);
  CHECK(table[3] == -0.5);
  CHECK(table[9] == 0.0);  // 0.25 - 0.25
  CHECK(table[1] == 1.0);
}

TEST_CASE("spec validation", "[coefficients]") {
  CHECK_THROWS_AS(custom_spec("bad", 1, {{2, {1.0, 1.0, 1.0}}}).local_factor(2), std::invalid_argument);
  CHECK_THROWS_AS(custom_spec("bad", 1, {{2, {2.0}}}).local_factor(2), std::invalid_argument);
  auto spec = zeta_spec();
  spec.kappa = 1.5;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  auto delta = ramanujan_delta_spec();
  CHECK(delta.effective_theta() == 0.5);
  CHECK(delta.gamma_shifts.size() == 2);
}

TEST_CASE("coefficient access is range checked", "[coefficients]") {
  const auto table = sieve(zeta_spec(), 10);
  CHECK_THROWS_AS(table.coefficient(0), std::out_of_range);
  CHECK_THROWS_AS(table.coefficient(11), std::out_of_range);
  CHECK_THROWS_AS(sieve(zeta_spec(), 0), std::invalid_argument);
}

TEST_CASE("magnitude diagnostics are reported, not fatal", "[coefficients]") {
  const auto table = sieve(custom_spec("big", 1, {}, {1.0, -50.0}), 100);
  CHECK(table.diagnostics().magnitude_violations > 0);
  CHECK_FALSE(table.diagnostics().magnitude_examples.empty());

  auto gsp4 = custom_spec("gsp4", 4, {{2, {1.0, -40.0}}});
  gsp4.profile = ValidationProfile::gsp4_spinor;
  const auto flagged = sieve(gsp4, 10);
  CHECK(flagged.diagnostics().profile_violations == std::vector<std::uint64_t>{2});
}
