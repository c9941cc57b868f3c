#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "selberg/dirichlet_poly.hpp"
#include "selberg/tau.hpp"

using namespace selberg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Closed form of int_{-T}^{T} |sum a_n n^{-1/2-it}|^2 dt.
long double exact_second_moment(const DirichletPolynomial& p, long double T) {
  long double total = 0.0L;
  for (std::uint64_t n = p.n_lo; n <= p.n_hi(); ++n)
    for (std::uint64_t m = p.n_lo; m <= p.n_hi(); ++m) {
      const long double w = static_cast<long double>(p.coefficient(n)) * p.coefficient(m) /
                            std::sqrt(static_cast<long double>(n) * m);
      if (n == m) {
        total += 2.0L * T * w;
      } else {
        const long double l = std::log(static_cast<long double>(m) / n);
        total += w * 2.0L * std::sin(T * l) / l;
      }
    }
  return total;
}

DirichletPolynomial random_signs(std::uint64_t N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> a(N);
  for (auto& v : a) v = (rng() & 1) ? 1.0 : -1.0;
  return DirichletPolynomial::make(N + 1, std::move(a));
}

}  // namespace

TEST_CASE("evaluation", "[dirichlet_poly]") {
  const auto one = DirichletPolynomial::make(1, {1.0});
  CHECK(evaluate(one, {0.3, 17.0}) == std::complex<double>(1.0, 0.0));
  const auto three = DirichletPolynomial::make(1, {1.0, 1.0, 1.0});
  CHECK_THAT(std::abs(evaluate(three, {0.0, 0.0}) - 3.0), WithinAbs(0.0, 1e-15));

  const auto zeta_block = DirichletPolynomial::make(1, std::vector<double>(10'000, 1.0));
  long double oracle = 0.0L;
  for (std::uint64_t n = 10'000; n >= 1; --n) oracle += 1.0L / (static_cast<long double>(n) * n);
  const auto z2 = evaluate(zeta_block, {2.0, 0.0});
  CHECK_THAT(z2.real(), WithinAbs(static_cast<double>(oracle), 1e-12 * zeta_block.l1_at(2.0)));
  CHECK_THAT(z2.real(), WithinAbs(1.6448340718, 1e-10));
  CHECK(z2.imag() == 0.0);
}

TEST_CASE("evaluation against an extended precision oracle", "[dirichlet_poly]") {
  const auto p = random_signs(2000, 3);
  for (std::complex<double> s : {std::complex<double>(0.5, 1234.5), {0.5, -77.0}, {1.5, 1e5}}) {
    std::complex<long double> oracle = 0.0L;
    for (std::uint64_t n = p.n_lo; n <= p.n_hi(); ++n) {
      const long double ln = std::log(static_cast<long double>(n));
      oracle += static_cast<long double>(p.coefficient(n)) * std::exp(-s.real() * ln) *
                std::complex<long double>(std::cos(s.imag() * ln), -std::sin(s.imag() * ln));
    }
    const auto v = evaluate(p, s);
    const double scale = p.l1_at(s.real());
    CHECK(std::abs(v.real() - static_cast<double>(oracle.real())) <= 1e-12 * scale);
    CHECK(std::abs(v.imag() - static_cast<double>(oracle.imag())) <= 1e-12 * scale);
    CHECK(std::abs(evaluate(p, std::conj(s)) - std::conj(v)) <= 1e-13 * scale);
  }
}

TEST_CASE("grid evaluation matches direct evaluation", "[dirichlet_poly]") {
  const auto p = random_signs(3000, 4);
  const auto line = evaluate_on_line(p, 0.5, -20.0, 0.037, 5000);
  REQUIRE(line.values.size() == 5000);
  for (std::size_t i = 0; i < 5000; i += 97) {
    const auto direct = evaluate(p, {0.5, line.t_grid[i]});
    REQUIRE(std::abs(line.values[i] - direct) <= 1e-10 * p.l1_at(0.5));
  }
}

TEST_CASE("building M and K", "[dirichlet_poly]") {
  const auto zeta = sieve(zeta_spec(), 1000);
  const auto M = build_M(zeta, 4);
  CHECK(M.n_lo == 5);
  CHECK(M.n_hi() == 8);
  CHECK(M.coeffs == std::vector<double>(4, 1.0));
  const auto K = build_K(zeta, 90, 3);
  CHECK(K.n_lo == 10);
  CHECK(K.n_hi() == 90);

  const auto delta = sieve(ramanujan_delta_spec(), 100);
  const auto tau = tau_qexpansion(20);
  const auto Md = build_M(delta, 10);
  for (std::uint64_t m = 11; m <= 20; ++m)
    CHECK_THAT(Md.coefficient(m),
               WithinRel(static_cast<double>(static_cast<long double>(tau[m - 1]) / std::pow(m, 5.5L)), 1e-12));
  CHECK_THROWS_AS(build_M(zeta, 600), std::out_of_range);
  CHECK_THROWS_AS(DirichletPolynomial::make(0, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(DirichletPolynomial::make(1, {}), std::invalid_argument);
}

TEST_CASE("second moment of small polynomials", "[dirichlet_poly]") {
  const auto single = DirichletPolynomial::make(37, {1.0});
  CHECK_THAT(second_moment(single, 50.0).value, WithinRel(2.0 * 50.0 / 37.0, 1e-12));
  CHECK(second_moment(single, 0.0).value == 0.0);

  const auto pair = DirichletPolynomial::make(1, {1.0, 1.0});
  // |1 + 2^{-1/2 - it}|^2 = 3/2 + sqrt(2) cos(t log 2)
  const double exact = 2.0 * (1.5 * 10.0 + std::sqrt(2.0) * std::sin(10.0 * std::log(2.0)) / std::log(2.0));
  const auto sm = second_moment(pair, 10.0);
  CHECK(std::abs(sm.value - exact) <= sm.error_estimate);
  CHECK_THAT(sm.value, WithinRel(exact, 1e-5));
}

TEST_CASE("second moment against the closed form", "[dirichlet_poly]") {
  for (std::uint64_t seed : {1ull, 2ull}) {
    const auto p = random_signs(150, seed);
    for (double T : {10.0, 100.0, 1000.0}) {
      const auto sm = second_moment(p, T);
      INFO("seed " << seed << ", T = " << T);
      REQUIRE_THAT(sm.value, WithinRel(static_cast<double>(exact_second_moment(p, T)), 1e-8));
      REQUIRE(sm.error_estimate <= 1e-6 * sm.value);
    }
  }
}

TEST_CASE("second moment properties", "[dirichlet_poly]") {
  const auto p = random_signs(500, 9);
  double previous = 0.0;
  for (double T : {0.0, 1.0, 5.0, 25.0, 125.0, 625.0}) {
    const double v = second_moment(p, T).value;
    REQUIRE(v >= previous);
    previous = v;
  }
  const double h = default_line_step(p);
  const double coarse = second_moment(p, 1000.0, h).value;
  const double fine = second_moment(p, 1000.0, h / 2).value;
  CHECK(std::abs(coarse - fine) <= 1e-6 * fine);

  const double T = 100.0 * static_cast<double>(p.n_hi());
  CHECK_THAT(second_moment(p, T).value / (2.0 * T), WithinRel(p.weighted_l2(), 0.1));

  CHECK_THROWS_AS(second_moment(p, 10.0, 2.0 * max_line_step(p)), std::invalid_argument);
}

TEST_CASE("mean value ratios", "[dirichlet_poly]") {
  const auto single = DirichletPolynomial::make(1000, {1.0});
  CHECK_THAT(mvt_ratio(single, 100.0).ratio, WithinRel(2.0 * 100.0 / 1100.0, 1e-9));

  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) worst = std::max(worst, mvt_ratio(random_signs(1000, seed), 1000.0).ratio);
  CHECK(worst <= 8.0);

  const auto zeta = sieve(zeta_spec(), 2000);
  CHECK(mvt_ratio(build_M(zeta, 1000), 10.0).ratio <= 8.0);
}

TEST_CASE("subconvexity profile", "[dirichlet_poly]") {
  const auto zeta = sieve(zeta_spec(), 4000);
  const auto p = k_subconvexity_profile(zeta, 10'000, 10, 100.0, 1.0 / 6.0, 1e-3, std::nullopt, true);
  CHECK(std::isfinite(p.ratio));
  CHECK(p.ratio > 0.0);
  const double envelope = std::pow(100.0, 1.0 / 6.0 + 1e-3) + std::pow(10'000.0 / 1000.0, 0.5 + 1e-3);
  CHECK_THAT(p.envelope, WithinRel(envelope, 1e-14));
  REQUIRE(p.profile.has_value());
  double grid_max = 0.0;
  for (const auto& v : p.profile->values) grid_max = std::max(grid_max, std::abs(v));
  CHECK(p.sup >= grid_max);
  CHECK_THAT(std::abs(evaluate(build_K(zeta, 10'000, 10), {0.5, p.t_at_sup})), WithinRel(p.sup, 1e-12));

  // X = 5, M = 10: K is the single term k = 1.
  const auto tiny = k_subconvexity_profile(zeta, 5, 10, 10.0, 0.5);
  CHECK_THAT(tiny.sup, WithinAbs(1.0, 1e-15));
  CHECK_THROWS_AS(k_subconvexity_profile(zeta, 10'000, 10, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(k_subconvexity_profile(zeta, 10'000, 10, 100.0, 0.5, 1e-3, 10.0), std::invalid_argument);
}

TEST_CASE("Perron window", "[dirichlet_poly]") {
  const auto zeta = sieve(zeta_spec(), 1000);
  const auto p = perron_window(zeta, 100, 10, 3, 1000.0);
  CHECK(p.direct_value == 5.0);  // (4, 25), (5, 21), (5, 22), (6, 17), (4, 27)
  CHECK(p.abs_error <= 0.5);
  CHECK_THAT(p.c, WithinAbs(1.0 + 1.0 / std::log(100.0), 1e-15));
  const auto finer = perron_window(zeta, 100, 10, 3, 10'000.0);
  CHECK(finer.abs_error < p.abs_error);

  // [211, 212] with M = 100 holds no coprime pair.
  const auto empty = perron_window(sieve(zeta_spec(), 1000), 211, 1, 100, 1000.0);
  CHECK(empty.direct_value == 0.0);
  CHECK(std::abs(empty.contour_value) <= 0.05);

  CHECK_THROWS_AS(perron_window(zeta, 100, 10, 3, 5.0), std::invalid_argument);
}

TEST_CASE("Perron window on Delta", "[dirichlet_poly]") {
  const auto delta = sieve(ramanujan_delta_spec(), 2000);
  const auto p = perron_window(delta, 1000, 100, 5, 1e4);
  CHECK(p.abs_error <= 1e-2 * std::abs(p.direct_value));
}

TEST_CASE("kernel bound", "[dirichlet_poly]") {
  const std::complex<double> two(2.0, 0.0);
  const auto at_two = kernel_bound_check(0.01, std::span(&two, 1));
  CHECK(at_two.pass);
  CHECK_THAT(at_two.worst.value, WithinAbs((1.01 * 1.01 - 1.0) / 2.0, 1e-15));

  const std::complex<double> high(0.5, 100.0);
  const auto at_high = kernel_bound_check(0.01, std::span(&high, 1));
  CHECK(at_high.pass);
  CHECK_THAT(at_high.worst.bound, WithinAbs(0.03, 1e-15));
  CHECK(at_high.worst.value <= 2.01 / 100.0);

  const std::complex<double> zero(0.0, 0.0);
  const auto at_zero = kernel_bound_check(0.5, std::span(&zero, 1));
  CHECK_THAT(at_zero.worst.value, WithinAbs(std::log(1.5), 1e-15));
  CHECK(at_zero.pass);

  for (double u : {1e-4, 1e-2, 0.1, 1.0}) CHECK(kernel_bound_check(u, default_kernel_samples()).pass);
  CHECK_THROWS_AS(kernel_bound_check(0.0, default_kernel_samples()), std::invalid_argument);
  CHECK_THROWS_AS(kernel_bound_check(1.5, default_kernel_samples()), std::invalid_argument);
}
