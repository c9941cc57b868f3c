#include <catch2/catch_amalgamated.hpp>

#include "selberg/spec_file.hpp"

using namespace selberg;

TEST_CASE("parse a delta spec", "[spec_file]") {
  const auto spec = parse_spec(R"(
# Ramanujan Delta
name = "delta"
family = delta
degree = 2
kappa = 1
epsilon = 0.002
gamma_shifts = [11/2, 13/2]
)");
  CHECK(spec.name == "delta");
  CHECK(spec.family == Family::delta);
  CHECK(spec.degree == 2);
  CHECK(spec.kappa == 1.0);
  CHECK(spec.epsilon == 0.002);
  REQUIRE(spec.gamma_shifts.size() == 2);
  CHECK(spec.gamma_shifts[0] == std::complex<double>(5.5, 0.0));
  CHECK(spec.effective_theta() == 0.5);
}

TEST_CASE("character and Sato-Tate keys", "[spec_file]") {
  const auto chi = parse_spec("family = dirichlet_char\nmodulus = 4\n");
  CHECK(chi.discriminant == -4);
  const auto chi8 = parse_spec("family = dirichlet_char\ndiscriminant = -8\n");
  CHECK(chi8.discriminant == -8);
  const auto st = parse_spec("family = sato_tate\nseed = 9\ntheta = 1/3\n");
  CHECK(st.seed == 9);
  CHECK(st.effective_theta() == Catch::Approx(1.0 / 3.0));
}

TEST_CASE("custom local factors", "[spec_file]") {
  const auto spec = parse_spec(R"(
family = custom
degree = 2
local.2 = [1, -1]
local.default = [1, 0, 1]
gamma_shifts = ["0.5+1i", "0.5-1i"]
profile = none
)");
  CHECK(spec.local_factor(2).poly == std::vector<double>{1, -1});
  CHECK(spec.local_factor(7).poly == std::vector<double>{1, 0, 1});
  CHECK(spec.gamma_shifts[1] == std::complex<double>(0.5, -1.0));
}

TEST_CASE("malformed specs are rejected", "[spec_file]") {
  CHECK_THROWS_AS(parse_spec("name = x\n"), SpecFormatError);                                // no family
  CHECK_THROWS_AS(parse_spec("family = zeta\nfoo = 1\n"), SpecFormatError);                   // unknown key
  CHECK_THROWS_AS(parse_spec("family = zeta\nfamily = zeta\n"), SpecFormatError);             // duplicate
  CHECK_THROWS_AS(parse_spec("family = zeta\ndegree = 2\n"), SpecFormatError);                // wrong degree
  CHECK_THROWS_AS(parse_spec("family = zeta\nseed = 2\n"), SpecFormatError);                  // misplaced key
  CHECK_THROWS_AS(parse_spec("family = dirichlet_char\n"), SpecFormatError);                  // no modulus
  CHECK_THROWS_AS(parse_spec("family = custom\ndegree = 1\nlocal.4 = [1, 1]\n"), SpecFormatError);  // not prime
  CHECK_THROWS_AS(parse_spec("family = zeta\nkappa = abc\n"), SpecFormatError);
  CHECK_THROWS_AS(parse_spec("family = zeta\njust words\n"), SpecFormatError);
  CHECK_THROWS_AS(parse_spec("family = elliptic\n"), SpecFormatError);
  CHECK_THROWS_AS(parse_spec("family = delta\ngamma_shifts = [1]\n"), SpecFormatError);
}

TEST_CASE("missing spec file", "[spec_file]") {
  CHECK_THROWS(load_spec("/nonexistent/spec.toml"));
}
