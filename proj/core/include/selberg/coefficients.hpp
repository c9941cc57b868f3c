#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace selberg {

/// Inverse local polynomial at a prime: L_p(s) = 1 / P(p^{-s}) with
/// P(x) = poly[0] + poly[1] x + ... + poly[deg] x^deg and poly[0] = 1.
struct EulerLocalFactor {
  std::uint64_t p = 0;
  std::vector<double> poly;
};

/// A(p^0), ..., A(p^{k_max}): the power series of 1/P(x) through x^{k_max}.
/// Throws std::invalid_argument when P has constant term other than 1.
std::vector<double> local_coefficients(const EulerLocalFactor& factor, std::size_t k_max);

enum class Family { zeta, dirichlet_char, delta, sato_tate, custom };
enum class ValidationProfile { none, gsp4_spinor };

std::string to_string(Family family);
Family family_from_string(const std::string& name);

/// A named family of real Dirichlet coefficients given by its Euler factors,
/// together with the analytic parameters consumed by the exponent calculus.
struct LFunctionSpec {
  std::string name;
  Family family = Family::custom;
  int degree = 1;
  std::optional<double> theta;  // subconvexity exponent; defaults to degree / 4
  std::optional<double> kappa;  // non-vanishing exponent in (0, 1]
  double epsilon = 1e-3;
  std::vector<std::complex<double>> gamma_shifts;  // metadata only
  ValidationProfile profile = ValidationProfile::none;
  bool pole_at_one = false;

  // Family parameters kept for reporting.
  std::int64_t discriminant = 0;
  std::uint64_t seed = 0;

  std::function<EulerLocalFactor(std::uint64_t p)> provider;
  /// Optional hint that primes up to the argument are about to be requested.
  std::function<void(std::uint64_t)> reserve;

  double effective_theta() const;

  /// provider(p), checked against the factor invariants.
  EulerLocalFactor local_factor(std::uint64_t p) const;

  /// Throws std::invalid_argument if a field invariant is violated.
  void validate() const;
};

LFunctionSpec zeta_spec();
/// Real primitive character n -> (D/n) for a fundamental discriminant D.
LFunctionSpec dirichlet_character_spec(std::int64_t discriminant);
/// Real primitive character of conductor q, when unique (q = 4 gives chi_{-4}).
LFunctionSpec dirichlet_character_for_modulus(std::uint64_t modulus);
/// Ramanujan Delta, analytic normalisation A(p) = tau(p) / p^{11/2}.
LFunctionSpec ramanujan_delta_spec();
/// Degree 2 family with a_p = 2 cos(theta_p), theta_p Sato-Tate distributed,
/// drawn deterministically from (seed, p).
LFunctionSpec random_sato_tate_spec(std::uint64_t seed);
/// Explicit local polynomials per prime; unlisted primes use `fallback`
/// (the trivial factor P = 1 when empty).
LFunctionSpec custom_spec(std::string name, int degree,
                          std::map<std::uint64_t, std::vector<double>> factors,
                          std::vector<double> fallback = {});

/// Kronecker symbol (D / n).
int kronecker_symbol(std::int64_t D, std::uint64_t n);
bool is_fundamental_discriminant(std::int64_t D);

struct SieveOptions {
  double eps_check = 0.01;
  std::size_t max_reported = 32;
};

struct SieveDiagnostics {
  std::uint64_t magnitude_violations = 0;  // m with |A(m)| > m^{1/2 + eps_check}
  std::vector<std::uint64_t> magnitude_examples;
  std::vector<std::uint64_t> profile_violations;  // primes with |A(p)| > 36 (gsp4 profile)
};

/// Immutable table A(1..x_max).
class CoefficientTable {
 public:
  /// Table from explicit values A(1), ..., A(X). No multiplicativity is
  /// implied; use this for statistics-only experiments.
  static CoefficientTable from_values(std::string spec_name, std::vector<double> values);

  const std::string& spec_name() const noexcept { return spec_name_; }
  std::uint64_t x_max() const noexcept { return values_.size() - 1; }
  bool multiplicative() const noexcept { return multiplicative_; }
  const SieveDiagnostics& diagnostics() const noexcept { return diagnostics_; }

  /// A(m); throws std::out_of_range outside [1, x_max].
  double coefficient(std::uint64_t m) const;
  /// Unchecked A(m).
  double operator[](std::uint64_t m) const noexcept { return values_[m]; }
  /// A(1..x_max) as a contiguous view (element 0 is A(1)).
  std::span<const double> values() const noexcept { return {values_.data() + 1, values_.size() - 1}; }

 private:
  friend CoefficientTable sieve(const LFunctionSpec&, std::uint64_t, const SieveOptions&);
  CoefficientTable() = default;

  std::string spec_name_;
  std::vector<double> values_;  // values_[0] unused
  bool multiplicative_ = false;
  SieveDiagnostics diagnostics_;
};

/// Multiplicative assembly of A(1..X) from the spec's local factors:
/// smallest-prime-factor table, then prime-power lookup.
CoefficientTable sieve(const LFunctionSpec& spec, std::uint64_t X, const SieveOptions& options = {});

double coefficient(const CoefficientTable& table, std::uint64_t m);

}  // namespace selberg
