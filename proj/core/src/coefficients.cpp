#include "selberg/coefficients.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "selberg/arithmetic.hpp"
#include "selberg/tau.hpp"

namespace selberg {

std::vector<double> local_coefficients(const EulerLocalFactor& factor, std::size_t k_max) {
  const auto& c = factor.poly;
  if (c.empty() || c[0] != 1.0)
    throw std::invalid_argument("local factor at p = " + std::to_string(factor.p) +
                                " must have constant term 1");
  std::vector<double> a(k_max + 1, 0.0);
  a[0] = 1.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j < c.size() && j <= k; ++j) acc -= c[j] * a[k - j];
    a[k] = acc;
  }
  return a;
}

std::string to_string(Family family) {
  switch (family) {
    case Family::zeta: return "zeta";
    case Family::dirichlet_char: return "dirichlet_char";
    case Family::delta: return "delta";
    case Family::sato_tate: return "sato_tate";
    case Family::custom: return "custom";
  }
  return "custom";
}

Family family_from_string(const std::string& name) {
  if (name == "zeta") return Family::zeta;
  if (name == "dirichlet_char") return Family::dirichlet_char;
  if (name == "delta") return Family::delta;
  if (name == "sato_tate") return Family::sato_tate;
  if (name == "custom") return Family::custom;
  throw std::invalid_argument("unknown family '" + name + "'");
}

double LFunctionSpec::effective_theta() const {
  return theta ? *theta : static_cast<double>(degree) / 4.0;
}

void LFunctionSpec::validate() const {
  if (degree < 1) throw std::invalid_argument("spec '" + name + "': degree must be >= 1");
  if (theta && !(*theta >= 0.0)) throw std::invalid_argument("spec '" + name + "': theta must be >= 0");
  if (kappa && !(*kappa > 0.0 && *kappa <= 1.0))
    throw std::invalid_argument("spec '" + name + "': kappa must lie in (0, 1]");
  if (!(epsilon > 0.0)) throw std::invalid_argument("spec '" + name + "': epsilon must be > 0");
  if (!gamma_shifts.empty() && gamma_shifts.size() != static_cast<std::size_t>(degree))
    throw std::invalid_argument("spec '" + name + "': expected " + std::to_string(degree) +
                                " gamma shifts, got " + std::to_string(gamma_shifts.size()));
  if (!provider) throw std::invalid_argument("spec '" + name + "': no local factor provider");
}

EulerLocalFactor LFunctionSpec::local_factor(std::uint64_t p) const {
  EulerLocalFactor f = provider(p);
  if (f.p != p)
    throw std::logic_error("spec '" + name + "': provider returned factor for p = " + std::to_string(f.p) +
                           " when asked for " + std::to_string(p));
  while (f.poly.size() > 1 && f.poly.back() == 0.0) f.poly.pop_back();
  if (f.poly.empty() || f.poly[0] != 1.0)
    throw std::invalid_argument("spec '" + name + "': local factor at p = " + std::to_string(p) +
                                " must have constant term 1");
  if (f.poly.size() - 1 > static_cast<std::size_t>(degree))
    throw std::invalid_argument("spec '" + name + "': local factor at p = " + std::to_string(p) +
                                " has degree above " + std::to_string(degree));
  for (double c : f.poly)
    if (!std::isfinite(c))
      throw std::invalid_argument("spec '" + name + "': non-finite local coefficient at p = " + std::to_string(p));
  return f;
}

// ---------------------------------------------------------------------------
// Built-in families

LFunctionSpec zeta_spec() {
  LFunctionSpec spec;
  spec.name = "zeta";
  spec.family = Family::zeta;
  spec.degree = 1;
  spec.kappa = 1.0;
  spec.gamma_shifts = {0.0};
  spec.pole_at_one = true;
  spec.provider = [](std::uint64_t p) { return EulerLocalFactor{p, {1.0, -1.0}}; };
  return spec;
}

int kronecker_symbol(std::int64_t D, std::uint64_t n) {
  if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (D % 2 == 0) return 0;
    const std::int64_t r = ((D % 8) + 8) % 8;
    if (r == 3 || r == 5) result = -result;
  }
  if (n == 1) return result;
  // Jacobi symbol for odd n.
  const auto sn = static_cast<std::int64_t>(n);
  std::uint64_t a = static_cast<std::uint64_t>(((D % sn) + sn) % sn);
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::uint64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

namespace {

bool squarefree(std::uint64_t n) {
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return true;
}

}  // namespace

bool is_fundamental_discriminant(std::int64_t D) {
  if (D == 0 || D == 1) return false;
  const std::int64_t r = ((D % 4) + 4) % 4;
  if (r == 1) return squarefree(static_cast<std::uint64_t>(D < 0 ? -D : D));
  if (r == 0) {
    const std::int64_t m = D / 4;
    const std::int64_t rm = ((m % 4) + 4) % 4;
    return (rm == 2 || rm == 3) && squarefree(static_cast<std::uint64_t>(m < 0 ? -m : m));
  }
  return false;
}

LFunctionSpec dirichlet_character_spec(std::int64_t discriminant) {
  if (!is_fundamental_discriminant(discriminant))
    throw std::invalid_argument("dirichlet_char: " + std::to_string(discriminant) +
                                " is not a fundamental discriminant");
  LFunctionSpec spec;
  spec.name = "chi_" + (discriminant < 0 ? "m" + std::to_string(-discriminant) : std::to_string(discriminant));
  spec.family = Family::dirichlet_char;
  spec.degree = 1;
  spec.discriminant = discriminant;
  spec.gamma_shifts = {discriminant < 0 ? 1.0 : 0.0};
  spec.provider = [discriminant](std::uint64_t p) {
    return EulerLocalFactor{p, {1.0, -static_cast<double>(kronecker_symbol(discriminant, p))}};
  };
  return spec;
}

LFunctionSpec dirichlet_character_for_modulus(std::uint64_t modulus) {
  if (modulus < 3) throw std::invalid_argument("dirichlet_char: modulus must be >= 3");
  const auto q = static_cast<std::int64_t>(modulus);
  const bool pos = is_fundamental_discriminant(q);
  const bool neg = is_fundamental_discriminant(-q);
  if (pos && neg)
    throw std::invalid_argument("dirichlet_char: two real primitive characters mod " + std::to_string(q) +
                                "; give the discriminant explicitly");
  if (!pos && !neg)
    throw std::invalid_argument("dirichlet_char: no real primitive character of conductor " + std::to_string(q));
  return dirichlet_character_spec(pos ? q : -q);
}

namespace {

// Normalised lambda(n) = tau(n) / n^{11/2}, grown on demand.
class TauCache {
 public:
  double lambda(std::uint64_t n) {
    std::lock_guard lock(mutex_);
    grow(n);
    return lambda_[n];
  }
  void reserve(std::uint64_t n) {
    std::lock_guard lock(mutex_);
    grow(n);
  }

 private:
  void grow(std::uint64_t n) {
    if (n < lambda_.size()) return;
    if (n > kTauMaxTerms)
      throw std::out_of_range("delta: tau(p) only available for p <= " + std::to_string(kTauMaxTerms));
    std::uint64_t target = std::max<std::uint64_t>({n, 2 * lambda_.size(), 4096});
    target = std::min<std::uint64_t>(target, kTauMaxTerms);
    const auto tau = tau_qexpansion(target);
    std::vector<double> lambda(target + 1, 0.0);
    for (std::uint64_t m = 1; m <= target; ++m)
      lambda[m] = static_cast<double>(static_cast<long double>(tau[m - 1]) /
                                      std::pow(static_cast<long double>(m), 5.5L));
    lambda_ = std::move(lambda);
  }

  std::mutex mutex_;
  std::vector<double> lambda_;
};

}  // namespace

LFunctionSpec ramanujan_delta_spec() {
  LFunctionSpec spec;
  spec.name = "delta";
  spec.family = Family::delta;
  spec.degree = 2;
  spec.gamma_shifts = {5.5, 6.5};
  auto cache = std::make_shared<TauCache>();
  spec.provider = [cache](std::uint64_t p) {
    return EulerLocalFactor{p, {1.0, -cache->lambda(p), 1.0}};
  };
  spec.reserve = [cache](std::uint64_t n) { cache->reserve(std::min<std::uint64_t>(n, kTauMaxTerms)); };
  return spec;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double unit_double(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

// Angle with density (2/pi) sin^2 on [0, pi], by rejection.
double sato_tate_angle(std::uint64_t seed, std::uint64_t p) {
  std::uint64_t mix = seed;
  std::uint64_t state = splitmix64(mix) ^ (p * 0xd1b54a32d192ed03ULL);
  for (;;) {
    const double angle = std::numbers::pi * unit_double(state);
    const double s = std::sin(angle);
    if (unit_double(state) <= s * s) return angle;
  }
}

}  // namespace

LFunctionSpec random_sato_tate_spec(std::uint64_t seed) {
  LFunctionSpec spec;
  spec.name = "sato_tate_" + std::to_string(seed);
  spec.family = Family::sato_tate;
  spec.degree = 2;
  spec.seed = seed;
  spec.gamma_shifts = {0.0, 1.0};
  spec.provider = [seed](std::uint64_t p) {
    const double a_p = 2.0 * std::cos(sato_tate_angle(seed, p));
    return EulerLocalFactor{p, {1.0, -a_p, 1.0}};
  };
  return spec;
}

LFunctionSpec custom_spec(std::string name, int degree, std::map<std::uint64_t, std::vector<double>> factors,
                          std::vector<double> fallback) {
  if (fallback.empty()) fallback = {1.0};
  LFunctionSpec spec;
  spec.name = std::move(name);
  spec.family = Family::custom;
  spec.degree = degree;
  auto table = std::make_shared<const std::map<std::uint64_t, std::vector<double>>>(std::move(factors));
  spec.provider = [table, fallback = std::move(fallback)](std::uint64_t p) {
    const auto it = table->find(p);
    return EulerLocalFactor{p, it != table->end() ? it->second : fallback};
  };
  return spec;
}

// ---------------------------------------------------------------------------
// Tables

CoefficientTable CoefficientTable::from_values(std::string spec_name, std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("CoefficientTable: need at least one value");
  CoefficientTable table;
  table.spec_name_ = std::move(spec_name);
  table.values_.reserve(values.size() + 1);
  table.values_.push_back(0.0);
  table.values_.insert(table.values_.end(), values.begin(), values.end());
  return table;
}

double CoefficientTable::coefficient(std::uint64_t m) const {
  if (m == 0 || m > x_max())
    throw std::out_of_range("coefficient index " + std::to_string(m) + " outside [1, " +
                            std::to_string(x_max()) + "]");
  return values_[m];
}

double coefficient(const CoefficientTable& table, std::uint64_t m) { return table.coefficient(m); }

CoefficientTable sieve(const LFunctionSpec& spec, std::uint64_t X, const SieveOptions& options) {
  spec.validate();
  if (X == 0) throw std::invalid_argument("sieve: X must be positive");
  if (spec.reserve) spec.reserve(X);

  const ArithmeticCache arith(X);
  CoefficientTable table;
  table.spec_name_ = spec.name;
  table.multiplicative_ = true;
  auto& values = table.values_;
  values.assign(X + 1, 0.0);
  values[1] = 1.0;

  // Prime powers straight from the local series.
  for (std::uint32_t p : arith.primes()) {
    std::size_t k_max = 0;
    for (std::uint64_t q = p; q <= X; q *= p) ++k_max;
    const auto local = local_coefficients(spec.local_factor(p), k_max);
    std::uint64_t q = p;
    for (std::size_t k = 1; k <= k_max; ++k, q *= p) values[q] = local[k];
    if (spec.profile == ValidationProfile::gsp4_spinor && std::abs(local[1]) > 36.0)
      table.diagnostics_.profile_violations.push_back(p);
  }

  // Every other m splits as p^k * r with p = spf(m), gcd(p, r) = 1, r > 1.
  std::vector<std::uint32_t> prime_power(X + 1, 0);
  for (std::uint64_t m = 2; m <= X; ++m) {
    const std::uint32_t p = arith.smallest_prime_factor(m);
    const std::uint64_t rest = m / p;
    prime_power[m] = (rest > 1 && arith.smallest_prime_factor(rest) == p) ? prime_power[rest] * p : p;
    const std::uint64_t r = m / prime_power[m];
    if (r > 1) values[m] = values[prime_power[m]] * values[r];
  }

  auto& diag = table.diagnostics_;
  for (std::uint64_t m = 1; m <= X; ++m) {
    if (std::abs(values[m]) > std::pow(static_cast<double>(m), 0.5 + options.eps_check)) {
      ++diag.magnitude_violations;
      if (diag.magnitude_examples.size() < options.max_reported) diag.magnitude_examples.push_back(m);
    }
  }
  return table;
}

}  // namespace selberg
