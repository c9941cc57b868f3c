#include "selberg/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "selberg/exponents.hpp"
#include "selberg/parallel.hpp"

namespace selberg {
namespace {

void require_range(const CoefficientTable& table, std::uint64_t needed, const char* what) {
  if (needed > table.x_max())
    throw std::out_of_range(std::string(what) + ": needs coefficients up to " + std::to_string(needed) +
                            ", table has " + std::to_string(table.x_max()));
}

}  // namespace

RankinSelbergSum rankin_selberg_sum(const CoefficientTable& table, std::uint64_t X, double eps_check) {
  if (X == 0) throw std::invalid_argument("rankin_selberg_sum: X must be positive");
  require_range(table, X, "rankin_selberg_sum");
  RankinSelbergSum r;
  r.X = X;
  r.eps_check = eps_check;
  for (std::uint64_t m = 1; m <= X; ++m) r.sum += table[m] * table[m];
  r.ratio = r.sum / std::pow(static_cast<double>(X), 1.0 + eps_check);
  return r;
}

std::optional<double> kappa_empirical(const CoefficientTable& table, std::uint64_t X) {
  if (X == 0) throw std::invalid_argument("kappa_empirical: X must be positive");
  require_range(table, 2 * X, "kappa_empirical");
  double block = 0.0;
  for (std::uint64_t m = X + 1; m <= 2 * X; ++m) block += std::abs(table[m]);
  if (X == 1 || block <= 0.0) return std::nullopt;
  return std::log(block) / std::log(static_cast<double>(X));
}

SignChangeSummary count_sign_changes(const CoefficientTable& table, std::uint64_t X, bool record_positions) {
  require_range(table, X, "count_sign_changes");
  SignChangeSummary s;
  s.x_max = X;
  int previous = 0;
  for (std::uint64_t m = 1; m <= X; ++m) {
    const double v = table[m];
    if (v == 0.0) continue;
    const int sign = v > 0.0 ? 1 : -1;
    if (previous != 0 && sign != previous) {
      ++s.change_count;
      if (record_positions) s.change_positions.push_back(m);
    }
    previous = sign;
  }
  return s;
}

WindowReport window_sums(const CoefficientTable& table, std::uint64_t x, std::uint64_t H, std::uint64_t M,
                         double rel_tol) {
  if (x == 0 || H == 0 || M == 0) throw std::invalid_argument("window_sums: x, H and M must be positive");
  if (M >= x) throw std::invalid_argument("window_sums: need M < x");
  require_range(table, x + H, "window_sums");

  WindowReport r;
  r.x = x;
  r.H = H;
  r.M = M;
  double signed_sum = 0.0;
  for (std::uint64_t m = M + 1; m <= 2 * M; ++m) {
    const std::uint64_t k_lo = (x + m - 1) / m;
    const std::uint64_t k_hi = (x + H) / m;
    for (std::uint64_t k = k_lo; k <= k_hi; ++k) {
      if (std::gcd(m, k) != 1) continue;
      const double v = table[m * k];
      signed_sum += v;
      r.S2 += std::abs(v);
      ++r.pairs;
    }
  }
  r.S1 = std::abs(signed_sum);
  r.detected = r.pairs > 0 && r.S1 < r.S2 - rel_tol * r.S2;
  return r;
}

WindowSweep sign_change_windows(const CoefficientTable& table, std::uint64_t X, std::uint64_t H, std::uint64_t M,
                                double rel_tol, std::uint64_t stride, bool keep_reports) {
  if (H == 0 || H >= X) throw std::invalid_argument("sign_change_windows: need 0 < H < X");
  require_range(table, 2 * X + H, "sign_change_windows");
  WindowSweep sweep;
  sweep.X = X;
  sweep.H = H;
  sweep.M = M;
  sweep.stride = stride == 0 ? H : stride;
  sweep.windows = X / sweep.stride + 1;

  std::vector<WindowReport> reports(sweep.windows);
  parallel_for(
      sweep.windows,
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
          reports[i] = window_sums(table, X + i * sweep.stride, H, M, rel_tol);
      },
      16);
  for (const auto& r : reports) sweep.detected += r.detected ? 1 : 0;
  sweep.fraction = static_cast<double>(sweep.detected) / static_cast<double>(sweep.windows);
  sweep.implied_sign_changes = sweep.stride >= H ? sweep.detected : 0;
  if (keep_reports) sweep.reports = std::move(reports);
  return sweep;
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::vacuous: return "vacuous";
  }
  return "fail";
}

ConsistencyReport theorem_consistency(const CoefficientTable& table, const LFunctionSpec& spec, std::uint64_t X,
                                      std::uint64_t H, std::uint64_t M, const ConsistencyOptions& options) {
  require_range(table, X, "theorem_consistency");
  ConsistencyReport r;
  r.X = X;
  r.H = H;
  r.M = M;
  r.theta = options.theta ? *options.theta : spec.effective_theta();
  r.epsilon = options.epsilon ? *options.epsilon : spec.epsilon;
  r.caveats.push_back("implicit constant of the lower bound taken as 1");

  if (options.kappa || spec.kappa) {
    r.kappa = options.kappa ? *options.kappa : *spec.kappa;
  } else {
    const std::uint64_t block = 2 * X <= table.x_max() ? X : X / 2;
    const auto estimate = block >= 2 ? kappa_empirical(table, block) : std::nullopt;
    if (!estimate) {
      r.verdict = Verdict::vacuous;
      r.caveats.push_back("kappa undefined: coefficients vanish on the dyadic block");
      r.observed = count_sign_changes(table, X).change_count;
      return r;
    }
    r.kappa = *estimate;
    r.kappa_estimated = true;
    if (r.kappa > 1.0) {
      r.caveats.push_back("empirical kappa above 1 clamped to 1");
      r.kappa = 1.0;
    }
  }
  if (spec.pole_at_one)
    r.caveats.push_back("L has a pole at s = 1; the sign-change theorem does not apply (failure expected)");
  if (!table.multiplicative()) r.caveats.push_back("table is not multiplicative; statistics-only mode");

  ExponentInputs inputs;
  inputs.theta = r.theta;
  inputs.kappa = r.kappa;
  inputs.epsilon = r.epsilon;
  const ExponentReport exponents = exponent_report(inputs);
  r.exponent = exponents.signchange_exponent;
  r.admissible = exponents.admissible;

  r.observed = count_sign_changes(table, X).change_count;
  if (H > 0 && H < X && M > 0 && M < X && 2 * X + H <= table.x_max())
    r.windows = sign_change_windows(table, X, H, M);
  else
    r.caveats.push_back("window sweep skipped (needs 0 < H < X, M < X and 2X + H <= x_max)");

  const double lnX = std::log(static_cast<double>(X));
  r.log_ratio = r.observed > 0 ? std::log(static_cast<double>(r.observed)) - r.exponent * lnX
                               : -std::numeric_limits<double>::infinity();
  if (!r.admissible)
    r.verdict = Verdict::vacuous;
  else
    r.verdict = static_cast<double>(r.observed) >= std::pow(static_cast<double>(X), r.exponent) ? Verdict::pass
                                                                                              : Verdict::fail;
  return r;
}

ShortIntervalLowerBound short_interval_lower_bound(const CoefficientTable& table, std::uint64_t X, std::uint64_t H,
                                                   std::uint64_t M, double kappa, double epsilon) {
  if (H == 0 || H >= X) throw std::invalid_argument("short_interval_lower_bound: need 0 < H < X");
  require_range(table, 2 * X + H, "short_interval_lower_bound");
  ShortIntervalLowerBound r;
  r.X = X;
  r.H = H;
  r.M = M;
  r.kappa = kappa;
  r.epsilon = epsilon;
  const double Xd = static_cast<double>(X);
  r.threshold = static_cast<double>(H) * std::pow(Xd, kappa - 1.0 - 2.0 * epsilon);
  r.required_fraction = std::pow(Xd, 2.0 * kappa - 1.0 - 3.0 * epsilon) / Xd;
  r.samples = X;
  std::vector<double> s2(X, 0.0);
  parallel_for(
      X,
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) s2[i] = window_sums(table, X + 1 + i, H, M).S2;
      },
      256);
  for (double v : s2) r.above += v > r.threshold ? 1 : 0;
  r.fraction = static_cast<double>(r.above) / static_cast<double>(r.samples);

  // Largest c with S2 >= c * threshold on the required share of x.
  const auto needed = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(r.required_fraction * static_cast<double>(X))), 1, X);
  std::nth_element(s2.begin(), s2.begin() + static_cast<std::ptrdiff_t>(needed - 1), s2.end(), std::greater<>());
  r.implied_constant = s2[needed - 1] / r.threshold;
  r.holds = r.fraction >= r.required_fraction;
  return r;
}

}  // namespace selberg
