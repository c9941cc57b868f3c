#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "selberg/coefficients.hpp"

namespace selberg {

struct RankinSelbergSum {
  std::uint64_t X = 0;
  double sum = 0.0;        // sum_{m <= X} |A(m)|^2
  double ratio = 0.0;      // sum / X^{1 + eps_check}
  double eps_check = 0.0;
};

RankinSelbergSum rankin_selberg_sum(const CoefficientTable& table, std::uint64_t X, double eps_check = 0.0);

/// log(sum_{X < m <= 2X} |A(m)|) / log X, or nullopt when the dyadic block
/// sums to zero (or X = 1). Throws std::out_of_range when 2X > x_max.
std::optional<double> kappa_empirical(const CoefficientTable& table, std::uint64_t X);

enum class ZeroPolicy { skip_zeros };

struct SignChangeSummary {
  std::uint64_t x_max = 0;
  std::uint64_t change_count = 0;
  std::vector<std::uint64_t> change_positions;  // index m' of the later coefficient of each change
  ZeroPolicy zero_policy = ZeroPolicy::skip_zeros;
};

/// Sign changes among A(1..X): consecutive nonzero coefficients of opposite
/// sign, zeros skipped.
SignChangeSummary count_sign_changes(const CoefficientTable& table, std::uint64_t X, bool record_positions = false);

/// Relative tolerance of the S1 < S2 test.
inline constexpr double kDetectionTolerance = 1e-9;

struct WindowReport {
  std::uint64_t x = 0;
  std::uint64_t H = 0;
  std::uint64_t M = 0;
  double S1 = 0.0;  // |sum A(mk)|
  double S2 = 0.0;  // sum |A(mk)|
  bool detected = false;
  std::uint64_t pairs = 0;
};

/// S1 and S2 over pairs (m, k) with M < m <= 2M, x <= mk <= x + H and
/// gcd(m, k) = 1. detected iff S1 < S2 - rel_tol * S2.
WindowReport window_sums(const CoefficientTable& table, std::uint64_t x, std::uint64_t H, std::uint64_t M,
                         double rel_tol = kDetectionTolerance);

struct WindowSweep {
  std::uint64_t X = 0;
  std::uint64_t H = 0;
  std::uint64_t M = 0;
  std::uint64_t stride = 0;
  std::uint64_t windows = 0;
  std::uint64_t detected = 0;
  double fraction = 0.0;
  /// One sign change per detected disjoint window; zero for overlapping sweeps.
  std::uint64_t implied_sign_changes = 0;
  std::vector<WindowReport> reports;  // filled when requested
};

/// Windows starting at x = X, X + stride, ... <= 2X. stride = 0 means
/// stride = H (disjoint windows); smaller strides are for diagnostics.
WindowSweep sign_change_windows(const CoefficientTable& table, std::uint64_t X, std::uint64_t H, std::uint64_t M,
                                double rel_tol = kDetectionTolerance, std::uint64_t stride = 0,
                                bool keep_reports = false);

enum class Verdict { pass, fail, vacuous };
const char* to_string(Verdict verdict);

struct ConsistencyOptions {
  std::optional<double> theta;
  std::optional<double> kappa;
  std::optional<double> epsilon;
};

struct ConsistencyReport {
  std::uint64_t X = 0;
  std::uint64_t H = 0;
  std::uint64_t M = 0;
  double theta = 0.0;
  double kappa = 0.0;
  bool kappa_estimated = false;
  double epsilon = 0.0;
  double exponent = 0.0;
  bool admissible = false;
  std::uint64_t observed = 0;
  std::optional<WindowSweep> windows;
  double log_ratio = 0.0;  // ln(observed / X^exponent)
  Verdict verdict = Verdict::fail;
  std::vector<std::string> caveats;
};

/// Compares the sign changes observed up to X with X^e, e the sign-change
/// exponent for the spec's (theta, kappa, epsilon), implicit constant 1.
/// kappa falls back to kappa_empirical when neither the options nor the
/// spec provide it. Inadmissible parameters give Verdict::vacuous.
ConsistencyReport theorem_consistency(const CoefficientTable& table, const LFunctionSpec& spec, std::uint64_t X,
                                      std::uint64_t H, std::uint64_t M, const ConsistencyOptions& options = {});

/// Short-interval lower bound shape check: the share of integer x in (X, 2X]
/// with S2(x) > H X^{kappa - 1 - 2 eps}, against X^{2 kappa - 1 - 3 eps} / X.
/// implied_constant is the largest c for which S2(x) >= c H X^{kappa - 1 - 2 eps}
/// on the required share; the bound with constant 1 holds iff it is >= 1.
struct ShortIntervalLowerBound {
  std::uint64_t X = 0;
  std::uint64_t H = 0;
  std::uint64_t M = 0;
  double kappa = 0.0;
  double epsilon = 0.0;
  double threshold = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t above = 0;
  double fraction = 0.0;
  double required_fraction = 0.0;
  double implied_constant = 0.0;
  bool holds = false;
};

ShortIntervalLowerBound short_interval_lower_bound(const CoefficientTable& table, std::uint64_t X, std::uint64_t H,
                                                   std::uint64_t M, double kappa, double epsilon);

}  // namespace selberg
