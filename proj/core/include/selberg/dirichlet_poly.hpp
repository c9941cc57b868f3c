#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "selberg/coefficients.hpp"

namespace selberg {

/// F(s) = sum_{n = n_lo}^{n_hi} a_n n^{-s} with real coefficients.
struct DirichletPolynomial {
  std::uint64_t n_lo = 1;
  std::vector<double> coeffs;  // coeffs[i] = a_{n_lo + i}

  /// Validates n_lo >= 1, a nonempty support and finite coefficients.
  static DirichletPolynomial make(std::uint64_t n_lo, std::vector<double> coeffs);

  std::uint64_t n_hi() const noexcept { return n_lo + coeffs.size() - 1; }
  double coefficient(std::uint64_t n) const noexcept {
    return n < n_lo || n > n_hi() ? 0.0 : coeffs[n - n_lo];
  }
  /// sum |a_n|^2 / n
  double weighted_l2() const;
  /// sum |a_n| n^{-sigma}
  double l1_at(double sigma) const;
};

/// Direct summation with phases t log n reduced in extended precision.
std::complex<double> evaluate(const DirichletPolynomial& poly, std::complex<double> s);

struct VerticalLineProfile {
  double sigma = 0.5;
  std::vector<double> t_grid;
  std::vector<std::complex<double>> values;
};

/// F(sigma + i t) on t = t0, t0 + step, ..., count points.
VerticalLineProfile evaluate_on_line(const DirichletPolynomial& poly, double sigma, double t0, double step,
                                     std::size_t count);

/// Support (M, 2M].
DirichletPolynomial build_M(const CoefficientTable& table, std::uint64_t M);
/// Support [ceil(X / 3M), floor(3X / M)].
DirichletPolynomial build_K(const CoefficientTable& table, std::uint64_t X, std::uint64_t M);

/// Largest accepted grid step on the critical line, pi / (4 log n_hi).
double max_line_step(const DirichletPolynomial& poly);
/// Default grid step, pi / (8 log n_hi).
double default_line_step(const DirichletPolynomial& poly);

struct SecondMoment {
  double value = 0.0;           // integral over [-T, T] of |F(1/2 + it)|^2
  double error_estimate = 0.0;  // |S(h) - S(h/2)|
  double step = 0.0;            // h actually used (<= requested)
  std::size_t nodes = 0;
};

/// Composite Simpson on the half-step grid; the coarse Simpson sum on the
/// even nodes gives the step-halving error estimate. Throws
/// std::invalid_argument when step exceeds max_line_step().
SecondMoment second_moment(const DirichletPolynomial& poly, double T, std::optional<double> step = std::nullopt);

struct MvtRatio {
  double ratio = 0.0;
  double second_moment = 0.0;
  double denominator = 0.0;  // (n_hi + T) sum |a_n|^2 / n
};

MvtRatio mvt_ratio(const DirichletPolynomial& poly, double T, std::optional<double> step = std::nullopt);

struct SubconvexityProfile {
  std::uint64_t X = 0;
  std::uint64_t M = 0;
  double T = 0.0;
  double theta = 0.0;
  double eps_check = 0.0;
  double sup = 0.0;  // sup_{|t| <= T} |K(1/2 + it)|
  double t_at_sup = 0.0;
  double envelope = 0.0;  // T^{theta + eps} + (X / (M T))^{1/2 + eps}
  double ratio = 0.0;
  std::size_t grid_points = 0;
  std::optional<VerticalLineProfile> profile;
};

SubconvexityProfile k_subconvexity_profile(const CoefficientTable& table, std::uint64_t X, std::uint64_t M, double T,
                                           double theta, double eps_check = 1e-3,
                                           std::optional<double> step = std::nullopt, bool keep_profile = false);

struct PerronWindow {
  double contour_value = 0.0;
  double direct_value = 0.0;
  double abs_error = 0.0;
  double c = 0.0;
  double T_cut = 0.0;
  double step = 0.0;
  std::size_t nodes = 0;
};

/// Truncated Perron integral of the coprime double polynomial D(s) over the
/// window, on Re s = 1 + 1/log x, against the direct pair sum
/// sum_{x <= mk <= x + H, M < m <= 2M, gcd(m, k) = 1} A(mk).
/// The integration endpoints are x - 1/2 and x + H + 1/2 so that no integer
/// sits on a jump of the Perron kernel.
PerronWindow perron_window(const CoefficientTable& table, std::uint64_t x, std::uint64_t H, std::uint64_t M,
                           double T_cut);

struct KernelSample {
  std::complex<double> s;
  double value = 0.0;  // |((1 + u)^s - 1) / s|
  double bound = 0.0;  // 3 max(u, 1 / |Im s|)
};

struct KernelBoundCheck {
  bool pass = true;
  std::vector<KernelSample> witnesses;  // failing samples
  KernelSample worst;                   // largest value / bound
};

KernelBoundCheck kernel_bound_check(double u, std::span<const std::complex<double>> samples);

/// Samples on Re s in {1/2, 1, 3/2, 2}, Im s from 0 to 10^4 (log-spaced).
std::vector<std::complex<double>> default_kernel_samples();

}  // namespace selberg
