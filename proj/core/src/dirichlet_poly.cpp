#include "selberg/dirichlet_poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "phase_sum.hpp"
#include "selberg/identities.hpp"
#include "selberg/parallel.hpp"

namespace selberg {

namespace detail {

namespace {
constexpr long double kTwoPi = 6.283185307179586476925286766559L;
constexpr std::size_t kResync = 256;
}  // namespace

double reduced_phase(long double t, long double f) {
  long double phase = std::fmod(t * f, kTwoPi);
  if (phase < 0) phase += kTwoPi;
  return static_cast<double>(phase);
}

void phase_sum_grid(const PhaseTerms& terms, long double t0, long double step, std::span<std::complex<double>> out) {
  const std::size_t J = terms.weight.size();
  std::vector<double> rot_re(J), rot_im(J);
  for (std::size_t j = 0; j < J; ++j) {
    const double phase = reduced_phase(step, terms.freq[j]);
    rot_re[j] = std::cos(phase);
    rot_im[j] = -std::sin(phase);
  }
  parallel_for(
      out.size(),
      [&](std::size_t begin, std::size_t end) {
        std::vector<double> cur_re(J), cur_im(J);
        const double* w = terms.weight.data();
        const double* rr = rot_re.data();
        const double* ri = rot_im.data();
        // Resync on global multiples of kResync so the output does not depend
        // on how the range was chunked.
        for (std::size_t i = begin - begin % kResync; i < end; ++i) {
          if (i % kResync == 0) {
            const long double t = t0 + static_cast<long double>(i) * step;
            for (std::size_t j = 0; j < J; ++j) {
              const double phase = reduced_phase(t, terms.freq[j]);
              cur_re[j] = std::cos(phase);
              cur_im[j] = -std::sin(phase);
            }
          }
          double* cr = cur_re.data();
          double* ci = cur_im.data();
          double sum_re = 0.0, sum_im = 0.0;
          for (std::size_t j = 0; j < J; ++j) {
            sum_re += w[j] * cr[j];
            sum_im += w[j] * ci[j];
            const double next_re = cr[j] * rr[j] - ci[j] * ri[j];
            ci[j] = cr[j] * ri[j] + ci[j] * rr[j];
            cr[j] = next_re;
          }
          if (i >= begin) out[i] = {sum_re, sum_im};
        }
      },
      512);
}

}  // namespace detail

namespace {

detail::PhaseTerms line_terms(const DirichletPolynomial& poly, double sigma) {
  detail::PhaseTerms terms;
  for (std::size_t i = 0; i < poly.coeffs.size(); ++i) {
    const double a = poly.coeffs[i];
    if (a == 0.0) continue;
    const auto n = static_cast<long double>(poly.n_lo + i);
    terms.weight.push_back(a * static_cast<double>(std::pow(n, -static_cast<long double>(sigma))));
    terms.freq.push_back(std::log(n));
  }
  return terms;
}

// Simpson weights 1, 4, 2, 4, ..., 4, 1 over an even number of intervals.
double simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size() - 1;
  double acc = f.front() + f.back();
  for (std::size_t i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f[i];
  return acc * h / 3.0;
}

double simpson_even_nodes(std::span<const double> f, double h) {
  const std::size_t n = (f.size() - 1) / 2;
  double acc = f.front() + f.back();
  for (std::size_t i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f[2 * i];
  return acc * h / 3.0;
}

}  // namespace

DirichletPolynomial DirichletPolynomial::make(std::uint64_t n_lo, std::vector<double> coeffs) {
  if (n_lo == 0) throw std::invalid_argument("DirichletPolynomial: n_lo must be >= 1");
  if (coeffs.empty()) throw std::invalid_argument("DirichletPolynomial: empty support");
  for (double a : coeffs)
    if (!std::isfinite(a)) throw std::invalid_argument("DirichletPolynomial: non-finite coefficient");
  return DirichletPolynomial{n_lo, std::move(coeffs)};
}

double DirichletPolynomial::weighted_l2() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) acc += coeffs[i] * coeffs[i] / static_cast<double>(n_lo + i);
  return acc;
}

double DirichletPolynomial::l1_at(double sigma) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    acc += std::abs(coeffs[i]) * std::pow(static_cast<double>(n_lo + i), -sigma);
  return acc;
}

std::complex<double> evaluate(const DirichletPolynomial& poly, std::complex<double> s) {
  const long double sigma = s.real();
  const long double t = s.imag();
  long double re = 0.0L, im = 0.0L;
  for (std::size_t i = 0; i < poly.coeffs.size(); ++i) {
    const double a = poly.coeffs[i];
    if (a == 0.0) continue;
    const auto n = static_cast<long double>(poly.n_lo + i);
    const long double log_n = std::log(n);
    const long double magnitude = a * std::exp(-sigma * log_n);
    const double phase = detail::reduced_phase(t, log_n);
    re += magnitude * std::cos(phase);
    im -= magnitude * std::sin(phase);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

VerticalLineProfile evaluate_on_line(const DirichletPolynomial& poly, double sigma, double t0, double step,
                                     std::size_t count) {
  VerticalLineProfile profile;
  profile.sigma = sigma;
  profile.t_grid.resize(count);
  for (std::size_t i = 0; i < count; ++i)
    profile.t_grid[i] = static_cast<double>(static_cast<long double>(t0) + static_cast<long double>(i) * step);
  profile.values.resize(count);
  detail::phase_sum_grid(line_terms(poly, sigma), t0, step, profile.values);
  return profile;
}

DirichletPolynomial build_M(const CoefficientTable& table, std::uint64_t M) {
  if (M == 0) throw std::invalid_argument("build_M: M must be positive");
  if (2 * M > table.x_max())
    throw std::out_of_range("build_M: needs coefficients up to " + std::to_string(2 * M));
  std::vector<double> a(M);
  for (std::uint64_t m = M + 1; m <= 2 * M; ++m) a[m - M - 1] = table[m];
  return DirichletPolynomial::make(M + 1, std::move(a));
}

DirichletPolynomial build_K(const CoefficientTable& table, std::uint64_t X, std::uint64_t M) {
  if (X == 0 || M == 0) throw std::invalid_argument("build_K: X and M must be positive");
  const std::uint64_t lo = std::max<std::uint64_t>(1, (X + 3 * M - 1) / (3 * M));
  const std::uint64_t hi = 3 * X / M;
  if (hi < lo) throw std::invalid_argument("build_K: empty support");
  if (hi > table.x_max()) throw std::out_of_range("build_K: needs coefficients up to " + std::to_string(hi));
  std::vector<double> a(hi - lo + 1);
  for (std::uint64_t k = lo; k <= hi; ++k) a[k - lo] = table[k];
  return DirichletPolynomial::make(lo, std::move(a));
}

double max_line_step(const DirichletPolynomial& poly) {
  const double log_hi = std::log(static_cast<double>(poly.n_hi()));
  return log_hi > 0.0 ? std::numbers::pi / (4.0 * log_hi) : std::numeric_limits<double>::infinity();
}

double default_line_step(const DirichletPolynomial& poly) {
  const double log_hi = std::log(static_cast<double>(poly.n_hi()));
  return log_hi > 0.0 ? std::numbers::pi / (8.0 * log_hi) : 1.0;
}

SecondMoment second_moment(const DirichletPolynomial& poly, double T, std::optional<double> step) {
  if (!(T >= 0.0)) throw std::invalid_argument("second_moment: T must be >= 0");
  const double requested = step ? *step : default_line_step(poly);
  if (!(requested > 0.0)) throw std::invalid_argument("second_moment: step must be positive");
  if (requested > max_line_step(poly))
    throw std::invalid_argument("second_moment: step " + std::to_string(requested) +
                                " too coarse; need step <= pi/(4 log n_hi) = " + std::to_string(max_line_step(poly)));
  SecondMoment result;
  if (T == 0.0) return result;

  // |F(1/2 + it)|^2 is even in t for real coefficients: integrate [0, T] twice.
  std::size_t intervals = static_cast<std::size_t>(std::ceil(T / requested));
  intervals = std::max<std::size_t>(2, intervals + intervals % 2);
  const double h = T / static_cast<double>(intervals);
  const std::size_t fine_nodes = 2 * intervals + 1;

  std::vector<std::complex<double>> values(fine_nodes);
  detail::phase_sum_grid(line_terms(poly, 0.5), 0.0L, static_cast<long double>(h) / 2, values);
  std::vector<double> f(fine_nodes);
  for (std::size_t i = 0; i < fine_nodes; ++i) f[i] = std::norm(values[i]);

  const double fine = simpson(f, h / 2);
  const double coarse = simpson_even_nodes(f, h);
  result.value = 2.0 * fine;
  result.error_estimate = 2.0 * std::abs(fine - coarse);
  result.step = h;
  result.nodes = fine_nodes;
  return result;
}

MvtRatio mvt_ratio(const DirichletPolynomial& poly, double T, std::optional<double> step) {
  MvtRatio r;
  r.denominator = (static_cast<double>(poly.n_hi()) + T) * poly.weighted_l2();
  if (r.denominator == 0.0) throw std::domain_error("mvt_ratio: zero denominator");
  r.second_moment = second_moment(poly, T, step).value;
  r.ratio = r.second_moment / r.denominator;
  return r;
}

SubconvexityProfile k_subconvexity_profile(const CoefficientTable& table, std::uint64_t X, std::uint64_t M, double T,
                                           double theta, double eps_check, std::optional<double> step,
                                           bool keep_profile) {
  if (!(T >= 2.0)) throw std::invalid_argument("k_subconvexity_profile: T must be >= 2");
  const DirichletPolynomial K = build_K(table, X, M);
  const double h = step ? *step : default_line_step(K);
  if (!(h > 0.0) || h > max_line_step(K))
    throw std::invalid_argument("k_subconvexity_profile: grid step " + std::to_string(h) +
                                " below oscillation scale; need step <= " + std::to_string(max_line_step(K)));

  SubconvexityProfile r;
  r.X = X;
  r.M = M;
  r.T = T;
  r.theta = theta;
  r.eps_check = eps_check;

  // |K| is even in t; scan [0, T].
  const auto count = static_cast<std::size_t>(std::ceil(T / h)) + 1;
  VerticalLineProfile line = evaluate_on_line(K, 0.5, 0.0, h, count);
  line.t_grid.back() = std::min(line.t_grid.back(), T);
  line.values.back() = evaluate(K, {0.5, line.t_grid.back()});
  r.grid_points = count;

  std::vector<double> mag(count);
  for (std::size_t i = 0; i < count; ++i) mag[i] = std::abs(line.values[i]);

  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < count; ++i) {
    const bool left = i == 0 || mag[i] >= mag[i - 1];
    const bool right = i + 1 == count || mag[i] >= mag[i + 1];
    if (left && right) peaks.push_back(i);
  }
  constexpr std::size_t kRefined = 16;
  if (peaks.size() > kRefined) {
    std::partial_sort(peaks.begin(), peaks.begin() + kRefined, peaks.end(),
                      [&](std::size_t a, std::size_t b) { return mag[a] > mag[b]; });
    peaks.resize(kRefined);
  }

  const std::size_t best = static_cast<std::size_t>(std::max_element(mag.begin(), mag.end()) - mag.begin());
  r.sup = mag[best];
  r.t_at_sup = line.t_grid[best];

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto magnitude_at = [&](double t) { return std::abs(evaluate(K, {0.5, t})); };
  for (std::size_t i : peaks) {
    double lo = i == 0 ? 0.0 : line.t_grid[i - 1];
    double hi = i + 1 == count ? line.t_grid[i] : line.t_grid[i + 1];
    double a = hi - inv_phi * (hi - lo);
    double b = lo + inv_phi * (hi - lo);
    double fa = magnitude_at(a), fb = magnitude_at(b);
    for (int iter = 0; iter < 40; ++iter) {
      if (fa < fb) {
        lo = a;
        a = b;
        fa = fb;
        b = lo + inv_phi * (hi - lo);
        fb = magnitude_at(b);
      } else {
        hi = b;
        b = a;
        fb = fa;
        a = hi - inv_phi * (hi - lo);
        fa = magnitude_at(a);
      }
    }
    const double t = (lo + hi) / 2;
    const double value = magnitude_at(t);
    if (value > r.sup) {
      r.sup = value;
      r.t_at_sup = t;
    }
  }

  const double ratio_xmt = static_cast<double>(X) / (static_cast<double>(M) * T);
  r.envelope = std::pow(T, theta + eps_check) + std::pow(ratio_xmt, 0.5 + eps_check);
  r.ratio = r.sup / r.envelope;
  if (keep_profile) r.profile = std::move(line);
  return r;
}

PerronWindow perron_window(const CoefficientTable& table, std::uint64_t x, std::uint64_t H, std::uint64_t M,
                           double T_cut) {
  if (x < 2 || H == 0 || M == 0) throw std::invalid_argument("perron_window: need x >= 2, H >= 1, M >= 1");
  if (M >= x) throw std::invalid_argument("perron_window: need M < x");
  if (x + H > table.x_max())
    throw std::out_of_range("perron_window: needs coefficients up to " + std::to_string(x + H));
  const double min_cut = static_cast<double>(x) / static_cast<double>(H);
  if (!(T_cut >= min_cut))
    throw std::invalid_argument("perron_window: T_cut " + std::to_string(T_cut) + " below X/H = " +
                                std::to_string(min_cut));

  PerronWindow r;
  r.T_cut = T_cut;
  for (std::uint64_t m = M + 1; m <= 2 * M; ++m)
    for (std::uint64_t k = (x + m - 1) / m; k <= (x + H) / m; ++k)
      if (std::gcd(m, k) == 1) r.direct_value += table[m * k];

  const CoprimeDoublePolynomial D = coprime_double_polynomial(table, M, x);
  const long double lo = static_cast<long double>(x) - 0.5L;
  const long double hi = static_cast<long double>(x + H) + 0.5L;
  const long double log_lo = std::log(lo), log_hi = std::log(hi);
  const long double c = 1.0L + 1.0L / std::log(static_cast<long double>(x));
  r.c = static_cast<double>(c);

  detail::PhaseTerms terms = line_terms(D.collapsed, r.c);
  long double max_freq = 0.0L;
  for (long double f : terms.freq)
    max_freq = std::max({max_freq, std::abs(log_hi - f), std::abs(log_lo - f)});
  if (terms.weight.empty()) {
    r.abs_error = std::abs(r.direct_value);
    return r;
  }
  max_freq = std::max(max_freq, 1e-3L);

  // Sixteen nodes per period of the fastest (b/n)^{it}.
  const double target = std::numbers::pi / (16.0 * static_cast<double>(max_freq));
  std::size_t intervals = static_cast<std::size_t>(std::ceil(T_cut / target));
  intervals = std::max<std::size_t>(2, intervals + intervals % 2);
  const long double h = static_cast<long double>(T_cut) / static_cast<long double>(intervals);
  r.step = static_cast<double>(h);
  r.nodes = intervals + 1;

  std::vector<std::complex<double>> dvals(intervals + 1);
  detail::phase_sum_grid(terms, 0.0L, h, dvals);

  const long double pow_lo = std::exp(c * log_lo), pow_hi = std::exp(c * log_hi);
  std::vector<double> integrand(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    const long double t = static_cast<long double>(i) * h;
    const double ph_hi = detail::reduced_phase(t, log_hi);
    const double ph_lo = detail::reduced_phase(t, log_lo);
    const std::complex<double> kernel =
        (std::complex<double>(static_cast<double>(pow_hi) * std::cos(ph_hi), static_cast<double>(pow_hi) * std::sin(ph_hi)) -
         std::complex<double>(static_cast<double>(pow_lo) * std::cos(ph_lo), static_cast<double>(pow_lo) * std::sin(ph_lo))) /
        std::complex<double>(r.c, static_cast<double>(t));
    integrand[i] = (dvals[i] * kernel).real();
  }
  // (1/2 pi) int_{-T}^{T} = (1/pi) Re int_0^T by conjugate symmetry.
  r.contour_value = simpson(integrand, static_cast<double>(h)) / std::numbers::pi;
  r.abs_error = std::abs(r.contour_value - r.direct_value);
  return r;
}

KernelBoundCheck kernel_bound_check(double u, std::span<const std::complex<double>> samples) {
  if (!(u > 0.0 && u <= 1.0)) throw std::invalid_argument("kernel_bound_check: need 0 < u <= 1");
  KernelBoundCheck check;
  double worst = -1.0;
  const double log1pu = std::log1p(u);
  for (const auto s : samples) {
    KernelSample sample;
    sample.s = s;
    if (s == std::complex<double>(0.0, 0.0)) {
      sample.value = log1pu;
    } else {
      sample.value = std::abs((std::exp(s * log1pu) - 1.0) / s);
    }
    sample.bound = s.imag() == 0.0 ? std::numeric_limits<double>::infinity()
                                   : 3.0 * std::max(u, 1.0 / std::abs(s.imag()));
    const double ratio = sample.value / sample.bound;
    if (ratio > worst) {
      worst = ratio;
      check.worst = sample;
    }
    if (sample.value > sample.bound) {
      check.pass = false;
      check.witnesses.push_back(sample);
    }
  }
  return check;
}

std::vector<std::complex<double>> default_kernel_samples() {
  std::vector<std::complex<double>> samples;
  for (double sigma : {0.5, 1.0, 1.5, 2.0}) {
    samples.emplace_back(sigma, 0.0);
    for (int e = -20; e <= 40; ++e) {
      const double t = std::pow(10.0, e / 10.0);
      samples.emplace_back(sigma, t);
      samples.emplace_back(sigma, -t);
    }
  }
  return samples;
}

}  // namespace selberg
