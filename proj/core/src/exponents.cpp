#include "selberg/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace selberg {
namespace {

double branch_root(double theta) {
  const double a = 7.0 * theta + 3.0;
  return a + std::sqrt(a * a + 2.0);
}

void require_theta(double theta) {
  if (!(theta >= 0.0) || !std::isfinite(theta))
    throw std::invalid_argument("theta must be a finite number >= 0");
}

}  // namespace

double ExponentInputs::resolved_theta() const {
  double t;
  if (theta) {
    t = *theta;
  } else if (degree) {
    t = convexity_theta(*degree);
  } else {
    throw std::invalid_argument("either theta or degree is required");
  }
  require_theta(t);
  if (!(kappa > 0.0 && kappa <= 1.0)) throw std::invalid_argument("kappa must lie in (0, 1]");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  return t;
}

const char* to_string(Branch branch) {
  return branch == Branch::high_theta ? "high_theta" : "low_theta";
}

double kappa_threshold_high(double theta) {
  const double r = branch_root(theta);
  return 1.0 - 1.0 / (2.0 * r * r);
}

double kappa_threshold_low() { return -17.0 / 2.0 + 3.0 * std::sqrt(10.0); }

double kappa_threshold(double theta) {
  require_theta(theta);
  return theta >= 0.5 ? kappa_threshold_high(theta) : kappa_threshold_low();
}

double delta_of(double kappa, double epsilon) {
  const double radicand = 2.0 - 2.0 * kappa + epsilon;
  if (radicand < 0.0)
    throw std::domain_error("delta: 2 - 2 kappa + epsilon = " + std::to_string(radicand) + " is negative");
  return std::sqrt(radicand);
}

std::optional<double> delta_max(double theta) {
  require_theta(theta);
  if (theta < 0.5) return std::nullopt;
  return 1.0 / branch_root(theta);
}

HExponent h_exponent(double theta, double delta) {
  require_theta(theta);
  if (!(delta > 0.0)) throw std::domain_error("h_exponent: delta must be positive");
  HExponent h;
  h.value = theta >= 0.5 ? 1.0 + delta - 1.0 / (2.0 * theta) + (6.0 * delta + 2.0 * delta * delta) / (2.0 * theta)
                         : 6.0 * delta;
  h.lower = 6.0 * delta;
  h.upper = 1.0 - 6.0 * delta;
  // At delta = delta_max the high branch sits exactly on the upper end.
  constexpr double slack = 1e-12;
  h.within_constraint = h.value >= h.lower - slack && h.value <= h.upper + slack;
  return h;
}

double signchange_exponent_high(double theta, double kappa, double epsilon) {
  const double d = delta_of(kappa, epsilon);
  return 2.0 * kappa - 2.0 + 1.0 / (2.0 * theta) - d - (6.0 * d + 2.0 * d * d) / (2.0 * theta);
}

double signchange_exponent_low(double kappa, double epsilon) {
  return 2.0 * kappa - 1.0 - 6.0 * delta_of(kappa, epsilon);
}

double signchange_exponent(double theta, double kappa, double epsilon) {
  require_theta(theta);
  if (theta > 0.5) return signchange_exponent_high(theta, kappa, epsilon);
  if (theta < 0.5) return signchange_exponent_low(kappa, epsilon);
  return std::max(signchange_exponent_high(theta, kappa, epsilon), signchange_exponent_low(kappa, epsilon));
}

double convexity_theta(int degree) {
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
  return static_cast<double>(degree) / 4.0;
}

double gsp4_corollary(double theta) { return signchange_exponent(theta, 1.0, 0.0); }

ExponentReport exponent_report(const ExponentInputs& inputs) {
  ExponentReport r;
  r.theta = inputs.resolved_theta();
  r.kappa = inputs.kappa;
  r.epsilon = inputs.epsilon;
  r.boundary = r.theta == 0.5;
  r.branch = r.theta >= 0.5 ? Branch::high_theta : Branch::low_theta;

  r.kappa_threshold_high = kappa_threshold_high(r.theta);
  r.kappa_threshold_low = kappa_threshold_low();
  r.kappa_threshold = kappa_threshold(r.theta);
  r.admissible = r.kappa >= r.kappa_threshold;

  r.delta = delta_of(r.kappa, r.epsilon);
  r.delta_max = delta_max(r.theta);
  r.exponent_high = signchange_exponent_high(r.theta, r.kappa, r.epsilon);
  r.exponent_low = signchange_exponent_low(r.kappa, r.epsilon);
  r.signchange_exponent = signchange_exponent(r.theta, r.kappa, r.epsilon);
  if (r.boundary && r.exponent_low > r.exponent_high) r.branch = Branch::low_theta;

  if (r.delta > 0.0) {
    r.h_exponent = h_exponent(r.theta, r.delta);
  } else {
    // delta = 0 (kappa = 1, epsilon = 0): the window exponent degenerates.
    r.h_exponent.value = r.theta >= 0.5 ? 1.0 - 1.0 / (2.0 * r.theta) : 0.0;
    r.h_exponent.lower = 0.0;
    r.h_exponent.upper = 1.0;
    r.h_exponent.within_constraint = r.h_exponent.value >= 0.0 && r.h_exponent.value <= 1.0;
  }
  return r;
}

}  // namespace selberg
