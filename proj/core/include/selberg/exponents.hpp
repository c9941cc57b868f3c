#pragma once

#include <optional>

namespace selberg {

/// Inputs of the sign-change exponent calculus. theta falls back to the
/// convexity exponent degree/4 when unset.
struct ExponentInputs {
  std::optional<double> theta;
  double kappa = 1.0;
  double epsilon = 0.0;
  std::optional<int> degree;

  /// Resolved theta; throws std::invalid_argument when neither theta nor
  /// degree is given, or on an out-of-range field.
  double resolved_theta() const;
};

enum class Branch { high_theta, low_theta };

const char* to_string(Branch branch);

/// Admissible H window exponent with the constraint 6 delta <= h <= 1 - 6 delta.
struct HExponent {
  double value = 0.0;
  double lower = 0.0;  // 6 delta
  double upper = 1.0;  // 1 - 6 delta
  bool within_constraint = false;
};

struct ExponentReport {
  double theta = 0.0;
  double kappa = 0.0;
  double epsilon = 0.0;

  bool admissible = false;
  double kappa_threshold = 0.0;
  double kappa_threshold_high = 0.0;  // 1 - 1/(2 (7 theta + 3 + sqrt((7 theta + 3)^2 + 2))^2)
  double kappa_threshold_low = 0.0;   // -17/2 + 3 sqrt(10)
  double delta = 0.0;
  std::optional<double> delta_max;  // only for theta >= 1/2
  HExponent h_exponent;
  double signchange_exponent = 0.0;
  double exponent_high = 0.0;
  double exponent_low = 0.0;
  Branch branch = Branch::low_theta;
  bool boundary = false;  // theta == 1/2: both branches apply
};

/// Smallest admissible kappa. For theta >= 1/2 the closed form in theta,
/// for theta < 1/2 the constant -17/2 + 3 sqrt(10).
double kappa_threshold(double theta);
double kappa_threshold_high(double theta);
double kappa_threshold_low();

/// sqrt(2 - 2 kappa + epsilon); throws std::domain_error on a negative radicand.
double delta_of(double kappa, double epsilon);

/// 1 / (7 theta + 3 + sqrt((7 theta + 3)^2 + 2)), or nullopt for theta < 1/2.
std::optional<double> delta_max(double theta);

/// For theta >= 1/2: 1 + delta - 1/(2 theta) + (6 delta + 2 delta^2)/(2 theta);
/// otherwise 6 delta. Throws std::domain_error for delta <= 0.
HExponent h_exponent(double theta, double delta);

double signchange_exponent_high(double theta, double kappa, double epsilon);
double signchange_exponent_low(double kappa, double epsilon);
/// Branch value; at theta = 1/2 the larger of the two.
double signchange_exponent(double theta, double kappa, double epsilon);

double convexity_theta(int degree);

/// Exponent of the GSp(4) spinor corollary: kappa = 1 and epsilon -> 0, so
/// 1/(2 theta) on the theta >= 1/2 branch.
double gsp4_corollary(double theta);

ExponentReport exponent_report(const ExponentInputs& inputs);

}  // namespace selberg
