#pragma once
// Correlation functions and the two CHSH-type functionals built from them.
//
//   Bell:     B = E11 + E12 + E21 - E22
//   Steering: S = sqrt((E11+E21)^2 + (E12+E22)^2) + sqrt((E11-E21)^2 + (E12-E22)^2)
//
// with Ejk = <A(phi_j) (x) B(theta_k)>.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bosesteer/kernels.hpp"
#include "bosesteer/measurement.hpp"
#include "bosesteer/states.hpp"

namespace bosesteer {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// x reduced to [0, 2pi).
double canonical_angle(double x);

struct AngleQuad {
  double phi1 = 0.0;
  double phi2 = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;

  AngleQuad canonical() const;
};

struct CorrelationVector {
  double e11 = 0.0, e12 = 0.0, e21 = 0.0, e22 = 0.0;
};

double bell_from(const CorrelationVector& e);
double steering_from(const CorrelationVector& e);

enum class Objective {
  bell,      // signed B
  bell_abs,  // |B|
  steering,
};

std::string_view to_string(Objective objective);
/// Accepts "bell", "bell_abs", "bell_signed", "steering". Both "bell" and
/// "bell_abs" resolve to bell_abs when `bell_means_abs` is set.
std::optional<Objective> parse_objective(std::string_view name, bool bell_means_abs = true);

double objective_from(Objective objective, const CorrelationVector& e);

/// Prepared evaluator for one state and one pair of reflectivities.
class InequalityEvaluator {
 public:
  InequalityEvaluator(const CompositeState& state, const PartyReflectivities& reflectivities);

  CorrelationVector correlations(const AngleQuad& q) const;
  double correlation(double alice_angle, double bob_angle) const { return kernel_(alice_angle, bob_angle); }
  double bell(const AngleQuad& q) const { return bell_from(correlations(q)); }
  double steering(const AngleQuad& q) const { return steering_from(correlations(q)); }
  double value(Objective objective, const AngleQuad& q) const { return objective_from(objective, correlations(q)); }

  const CorrelationKernel& kernel() const { return kernel_; }

 private:
  CorrelationKernel kernel_;
};

double correlation(const CompositeState& state, double alice_angle, double bob_angle,
                   const PartyReflectivities& reflectivities = {});
CorrelationVector correlations(const CompositeState& state, const AngleQuad& q,
                               const PartyReflectivities& reflectivities = {});
double bell_value(const CompositeState& state, const AngleQuad& q, const PartyReflectivities& reflectivities = {});
double steering_value(const CompositeState& state, const AngleQuad& q,
                      const PartyReflectivities& reflectivities = {});

enum class ClosedFormFamily { steer_bec1, bell_bec1, steer_bec2, bell_bec2, steer_noon, bell_noon };

std::string_view to_string(ClosedFormFamily family);
std::optional<ClosedFormFamily> parse_family(std::string_view name);

/// The printed N00N steering expression takes the square root of a bracket
/// that is negative for most angles.
class SuspectTypoError : public std::domain_error {
 public:
  SuspectTypoError(const std::string& what, double radicand) : std::domain_error(what), radicand_(radicand) {}
  double radicand() const { return radicand_; }

 private:
  double radicand_;
};

/// Published trigonometric expressions for the condensate (N = 1, 2) and
/// N00N (N = 2, m = 0) pairs with balanced beam splitters, evaluated as
/// printed.
double closed_form(ClosedFormFamily family, const AngleQuad& q);

class NoThresholdError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VisibilityResult {
  double threshold = 1.0;       // smallest p with objective(admix(p)) = 2
  double value_at_one = 0.0;    // objective of the pure state
  bool traceless = false;       // all four A (x) B products traceless on the noise support
  std::optional<double> shortcut;  // 2 / value_at_one, set when traceless
};

/// Smallest admixing probability p at which the objective of
/// p|psi><psi| + (1-p) rho_w reaches 2, located by a grid scan followed by
/// bisection to 1e-9. Throws NoThresholdError if the pure state does not
/// exceed 2.
VisibilityResult visibility_threshold(const CompositeState& pure, Objective objective, const AngleQuad& q,
                                      const PartyReflectivities& reflectivities = {},
                                      NoiseModel model = NoiseModel::outcome_space);

}  // namespace bosesteer
