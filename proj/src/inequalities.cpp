#include "bosesteer/inequalities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

namespace bosesteer {

double canonical_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

AngleQuad AngleQuad::canonical() const {
  return {canonical_angle(phi1), canonical_angle(phi2), canonical_angle(theta1), canonical_angle(theta2)};
}

double bell_from(const CorrelationVector& e) { return e.e11 + e.e12 + e.e21 - e.e22; }

double steering_from(const CorrelationVector& e) {
  return std::hypot(e.e11 + e.e21, e.e12 + e.e22) + std::hypot(e.e11 - e.e21, e.e12 - e.e22);
}

std::string_view to_string(Objective objective) {
  switch (objective) {
    case Objective::bell: return "bell_signed";
    case Objective::bell_abs: return "bell";
    case Objective::steering: return "steering";
  }
  return "unknown";
}

std::optional<Objective> parse_objective(std::string_view name, bool bell_means_abs) {
  if (name == "steering") return Objective::steering;
  if (name == "bell_abs") return Objective::bell_abs;
  if (name == "bell_signed") return Objective::bell;
  if (name == "bell") return bell_means_abs ? Objective::bell_abs : Objective::bell;
  return std::nullopt;
}

double objective_from(Objective objective, const CorrelationVector& e) {
  switch (objective) {
    case Objective::bell: return bell_from(e);
    case Objective::bell_abs: return std::abs(bell_from(e));
    case Objective::steering: return steering_from(e);
  }
  return 0.0;
}

InequalityEvaluator::InequalityEvaluator(const CompositeState& state, const PartyReflectivities& reflectivities)
    : kernel_(state, reflectivities) {}

CorrelationVector InequalityEvaluator::correlations(const AngleQuad& q) const {
  const std::array<AnglePair, 4> pairs = {{{q.phi1, q.theta1}, {q.phi1, q.theta2}, {q.phi2, q.theta1}, {q.phi2, q.theta2}}};
  std::array<double, 4> e{};
  kernel_.evaluate(pairs, e);
  return {e[0], e[1], e[2], e[3]};
}

double correlation(const CompositeState& state, double alice_angle, double bob_angle,
                   const PartyReflectivities& reflectivities) {
  return CorrelationKernel(state, reflectivities)(alice_angle, bob_angle);
}

CorrelationVector correlations(const CompositeState& state, const AngleQuad& q,
                               const PartyReflectivities& reflectivities) {
  return InequalityEvaluator(state, reflectivities).correlations(q);
}

double bell_value(const CompositeState& state, const AngleQuad& q, const PartyReflectivities& reflectivities) {
  return bell_from(correlations(state, q, reflectivities));
}

double steering_value(const CompositeState& state, const AngleQuad& q, const PartyReflectivities& reflectivities) {
  return steering_from(correlations(state, q, reflectivities));
}

std::string_view to_string(ClosedFormFamily family) {
  switch (family) {
    case ClosedFormFamily::steer_bec1: return "steer_bec1";
    case ClosedFormFamily::bell_bec1: return "bell_bec1";
    case ClosedFormFamily::steer_bec2: return "steer_bec2";
    case ClosedFormFamily::bell_bec2: return "bell_bec2";
    case ClosedFormFamily::steer_noon: return "steer_noon";
    case ClosedFormFamily::bell_noon: return "bell_noon";
  }
  return "unknown";
}

std::optional<ClosedFormFamily> parse_family(std::string_view name) {
  for (auto f : {ClosedFormFamily::steer_bec1, ClosedFormFamily::bell_bec1, ClosedFormFamily::steer_bec2,
                 ClosedFormFamily::bell_bec2, ClosedFormFamily::steer_noon, ClosedFormFamily::bell_noon})
    if (to_string(f) == name) return f;
  return std::nullopt;
}

double closed_form(ClosedFormFamily family, const AngleQuad& q) {
  using std::cos, std::sin, std::sqrt, std::pow;
  const double p1 = q.phi1, p2 = q.phi2, t1 = q.theta1, t2 = q.theta2;
  auto s4 = [](double x) { return pow(sin(x / 2.0), 4); };
  auto sq = [](double x) { return x * x; };

  switch (family) {
    case ClosedFormFamily::steer_bec1: {
      const double first = sqrt(sq(cos(t1 - p1) + cos(t1 - p2) - 2.0) + sq(cos(t2 - p1) + cos(t2 - p2) - 2.0));
      const double radicand = sq(sin((p1 - p2) / 2.0)) * (2.0 - cos(2.0 * t1 - p1 - p2) - cos(2.0 * t2 - p1 - p2));
      return 0.5 * (first + sqrt(2.0) * sqrt(std::max(radicand, 0.0)));
    }
    case ClosedFormFamily::bell_bec1:
      return 0.5 * (-cos(t1 - p1) - cos(t1 - p2) - cos(t2 - p1) + cos(t2 - p2) + 2.0);
    case ClosedFormFamily::steer_bec2:
      return sqrt(sq(s4(p1 - t1) - s4(p2 - t1)) + sq(s4(p1 - t2) - s4(p2 - t2))) +
             sqrt(sq(s4(p1 - t1) + s4(p2 - t1)) + sq(s4(p1 - t2) + s4(p2 - t2)));
    case ClosedFormFamily::bell_bec2:
      return s4(p1 - t1) + s4(p2 - t1) + s4(p1 - t2) - s4(p2 - t2);
    case ClosedFormFamily::steer_noon: {
      const double first = sqrt(sq(sq(cos(t1 - p1)) + sq(cos(t1 - p2))) + sq(sq(cos(t2 - p1)) + sq(cos(t2 - p2))));
      const double radicand =
          sq(sin(p1 - p2)) * (2.0 - cos(4.0 * t1 - 2.0 * (p1 + p2)) - cos(4.0 * t2 - 2.0 * (p1 + p2)) - 2.0);
      if (radicand < 0.0)
        throw SuspectTypoError("printed N00N steering expression has a negative radicand", radicand);
      return first + sqrt(radicand) / sqrt(2.0);
    }
    case ClosedFormFamily::bell_noon:
      return -sin(t1 - t2) * sin(t1 + t2 - 2.0 * p2) + sq(cos(t1 - p1)) + sq(cos(t2 - p1));
  }
  return 0.0;
}

VisibilityResult visibility_threshold(const CompositeState& pure, Objective objective, const AngleQuad& q,
                                      const PartyReflectivities& reflectivities, NoiseModel model) {
  constexpr double kBound = 2.0;
  constexpr double kTol = 1e-9;
  constexpr int kGrid = 64;

  auto value_at = [&](double p) {
    return InequalityEvaluator(admix(pure, p, model), reflectivities).value(objective, q);
  };

  VisibilityResult result;
  result.value_at_one = value_at(1.0);
  if (!(result.value_at_one > kBound))
    throw NoThresholdError("no violation at p = 1 (value " + std::to_string(result.value_at_one) + ")");

  // Tracelessness on the noise support, from the brute-force basis sum.
  result.traceless = true;
  const std::array<std::pair<double, double>, 4> pairs = {{{q.phi1, q.theta1}, {q.phi1, q.theta2}, {q.phi2, q.theta1}, {q.phi2, q.theta2}}};
  for (const auto& [alice, bob] : pairs) {
    const double tr = sector_trace_product(pure.n1, pure.n2, BeamSplitterSetting(reflectivities.alice, alice),
                                           BeamSplitterSetting(reflectivities.bob, bob), model);
    if (std::abs(tr) > kTolerance) result.traceless = false;
  }
  if (result.traceless) result.shortcut = kBound / result.value_at_one;

  if (value_at(0.0) >= kBound) {
    result.threshold = 0.0;
    return result;
  }
  // first grid cell containing the crossing, then bisect inside it
  double lo = 0.0, hi = 1.0;
  for (int k = 1; k <= kGrid; ++k) {
    const double p = static_cast<double>(k) / kGrid;
    if (value_at(p) >= kBound) {
      lo = static_cast<double>(k - 1) / kGrid;
      hi = p;
      break;
    }
  }
  while (hi - lo > kTol) {
    const double mid = 0.5 * (lo + hi);
    (value_at(mid) >= kBound ? hi : lo) = mid;
  }
  result.threshold = 0.5 * (lo + hi);
  return result;
}

}  // namespace bosesteer
