#pragma once
// Multistart simplex maximization over the four angles, 1-D scans and
// circular local-maximum counting.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bosesteer/inequalities.hpp"

namespace bosesteer {

struct OptimizeOptions {
  unsigned restarts = 64;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  PartyReflectivities reflectivities;
  double initial_step = 0.5;
  double size_tolerance = 1e-8;  // simplex size at convergence
  unsigned max_iterations = 2000;
};

struct OptimizationResult {
  double max_value = 0.0;
  AngleQuad argmax;  // canonical, in [0, 2pi)^4
  unsigned restarts_used = 0;
  unsigned long long evaluations = 0;
  std::uint64_t seed = 0;
  unsigned best_restart = 0;
};

/// Start point of restart `index`: a Halton point in [0, 2pi)^4 with a
/// seed-dependent random shift. Independent of the total restart count.
AngleQuad restart_point(std::uint64_t seed, unsigned index);

OptimizationResult optimize(Objective objective, const InequalityEvaluator& evaluator, const OptimizeOptions& options);
OptimizationResult optimize(Objective objective, const CompositeState& state, const OptimizeOptions& options);

enum class AngleAxis { phi1, phi2, theta1, theta2 };

std::string_view to_string(AngleAxis axis);
std::optional<AngleAxis> parse_axis(std::string_view name);
double& angle_ref(AngleQuad& q, AngleAxis axis);

struct ScanSeries {
  Objective objective = Objective::steering;
  AngleAxis axis = AngleAxis::theta2;
  AngleQuad fixed;
  std::vector<std::pair<double, double>> samples;  // (parameter, value)
};

/// Uniform grid of `points` values over [0, 2pi) on `axis`, other angles
/// held at `fixed`. One series per objective. Requires points >= 8.
std::vector<ScanSeries> scan_1d(std::span<const Objective> objectives, const InequalityEvaluator& evaluator,
                                const AngleQuad& fixed, AngleAxis axis, unsigned points);

/// Strict local maxima above `threshold` on the circular series; runs of
/// samples differing by less than 1e-9 count as one plateau.
unsigned count_local_maxima(const ScanSeries& series, double threshold);

}  // namespace bosesteer
