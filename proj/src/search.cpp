#include "bosesteer/search.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>
#include <thread>

namespace bosesteer {

namespace {

double radical_inverse(unsigned index, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (index > 0) {
    r += f * (index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

struct SimplexContext {
  const InequalityEvaluator* evaluator;
  Objective objective;
  unsigned long long evaluations = 0;
};

double negated_objective(const gsl_vector* x, void* params) {
  auto* ctx = static_cast<SimplexContext*>(params);
  ++ctx->evaluations;
  const AngleQuad q{gsl_vector_get(x, 0), gsl_vector_get(x, 1), gsl_vector_get(x, 2), gsl_vector_get(x, 3)};
  return -ctx->evaluator->value(ctx->objective, q);
}

struct LocalResult {
  double value = 0.0;
  AngleQuad argmax;
  unsigned long long evaluations = 0;
};

using VectorPtr = std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)>;
using MinimizerPtr = std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)>;

LocalResult refine(Objective objective, const InequalityEvaluator& evaluator, const AngleQuad& start,
                   const OptimizeOptions& options) {
  SimplexContext ctx{&evaluator, objective};
  gsl_multimin_function fn{&negated_objective, 4, &ctx};

  VectorPtr x(gsl_vector_alloc(4), &gsl_vector_free);
  VectorPtr step(gsl_vector_alloc(4), &gsl_vector_free);
  gsl_vector_set(x.get(), 0, start.phi1);
  gsl_vector_set(x.get(), 1, start.phi2);
  gsl_vector_set(x.get(), 2, start.theta1);
  gsl_vector_set(x.get(), 3, start.theta2);
  gsl_vector_set_all(step.get(), options.initial_step);

  MinimizerPtr minimizer(gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 4),
                         &gsl_multimin_fminimizer_free);
  gsl_multimin_fminimizer_set(minimizer.get(), &fn, x.get(), step.get());

  for (unsigned it = 0; it < options.max_iterations; ++it) {
    if (gsl_multimin_fminimizer_iterate(minimizer.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(minimizer.get()), options.size_tolerance) == GSL_SUCCESS)
      break;
  }

  const gsl_vector* best = gsl_multimin_fminimizer_x(minimizer.get());
  const AngleQuad argmax =
      AngleQuad{gsl_vector_get(best, 0), gsl_vector_get(best, 1), gsl_vector_get(best, 2), gsl_vector_get(best, 3)}
          .canonical();
  return {evaluator.value(objective, argmax), argmax, ctx.evaluations + 1};
}

}  // namespace

AngleQuad restart_point(std::uint64_t seed, unsigned index) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::array<double, 4> shift{};
  for (auto& s : shift) s = unit(rng);
  constexpr std::array<unsigned, 4> bases = {2, 3, 5, 7};
  std::array<double, 4> u{};
  for (std::size_t d = 0; d < 4; ++d) {
    double v = radical_inverse(index + 1, bases[d]) + shift[d];
    u[d] = kTwoPi * (v - std::floor(v));
  }
  return {u[0], u[1], u[2], u[3]};
}

OptimizationResult optimize(Objective objective, const InequalityEvaluator& evaluator, const OptimizeOptions& options) {
  if (options.restarts == 0) throw std::invalid_argument("optimize requires at least one restart");
  gsl_set_error_handler_off();

  std::vector<LocalResult> results(options.restarts);
  std::atomic<unsigned> next{0};
  auto worker = [&] {
    for (unsigned i = next++; i < options.restarts; i = next++)
      results[i] = refine(objective, evaluator, restart_point(options.seed, i), options);
  };
  const unsigned jobs = std::clamp(options.jobs, 1u, options.restarts);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  // lowest index wins ties
  OptimizationResult out;
  out.seed = options.seed;
  out.restarts_used = options.restarts;
  for (unsigned i = 0; i < results.size(); ++i) {
    out.evaluations += results[i].evaluations;
    if (i == 0 || results[i].value > out.max_value) {
      out.max_value = results[i].value;
      out.argmax = results[i].argmax;
      out.best_restart = i;
    }
  }
  return out;
}

OptimizationResult optimize(Objective objective, const CompositeState& state, const OptimizeOptions& options) {
  return optimize(objective, InequalityEvaluator(state, options.reflectivities), options);
}

std::string_view to_string(AngleAxis axis) {
  switch (axis) {
    case AngleAxis::phi1: return "phi1";
    case AngleAxis::phi2: return "phi2";
    case AngleAxis::theta1: return "theta1";
    case AngleAxis::theta2: return "theta2";
  }
  return "unknown";
}

std::optional<AngleAxis> parse_axis(std::string_view name) {
  for (auto a : {AngleAxis::phi1, AngleAxis::phi2, AngleAxis::theta1, AngleAxis::theta2})
    if (to_string(a) == name) return a;
  return std::nullopt;
}

double& angle_ref(AngleQuad& q, AngleAxis axis) {
  switch (axis) {
    case AngleAxis::phi1: return q.phi1;
    case AngleAxis::phi2: return q.phi2;
    case AngleAxis::theta1: return q.theta1;
    case AngleAxis::theta2: break;
  }
  return q.theta2;
}

std::vector<ScanSeries> scan_1d(std::span<const Objective> objectives, const InequalityEvaluator& evaluator,
                                const AngleQuad& fixed, AngleAxis axis, unsigned points) {
  if (points < 8) throw std::invalid_argument("scan requires at least 8 points");
  std::vector<ScanSeries> out;
  for (Objective obj : objectives) out.push_back({obj, axis, fixed, {}});
  for (unsigned i = 0; i < points; ++i) {
    const double x = kTwoPi * static_cast<double>(i) / static_cast<double>(points);
    AngleQuad q = fixed;
    angle_ref(q, axis) = x;
    const CorrelationVector e = evaluator.correlations(q);
    for (auto& s : out) s.samples.emplace_back(x, objective_from(s.objective, e));
  }
  return out;
}

unsigned count_local_maxima(const ScanSeries& series, double threshold) {
  constexpr double kPlateau = 1e-9;
  const auto& v = series.samples;
  if (v.empty()) return 0;

  // collapse runs of near-equal neighbours into plateaus
  std::vector<double> runs;
  for (const auto& [x, y] : v)
    if (runs.empty() || std::abs(y - runs.back()) >= kPlateau) runs.push_back(y);
  if (runs.size() > 1 && std::abs(runs.front() - runs.back()) < kPlateau) runs.pop_back();
  if (runs.size() < 2) return 0;

  unsigned count = 0;
  const std::size_t n = runs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = runs[(i + n - 1) % n], next = runs[(i + 1) % n];
    if (runs[i] > threshold && runs[i] > prev && runs[i] > next) ++count;
  }
  return count;
}

}  // namespace bosesteer
