#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bosesteer/search.hpp"

using namespace bosesteer;

namespace {

const double kTsirelson = 2.0 * std::sqrt(2.0);

ScanSeries series_of(std::vector<double> values) {
  ScanSeries s;
  for (std::size_t i = 0; i < values.size(); ++i)
    s.samples.emplace_back(kTwoPi * static_cast<double>(i) / static_cast<double>(values.size()), values[i]);
  return s;
}

bool same(const OptimizationResult& x, const OptimizationResult& y) {
  return x.max_value == y.max_value && x.argmax.phi1 == y.argmax.phi1 && x.argmax.phi2 == y.argmax.phi2 &&
         x.argmax.theta1 == y.argmax.theta1 && x.argmax.theta2 == y.argmax.theta2 &&
         x.evaluations == y.evaluations && x.best_restart == y.best_restart && x.seed == y.seed &&
         x.restarts_used == y.restarts_used;
}

}  // namespace

TEST_CASE("restart_points_are_in_the_box_and_seeded") {
  for (unsigned i = 0; i < 200; ++i) {
    const auto q = restart_point(3, i);
    for (double x : {q.phi1, q.phi2, q.theta1, q.theta2}) {
      CHECK(x >= 0.0);
      CHECK(x < kTwoPi);
    }
  }
  CHECK(restart_point(3, 5).phi1 == restart_point(3, 5).phi1);
  CHECK(restart_point(3, 5).phi1 != restart_point(4, 5).phi1);
  CHECK(restart_point(3, 5).theta2 != restart_point(3, 6).theta2);
}

TEST_CASE("optimize_is_deterministic_and_thread_count_independent") {
  const InequalityEvaluator ev(bec_pair(2, 2), {});
  OptimizeOptions opts;
  opts.restarts = 12;
  opts.seed = 42;
  const auto a = optimize(Objective::bell_abs, ev, opts);
  const auto b = optimize(Objective::bell_abs, ev, opts);
  CHECK(same(a, b));
  opts.jobs = 3;
  CHECK(same(a, optimize(Objective::bell_abs, ev, opts)));
  CHECK(a.restarts_used == 12);
  CHECK(a.seed == 42);
  CHECK(a.evaluations > 12);
}

TEST_CASE("optimize_is_monotone_in_restarts") {
  const InequalityEvaluator ev(bec_pair(1, 2), {Reflectivity::from_alpha(0.3), Reflectivity::from_alpha(0.3)});
  OptimizeOptions opts;
  opts.seed = 9;
  double last = -1.0;
  for (unsigned r : {1u, 2u, 4u, 8u, 16u}) {
    opts.restarts = r;
    const double v = optimize(Objective::steering, ev, opts).max_value;
    CHECK(v >= last);
    last = v;
  }
}

TEST_CASE("optimize_result_invariants") {
  for (const auto& s : {bec_pair(1, 1), bec_pair(2, 2), noon_pair(2, 0)}) {
    const InequalityEvaluator ev(s, {});
    for (auto obj : {Objective::steering, Objective::bell_abs}) {
      OptimizeOptions opts;
      opts.restarts = 8;
      const auto r = optimize(obj, ev, opts);
      CHECK(r.max_value <= kTsirelson + 1e-6);
      CHECK(std::abs(r.max_value - ev.value(obj, r.argmax)) < 1e-9);
      for (double x : {r.argmax.phi1, r.argmax.phi2, r.argmax.theta1, r.argmax.theta2}) {
        CHECK(x >= 0.0);
        CHECK(x < kTwoPi);
      }
    }
  }
  CHECK_THROWS(optimize(Objective::steering, bec_pair(1, 1), OptimizeOptions{.restarts = 0}));
}

TEST_CASE("optimize_examples") {
  OptimizeOptions opts;
  // the steering functional saturates 2 sqrt2 for these states
  CHECK(optimize(Objective::steering, bec_pair(1, 1), opts).max_value == doctest::Approx(kTsirelson).epsilon(1e-8));
  CHECK(optimize(Objective::steering, noon_pair(2, 0), opts).max_value == doctest::Approx(kTsirelson).epsilon(1e-8));
  CHECK(std::abs(optimize(Objective::bell_abs, bec_pair(2, 2), opts).max_value - 2.36) < 0.01);
  CHECK(optimize(Objective::bell_abs, bec_pair(1, 1), opts).max_value ==
        doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("scan_grid_and_flat_series") {
  const InequalityEvaluator vac(bec_pair(0, 0), {});
  const std::vector<Objective> objs = {Objective::steering, Objective::bell_abs};
  const auto series = scan_1d(objs, vac, {}, AngleAxis::phi2, 16);
  REQUIRE(series.size() == 2);
  for (const auto& s : series) {
    CHECK(s.samples.size() == 16);
    CHECK(s.samples.front().first == 0.0);
    CHECK(s.samples.back().first < kTwoPi);
    for (std::size_t i = 1; i < s.samples.size(); ++i) CHECK(s.samples[i].first > s.samples[i - 1].first);
    CHECK(count_local_maxima(s, 0.0) == 0);
  }
  // vacuum: all correlations 1, B = 2, S = 2 sqrt2 - but constant
  CHECK(series[1].samples[3].second == doctest::Approx(2.0));
  CHECK_THROWS(scan_1d(objs, vac, {}, AngleAxis::phi2, 7));
}

TEST_CASE("count_local_maxima_on_synthetic_series") {
  CHECK(count_local_maxima(series_of({0, 3, 0, 3, 0, 3, 0, 1}), 2.0) == 3);
  // peak straddling the wrap-around point
  CHECK(count_local_maxima(series_of({3, 2, 1, 0, 1, 2, 2.5, 2.9}), 2.0) == 1);
  // plateau counts once
  CHECK(count_local_maxima(series_of({0, 3, 3, 3, 0, 1, 0, 0}), 2.0) == 1);
  // plateau across the seam
  CHECK(count_local_maxima(series_of({3, 3, 1, 0, 1, 0, 1, 3}), 2.0) == 1);
  // below threshold
  CHECK(count_local_maxima(series_of({0, 1.5, 0, 1.9, 0, 1, 0, 1}), 2.0) == 0);
  // shoulder that rises again is not a maximum
  CHECK(count_local_maxima(series_of({0, 2.5, 2.5, 3, 0, 0, 0, 0}), 2.0) == 1);
}

TEST_CASE("figure_one_maxima_counts") {
  const InequalityEvaluator ev(bec_pair(1, 1), {});
  const std::vector<Objective> objs = {Objective::steering, Objective::bell_abs};
  const auto series = scan_1d(objs, ev, {0.0, kPi / 2, 3.93, 0.0}, AngleAxis::theta2, 720);
  CHECK(count_local_maxima(series[0], 2.0) == 2);
  CHECK(count_local_maxima(series[1], 2.0) == 1);

  OptimizeOptions opts;
  opts.restarts = 16;
  for (const auto& s : series) {
    double peak = 0.0;
    for (const auto& [x, y] : s.samples) peak = std::max(peak, y);
    CHECK(peak <= optimize(s.objective, ev, opts).max_value + 1e-6);
  }
}

TEST_CASE("axis_names") {
  for (auto a : {AngleAxis::phi1, AngleAxis::phi2, AngleAxis::theta1, AngleAxis::theta2})
    CHECK(parse_axis(to_string(a)) == a);
  CHECK_FALSE(parse_axis("theta3").has_value());
  AngleQuad q{1, 2, 3, 4};
  angle_ref(q, AngleAxis::theta1) = 9;
  CHECK(q.theta1 == 9);
}
