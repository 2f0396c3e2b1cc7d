#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bosesteer/kernels.hpp"
#include "bosesteer/measurement.hpp"
#include "oracles.hpp"

using namespace bosesteer;

namespace {

std::vector<AnglePair> random_pairs(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<AnglePair> out(n);
  for (auto& p : out) p = {u(rng), u(rng)};
  return out;
}

struct Fixture {
  const char* name;
  CompositeState state;
  PartyReflectivities refl;
};

std::vector<Fixture> fixtures() {
  return {
      {"bec11", bec_pair(1, 1), {}},
      {"bec12", bec_pair(1, 2), {}},
      {"bec22", bec_pair(2, 2), {}},
      {"noon20", noon_pair(2, 0), {}},
      {"noon31", noon_pair(3, 1), {}},
      {"bec23_unbalanced", bec_pair(2, 3), {Reflectivity::from_alpha(0.3), Reflectivity::from_alpha(0.85)}},
      {"admix_outcome_space", admix(bec_pair(1, 2), 0.4, NoiseModel::outcome_space), {}},
      {"admix_sector", admix(bec_pair(2, 1), 0.7, NoiseModel::fixed_sector), {}},
      {"vacuum", bec_pair(0, 0), {}},
  };
}

}  // namespace

TEST_CASE("scalar_kernel_matches_joint_distribution") {
  std::mt19937_64 rng(101);
  for (const auto& f : fixtures()) {
    CAPTURE(f.name);
    const CorrelationKernel kernel(f.state, f.refl);
    const auto pairs = random_pairs(rng, 13);
    std::vector<double> out(pairs.size());
    kernel.evaluate(pairs, out, KernelIsa::scalar);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const double ref = correlation_of(joint_distribution(f.state, {f.refl.alice, pairs[i].alice},
                                                           {f.refl.bob, pairs[i].bob}));
      CHECK(std::abs(out[i] - ref) < 1e-12);
      CHECK(std::abs(kernel(pairs[i].alice, pairs[i].bob) - ref) < 1e-12);
    }
  }
}

TEST_CASE("kernel_matches_permanent_oracle") {
  std::mt19937_64 rng(103);
  const CorrelationKernel kernel(bec_pair(2, 2), {});
  const auto psi = oracle::product(oracle::bec(2), oracle::bec(2));
  const double h = 1.0 / std::sqrt(2.0);
  for (const auto& p : random_pairs(rng, 10))
    CHECK(std::abs(kernel(p.alice, p.bob) - oracle::correlation(psi, oracle::transfer(h, p.alice, h, p.bob))) < 1e-12);
}

TEST_CASE("avx2_kernel_matches_scalar") {
  if (!kernel_available(KernelIsa::avx2)) {
    MESSAGE("avx2 kernel not available on this machine; skipped");
    return;
  }
  std::mt19937_64 rng(107);
  for (const auto& f : fixtures()) {
    CAPTURE(f.name);
    const CorrelationKernel kernel(f.state, f.refl);
    // sizes straddling the 4-lane width exercise the scalar tail
    for (std::size_t n : {1u, 3u, 4u, 5u, 8u, 11u, 64u}) {
      const auto pairs = random_pairs(rng, n);
      std::vector<double> s(n), v(n);
      kernel.evaluate(pairs, s, KernelIsa::scalar);
      kernel.evaluate(pairs, v, KernelIsa::avx2);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(s[i] - v[i]) < 1e-13);
    }
  }
}

TEST_CASE("best_kernel_is_available") {
  CHECK(kernel_available(KernelIsa::scalar));
  CHECK(kernel_available(best_kernel()));
  CHECK(to_string(KernelIsa::scalar) == "scalar");
  CHECK(to_string(KernelIsa::avx2) == "avx2");
}

TEST_CASE("kernel_rejects_mismatched_output_span") {
  const CorrelationKernel kernel(bec_pair(1, 1), {});
  std::vector<AnglePair> pairs(4);
  std::vector<double> out(3);
  CHECK_THROWS(kernel.evaluate(pairs, out, KernelIsa::scalar));
}

TEST_CASE("correlations_stay_in_unit_interval") {
  std::mt19937_64 rng(109);
  for (const auto& f : fixtures()) {
    const CorrelationKernel kernel(f.state, f.refl);
    const auto pairs = random_pairs(rng, 200);
    std::vector<double> out(pairs.size());
    kernel.evaluate(pairs, out);
    for (double e : out) CHECK(std::abs(e) <= 1.0 + 1e-12);
  }
}
