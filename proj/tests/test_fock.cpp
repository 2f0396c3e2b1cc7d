#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bosesteer/fock.hpp"
#include "bosesteer/measurement.hpp"
#include "bosesteer/states.hpp"
#include "oracles.hpp"

using namespace bosesteer;

namespace {

const double kSqrt2 = std::sqrt(2.0);

LinearModeMap random_unitary_map(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double phi = 2.0 * M_PI * u(rng), theta = 2.0 * M_PI * u(rng);
  return joint_map(BeamSplitterSetting(Reflectivity::from_alpha(u(rng)), phi),
                   BeamSplitterSetting(Reflectivity::from_alpha(u(rng)), theta));
}

ModePolynomial random_state(std::mt19937_64& rng, unsigned total) {
  std::normal_distribution<double> g;
  ModePolynomial p({"a", "b", "A", "B"});
  for (unsigned i = 0; i <= total; ++i)
    for (unsigned j = 0; i + j <= total; ++j)
      for (unsigned k = 0; i + j + k <= total; ++k) p.add_term(Exponents{i, j, k, total - i - j - k}, {g(rng), g(rng)});
  return (1.0 / std::sqrt(norm_squared(p))) * p;
}

}  // namespace

TEST_CASE("mode_labels_sort_canonically") {
  ModePolynomial p({"D", "a", "zeta", "B", "c"});
  std::vector<std::string> names;
  for (const auto& m : p.modes()) names.push_back(m.name());
  CHECK(names == std::vector<std::string>{"a", "B", "c", "D", "zeta"});
  CHECK_THROWS_AS(ModePolynomial({"a", "a"}), LabelCollision);
}

TEST_CASE("zero_coefficients_are_not_stored") {
  ModePolynomial p({"a"});
  p.add_term(Exponents{1}, 0.5);
  p.add_term(Exponents{1}, -0.5);
  CHECK(p.empty());
}

TEST_CASE("monomial_state_examples") {
  auto vac = monomial_state({{"a", 0}, {"A", 0}});
  CHECK(vac.size() == 1);
  CHECK(std::abs(vac.coefficient(Exponents{0, 0}) - 1.0) < 1e-15);

  auto one = monomial_state({{"a", 1}});
  CHECK(std::abs(one.coefficient(Exponents{1}) - 1.0) < 1e-15);

  auto two = monomial_state({{"a", 2}});
  CHECK(std::abs(two.coefficient(Exponents{2}) - 1.0 / kSqrt2) < 1e-15);
  auto amps = fock_amplitudes(two);
  CHECK(amps.size() == 1);
  CHECK(std::abs(amps.at(Exponents{2}) - 1.0) < 1e-15);
}

TEST_CASE("fock_amplitudes_of_basis_states_are_unit") {
  for (unsigned x = 0; x <= 3; ++x)
    for (unsigned y = 0; y <= 3; ++y) {
      auto amps = fock_amplitudes(monomial_state({{"a", x}, {"b", y}}));
      REQUIRE(amps.size() == 1);
      CHECK(std::abs(amps.begin()->second - 1.0) < 1e-14);
    }
  ModePolynomial p({"a", "b"});
  p.add_term(Exponents{1, 1}, 1.0);
  CHECK(std::abs(fock_amplitudes(p).at(Exponents{1, 1}) - 1.0) < 1e-15);
}

TEST_CASE("tensor_examples") {
  auto v = tensor(monomial_state({{"a", 0}, {"b", 0}}), monomial_state({{"A", 0}, {"B", 0}}));
  CHECK(v.modes().size() == 4);
  CHECK(std::abs(v.coefficient(Exponents{0, 0, 0, 0}) - 1.0) < 1e-15);

  auto t = tensor(monomial_state({{"a", 1}, {"b", 0}}), monomial_state({{"A", 0}, {"B", 1}}));
  CHECK(std::abs(t.coefficient(std::vector<unsigned>{1, 0, 0, 1}) - 1.0) < 1e-15);

  // two copies of the single-particle condensate: four terms of amplitude 1/2
  auto psi = tensor(bec_state(1, {"a", "b"}), bec_state(1, {"A", "B"}));
  CHECK(psi.size() == 4);
  for (const auto& [e, c] : fock_amplitudes(psi)) CHECK(std::abs(c - 0.5) < 1e-15);

  CHECK_THROWS_AS(tensor(monomial_state({{"a", 1}}), monomial_state({{"a", 0}})), LabelCollision);
}

TEST_CASE("tensor_multiplies_norms") {
  ModePolynomial p({"a", "b"}), q({"A", "B"});
  p.add_term(Exponents{2, 0}, 1.5);
  p.add_term(Exponents{1, 1}, {0.0, 2.0});
  q.add_term(Exponents{0, 3}, 0.7);
  CHECK(norm_squared(tensor(p, q)) == doctest::Approx(norm_squared(p) * norm_squared(q)).epsilon(1e-14));
}

TEST_CASE("inner_product_examples") {
  auto vac = monomial_state({{"a", 0}, {"b", 0}});
  CHECK(std::abs(inner(vac, vac) - 1.0) < 1e-15);
  CHECK(std::abs(inner(monomial_state({{"a", 1}, {"b", 0}}), monomial_state({{"a", 0}, {"b", 1}}))) < 1e-15);
  auto psi2 = bec_state(2, {"a", "b"});
  CHECK(std::abs(inner(psi2, psi2) - 1.0) < 1e-12);
  CHECK_THROWS_AS(inner(vac, monomial_state({{"A", 0}, {"B", 0}})), ModeMismatch);
}

TEST_CASE("inner_is_conjugate_symmetric") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    auto p = random_state(rng, 3), q = random_state(rng, 3);
    CHECK(std::abs(inner(p, q) - std::conj(inner(q, p))) < 1e-14);
  }
}

TEST_CASE("substitute_single_particle_splitting") {
  auto out = substitute(monomial_state({{"a", 1}, {"A", 0}}),
                        party_map(BeamSplitterSetting::balanced(0.0), {"a", "A"}, {"c", "C"}));
  CHECK(out.size() == 2);
  CHECK(std::abs(out.coefficient(Exponents{1, 0}) - 1.0 / kSqrt2) < 1e-15);
  CHECK(std::abs(out.coefficient(Exponents{0, 1}) - 1.0 / kSqrt2) < 1e-15);
}

TEST_CASE("substitute_identity_map_leaves_state_unchanged") {
  auto psi = tensor(bec_state(2, {"a", "b"}), bec_state(1, {"A", "B"}));
  LinearModeMap id;
  for (const char* m : {"a", "b", "A", "B"}) id.set(m, {{m, 1.0}});
  auto out = substitute(psi, id);
  CHECK(out.modes() == psi.modes());
  for (const auto& [e, c] : psi.terms()) CHECK(std::abs(out.coefficient(e) - c) < 1e-15);

  // alpha = 1, beta = 0 splitter: a -> c, A -> -e^{i phi} C
  auto s = substitute(monomial_state({{"a", 1}, {"A", 0}}),
                      party_map(BeamSplitterSetting(Reflectivity{1.0, 0.0}, 0.0), {"a", "A"}, {"c", "C"}));
  CHECK(s.size() == 1);
  CHECK(std::abs(s.coefficient(Exponents{1, 0}) - 1.0) < 1e-15);
}

TEST_CASE("substitute_rejects_non_unitary_and_unknown_modes") {
  LinearModeMap bad;
  bad.set("a", {{"c", 1.0}, {"C", 1.0}});
  CHECK_THROWS_AS(substitute(monomial_state({{"a", 1}}), bad), NonUnitaryMap);

  LinearModeMap partial;
  partial.set("a", {{"c", 1.0}});
  CHECK_THROWS_AS(substitute(monomial_state({{"a", 1}, {"b", 1}}), partial), ModeMismatch);
}

TEST_CASE("property_substitution_preserves_norm_and_particle_number") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const unsigned total = trial % 5;
    auto psi = random_state(rng, total);
    auto out = substitute(psi, random_unitary_map(rng));
    CHECK(std::abs(norm_squared(out) - norm_squared(psi)) < 1e-12);
    REQUIRE(out.homogeneous_degree().has_value());
    CHECK(*out.homogeneous_degree() == total);
  }
}

TEST_CASE("property_substitution_matches_permanent_oracle") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const double aa = u(rng), ab = u(rng), phi = 2 * M_PI * u(rng), theta = 2 * M_PI * u(rng);
    const oracle::Transfer t = oracle::transfer(aa, phi, ab, theta);
    auto map = joint_map(BeamSplitterSetting(Reflectivity::from_alpha(aa), phi),
                         BeamSplitterSetting(Reflectivity::from_alpha(ab), theta));
    const unsigned na = trial % 3, nb = (trial / 3) % 2, nA = trial % 2, nB = (trial / 2) % 3;
    auto out = fock_amplitudes(substitute(monomial_state({{"a", na}, {"b", nb}, {"A", nA}, {"B", nB}}), map));
    // output modes sort as (c, C, d, D)
    const unsigned total = na + nb + nA + nB;
    for (unsigned c = 0; c <= total; ++c)
      for (unsigned C = 0; c + C <= total; ++C)
        for (unsigned d = 0; c + C + d <= total; ++d) {
          const unsigned D = total - c - C - d;
          const auto ref = oracle::transition(t, {na, nb, nA, nB}, {c, C, d, D});
          const auto it = out.find(Exponents{c, C, d, D});
          const Complex got = it == out.end() ? Complex{} : it->second;
          CHECK(std::abs(got - ref) < 1e-12);
        }
  }
}

TEST_CASE("from_fock_amplitudes_inverts_fock_amplitudes") {
  std::mt19937_64 rng(5);
  auto psi = random_state(rng, 4);
  auto back = from_fock_amplitudes(psi.modes(), fock_amplitudes(psi));
  for (const auto& [e, c] : psi.terms()) CHECK(std::abs(back.coefficient(e) - c) < 1e-14);
}

TEST_CASE("direct_sum_rejects_shared_outputs") {
  LinearModeMap x, y;
  x.set("a", {{"c", 1.0}});
  y.set("b", {{"c", 1.0}});
  CHECK_THROWS_AS(LinearModeMap::direct_sum(x, y), LabelCollision);
}
