#include "bosesteer/states.hpp"

#include <cmath>
#include <string>

namespace bosesteer {

namespace {

constexpr double kNormTolerance = 1e-12;

ModePolynomial product_number_state(unsigned na, unsigned nb, unsigned nA, unsigned nB) {
  return monomial_state({{"a", na}, {"b", nb}, {"A", nA}, {"B", nB}});
}

}  // namespace

StateEnsemble::StateEnsemble(std::vector<EnsembleEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("empty ensemble");
  double total = 0.0;
  for (const auto& e : entries_) {
    if (!(e.weight >= 0.0)) throw std::invalid_argument("negative ensemble weight");
    if (e.state.modes() != entries_.front().state.modes())
      throw ModeMismatch("ensemble members over different modes");
    if (std::abs(norm_squared(e.state) - 1.0) > kNormTolerance)
      throw std::invalid_argument("ensemble member is not normalized");
    total += e.weight;
  }
  if (std::abs(total - 1.0) > kNormTolerance)
    throw std::invalid_argument("ensemble weights sum to " + std::to_string(total));
}

StateEnsemble StateEnsemble::pure(ModePolynomial state) {
  return StateEnsemble({EnsembleEntry{1.0, std::move(state)}});
}

bool CompositeState::sector_valid() const {
  const std::vector<ModeLabel> expected = {"a", "b", "A", "B"};
  for (const auto& entry : ensemble.entries()) {
    const auto& p = entry.state;
    if (p.modes() != expected) return false;
    bool in_sector = true;
    for (const auto& [e, c] : p.terms())
      in_sector = in_sector && e[0] + e[1] == n1 && e[2] + e[3] == n2;
    if (in_sector) continue;
    // outcome-space noise member: single product number state
    if (p.size() != 1) return false;
    const auto& e = p.terms().begin()->first;
    if (e[0] + e[2] > total() || e[1] + e[3] > total()) return false;
  }
  return true;
}

ModePolynomial bec_state(unsigned n, std::pair<ModeLabel, ModeLabel> modes) {
  ModePolynomial p({modes.first, modes.second});
  const bool swapped = !(modes.first < modes.second);
  const double scale = std::pow(2.0, -0.5 * n);
  for (unsigned k = 0; k <= n; ++k) {
    const double binom = factorial(n) / (factorial(k) * factorial(n - k));
    // monomial coefficient = Fock amplitude / sqrt(k! (n-k)!)
    const double c = scale * std::sqrt(binom) / std::sqrt(factorial(k) * factorial(n - k));
    p.add_term(swapped ? Exponents{n - k, k} : Exponents{k, n - k}, c);
  }
  return p;
}

ModePolynomial noon_state(unsigned n, unsigned m, std::pair<ModeLabel, ModeLabel> modes) {
  if (2 * m == n)
    throw DegenerateState("N00N components coincide for N = " + std::to_string(n) +
                          ", m = " + std::to_string(m));
  if (m > n) throw std::invalid_argument("N00N index m exceeds N");
  ModePolynomial p({modes.first, modes.second});
  const bool swapped = !(modes.first < modes.second);
  const double c = 1.0 / std::sqrt(2.0 * factorial(n - m) * factorial(m));
  for (auto [x, y] : {std::pair{n - m, m}, std::pair{m, n - m}})
    p.add_term(swapped ? Exponents{y, x} : Exponents{x, y}, c);
  return p;
}

CompositeState two_copy(const ModePolynomial& s1, const ModePolynomial& s2) {
  if (s1.modes() != std::vector<ModeLabel>{"a", "b"} || s2.modes() != std::vector<ModeLabel>{"A", "B"})
    throw ModeMismatch("two_copy expects system 1 on (a, b) and system 2 on (A, B)");
  auto n1 = s1.homogeneous_degree();
  auto n2 = s2.homogeneous_degree();
  if (!n1 || !n2) throw std::invalid_argument("two_copy requires fixed particle numbers");
  if (std::abs(norm_squared(s1) - 1.0) > kNormTolerance || std::abs(norm_squared(s2) - 1.0) > kNormTolerance)
    throw std::invalid_argument("two_copy requires normalized states");
  return CompositeState{StateEnsemble::pure(tensor(s1, s2)), *n1, *n2};
}

CompositeState bec_pair(unsigned n1, unsigned n2) {
  return two_copy(bec_state(n1, {"a", "b"}), bec_state(n2, {"A", "B"}));
}

CompositeState noon_pair(unsigned n, unsigned m) {
  return two_copy(noon_state(n, m, {"a", "b"}), noon_state(n, m, {"A", "B"}));
}

StateEnsemble white_noise_ensemble(unsigned n1, unsigned n2, NoiseModel model) {
  std::vector<ModePolynomial> basis;
  if (model == NoiseModel::fixed_sector) {
    for (unsigned k = 0; k <= n1; ++k)
      for (unsigned l = 0; l <= n2; ++l) basis.push_back(product_number_state(k, n1 - k, l, n2 - l));
  } else {
    const unsigned total = n1 + n2;
    // Alice (a, A) and Bob (b, B) each range over n + m <= total
    for (unsigned na = 0; na <= total; ++na)
      for (unsigned nA = 0; na + nA <= total; ++nA)
        for (unsigned nb = 0; nb <= total; ++nb)
          for (unsigned nB = 0; nb + nB <= total; ++nB) basis.push_back(product_number_state(na, nb, nA, nB));
  }
  std::vector<EnsembleEntry> entries;
  const double w = 1.0 / static_cast<double>(basis.size());
  for (auto& s : basis) entries.push_back({w, std::move(s)});
  return StateEnsemble(std::move(entries));
}

CompositeState admix(const CompositeState& pure, double p, NoiseModel model) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("admixing probability outside [0, 1]");
  if (pure.ensemble.size() != 1) throw std::invalid_argument("admix expects a pure composite state");
  std::vector<EnsembleEntry> entries;
  if (p > 0.0) entries.push_back({p, pure.ensemble.entries().front().state});
  if (p < 1.0) {
    const StateEnsemble noise = white_noise_ensemble(pure.n1, pure.n2, model);
    for (const auto& e : noise.entries())
      entries.push_back({(1.0 - p) * e.weight, e.state});
  }
  return CompositeState{StateEnsemble(std::move(entries)), pure.n1, pure.n2};
}

}  // namespace bosesteer
