#include "bosesteer/measurement.hpp"

#include <cmath>
#include <stdexcept>

namespace bosesteer {

Reflectivity Reflectivity::from_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("reflectivity alpha outside [0, 1]");
  return {alpha, std::sqrt(1.0 - alpha * alpha)};
}

BeamSplitterSetting::BeamSplitterSetting(Reflectivity r, double phase_) : reflectivity(r), phase(phase_) {
  const double a = r.alpha, b = r.beta;
  if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0) || std::abs(a * a + b * b - 1.0) > 1e-12)
    throw std::invalid_argument("beam splitter requires alpha^2 + beta^2 = 1 with alpha, beta in [0, 1]");
  if (!std::isfinite(phase_)) throw std::invalid_argument("beam splitter phase must be finite");
}

LinearModeMap party_map(const BeamSplitterSetting& setting, std::pair<ModeLabel, ModeLabel> inputs,
                        std::pair<ModeLabel, ModeLabel> outputs) {
  const double a = setting.reflectivity.alpha, b = setting.reflectivity.beta;
  const Complex ph = std::polar(1.0, setting.phase);
  LinearModeMap map;
  map.set(inputs.first, {{outputs.first, a}, {outputs.second, b}});
  map.set(inputs.second, {{outputs.first, ph * b}, {outputs.second, -ph * a}});
  return map;
}

LinearModeMap joint_map(const BeamSplitterSetting& alice, const BeamSplitterSetting& bob) {
  return LinearModeMap::direct_sum(party_map(alice, {"a", "A"}, {"c", "C"}),
                                   party_map(bob, {"b", "B"}, {"d", "D"}));
}

int epsilon(unsigned n, unsigned m) {
  const unsigned long long s = m + n;
  const unsigned long long exponent = m + s * (s + 1) / 2;
  return exponent % 2 == 0 ? 1 : -1;
}

unsigned outcome_count(unsigned total) { return (total + 1) * (total + 2) / 2; }

std::vector<std::pair<unsigned, unsigned>> local_outcomes(unsigned total) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned n = 0; n <= total; ++n)
    for (unsigned m = 0; n + m <= total; ++m) out.emplace_back(n, m);
  return out;
}

std::vector<BasisElement> effective_basis(unsigned total, const BeamSplitterSetting& setting,
                                          std::pair<ModeLabel, ModeLabel> input_modes) {
  // c^dag -> alpha x^dag + beta e^{-i phase} y^dag, C^dag -> beta x^dag - alpha e^{-i phase} y^dag
  const double a = setting.reflectivity.alpha, b = setting.reflectivity.beta;
  const Complex ph = std::polar(1.0, -setting.phase);
  LinearModeMap to_inputs;
  to_inputs.set("c", {{input_modes.first, a}, {input_modes.second, b * ph}});
  to_inputs.set("C", {{input_modes.first, b}, {input_modes.second, -a * ph}});

  std::vector<BasisElement> out;
  for (auto [n, m] : local_outcomes(total)) {
    out.push_back({n, m, substitute(monomial_state({{"c", n}, {"C", m}}), to_inputs), epsilon(n, m)});
  }
  return out;
}

OutcomeDistribution joint_distribution(const CompositeState& state, const BeamSplitterSetting& alice,
                                       const BeamSplitterSetting& bob) {
  const auto map = joint_map(alice, bob);
  OutcomeDistribution dist;
  for (const auto& entry : state.ensemble.entries()) {
    const auto out = substitute(entry.state, map);  // modes (c, C, d, D)
    for (const auto& [e, amp] : fock_amplitudes(out))
      dist[Outcome{e[0], e[1], e[2], e[3]}] += entry.weight * std::norm(amp);
  }
  return dist;
}

OutcomeDistribution joint_distribution_by_projection(const CompositeState& state,
                                                     const BeamSplitterSetting& alice,
                                                     const BeamSplitterSetting& bob) {
  const unsigned total = state.total();
  const auto alice_basis = effective_basis(total, alice, {"a", "A"});
  const auto bob_basis = effective_basis(total, bob, {"b", "B"});
  OutcomeDistribution dist;
  for (const auto& va : alice_basis) {
    for (const auto& vb : bob_basis) {
      const auto joint = tensor(va.vector, vb.vector);  // modes (a, b, A, B)
      double p = 0.0;
      for (const auto& entry : state.ensemble.entries()) p += entry.weight * std::norm(inner(joint, entry.state));
      if (p > 0.0) dist[Outcome{va.n, va.m, vb.n, vb.m}] += p;
    }
  }
  return dist;
}

double correlation_of(const OutcomeDistribution& distribution) {
  double s = 0.0;
  for (const auto& [o, p] : distribution) s += o.sign() * p;
  return s;
}

double sector_trace_product(unsigned n1, unsigned n2, const BeamSplitterSetting& alice,
                            const BeamSplitterSetting& bob, NoiseModel model) {
  double trace = 0.0;
  const StateEnsemble noise = white_noise_ensemble(n1, n2, model);
  for (const auto& entry : noise.entries()) {
    CompositeState basis_state{StateEnsemble::pure(entry.state), n1, n2};
    trace += correlation_of(joint_distribution(basis_state, alice, bob));
  }
  return trace;
}

int local_observable_trace(unsigned total) {
  int s = 0;
  for (auto [n, m] : local_outcomes(total)) s += epsilon(n, m);
  return s;
}

}  // namespace bosesteer
