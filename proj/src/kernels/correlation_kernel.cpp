#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "bosesteer/kernels.hpp"

namespace bosesteer {

std::string_view to_string(KernelIsa isa) {
  switch (isa) {
    case KernelIsa::scalar: return "scalar";
    case KernelIsa::avx2: return "avx2";
  }
  return "unknown";
}

bool kernel_available(KernelIsa isa) {
  switch (isa) {
    case KernelIsa::scalar: return true;
    case KernelIsa::avx2:
#if defined(BOSESTEER_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

KernelIsa best_kernel() {
  static const KernelIsa best = kernel_available(KernelIsa::avx2) ? KernelIsa::avx2 : KernelIsa::scalar;
  return best;
}

CorrelationKernel::CorrelationKernel(const CompositeState& state, const PartyReflectivities& reflectivities) {
  const auto map = joint_map(BeamSplitterSetting(reflectivities.alice, 0.0),
                             BeamSplitterSetting(reflectivities.bob, 0.0));

  unsigned max_j = 0, max_l = 0;
  for (const auto& entry : state.ensemble.entries()) {
    for (const auto& [e, c] : entry.state.terms()) {
      max_j = std::max(max_j, e[2]);
      max_l = std::max(max_l, e[3]);
    }
  }
  const std::size_t J = max_j + 1, L = max_l + 1;

  // (member, outcome) -> dense [j][l] coefficient grid
  std::map<std::pair<std::size_t, Outcome>, std::vector<Complex>> grids;
  for (std::size_t member = 0; member < state.ensemble.size(); ++member) {
    const auto& p = state.ensemble.entries()[member].state;
    std::map<std::pair<unsigned, unsigned>, ModePolynomial> groups;
    for (const auto& [e, c] : p.terms()) {
      auto [it, inserted] = groups.try_emplace({e[2], e[3]}, p.modes());
      it->second.add_term(e, c);
    }
    for (const auto& [jl, group] : groups) {
      for (const auto& [e, amp] : fock_amplitudes(substitute(group, map))) {
        auto& grid = grids[{member, Outcome{e[0], e[1], e[2], e[3]}}];
        grid.resize(J * L);
        grid[jl.first * L + jl.second] += amp;
      }
    }
  }

  tables_.rows = grids.size();
  tables_.alice_orders = J;
  tables_.bob_orders = L;
  tables_.weight.reserve(grids.size());
  tables_.coef_re.reserve(grids.size() * J * L);
  tables_.coef_im.reserve(grids.size() * J * L);
  for (const auto& [key, grid] : grids) {
    const auto& [member, outcome] = key;
    tables_.weight.push_back(state.ensemble.entries()[member].weight * outcome.sign());
    for (const Complex& c : grid) {
      tables_.coef_re.push_back(c.real());
      tables_.coef_im.push_back(c.imag());
    }
  }
}

void CorrelationKernel::evaluate(std::span<const AnglePair> angles, std::span<double> out, KernelIsa isa) const {
  if (out.size() < angles.size()) throw std::invalid_argument("output span shorter than angle span");
  if (!kernel_available(isa)) throw std::runtime_error("kernel not available: " + std::string(to_string(isa)));
  if (isa == KernelIsa::avx2)
    detail::evaluate_avx2(tables_, angles, out);
  else
    detail::evaluate_scalar(tables_, angles, out);
}

double CorrelationKernel::operator()(double alice_angle, double bob_angle) const {
  const AnglePair a{alice_angle, bob_angle};
  double out = 0.0;
  detail::evaluate_scalar(tables_, {&a, 1}, {&out, 1});
  return out;
}

namespace detail {

void evaluate_scalar(const CorrelationTables& t, std::span<const AnglePair> angles, std::span<double> out) {
  const std::size_t J = t.alice_orders, L = t.bob_orders;
  std::vector<Complex> pa(J), pb(L);
  for (std::size_t i = 0; i < angles.size(); ++i) {
    for (std::size_t j = 0; j < J; ++j) pa[j] = std::polar(1.0, static_cast<double>(j) * angles[i].alice);
    for (std::size_t l = 0; l < L; ++l) pb[l] = std::polar(1.0, static_cast<double>(l) * angles[i].bob);
    double acc = 0.0;
    for (std::size_t r = 0; r < t.rows; ++r) {
      const double* cr = t.coef_re.data() + r * J * L;
      const double* ci = t.coef_im.data() + r * J * L;
      Complex amp{};
      for (std::size_t j = 0; j < J; ++j) {
        Complex inner_sum{};
        for (std::size_t l = 0; l < L; ++l) inner_sum += Complex(cr[j * L + l], ci[j * L + l]) * pb[l];
        amp += pa[j] * inner_sum;
      }
      acc += t.weight[r] * std::norm(amp);
    }
    out[i] = acc;
  }
}

#if !defined(BOSESTEER_HAVE_AVX2)
void evaluate_avx2(const CorrelationTables&, std::span<const AnglePair>, std::span<double>) {
  throw std::runtime_error("built without AVX2 kernels");
}
#endif

}  // namespace detail

}  // namespace bosesteer
