#pragma once
// State families: two-mode condensate and N00N states, two-copy composites
// shared between Alice (modes a, A) and Bob (modes b, B), and white-noise
// admixtures.

#include <stdexcept>
#include <utility>
#include <vector>

#include "bosesteer/fock.hpp"

namespace bosesteer {

class DegenerateState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct EnsembleEntry {
  double weight = 0.0;
  ModePolynomial state;
};

/// Convex mixture of normalized pure states over identical modes.
class StateEnsemble {
 public:
  StateEnsemble() = default;
  /// Validates weights (nonnegative, summing to 1) and member normalization.
  explicit StateEnsemble(std::vector<EnsembleEntry> entries);

  static StateEnsemble pure(ModePolynomial state);

  const std::vector<EnsembleEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<EnsembleEntry> entries_;
};

/// Support of the completely depolarized state used for white noise.
enum class NoiseModel {
  /// Uniform over each party's local outcome space: every (n, m) with
  /// n + m <= n1 + n2 on Alice's modes (a, A), and likewise for Bob.
  /// Dimension outcome_count(N)^2. Diagonal in particle number, so no
  /// superselection-violating coherences.
  outcome_space,
  /// Uniform over the fixed-number sector |k, n1-k>_ab |l, n2-l>_AB.
  /// Dimension (n1+1)(n2+1).
  fixed_sector,
};

/// Two copies shared between the parties: system 1 on (a, b) with n1
/// particles, system 2 on (A, B) with n2 particles. Alice holds {a, A},
/// Bob holds {b, B}.
struct CompositeState {
  StateEnsemble ensemble;
  unsigned n1 = 0;
  unsigned n2 = 0;

  unsigned total() const { return n1 + n2; }
  /// Checks the sector invariant: every member either lies in the (n1, n2)
  /// sector or is a product of local number states with at most n1 + n2
  /// particles per party (outcome-space noise).
  bool sector_valid() const;
};

/// (1/sqrt2)^N sum_n sqrt(N!/(n!(N-n)!)) |n, N-n>.
ModePolynomial bec_state(unsigned n, std::pair<ModeLabel, ModeLabel> modes);

/// (|N-m, m> + |m, N-m>)/sqrt2. Throws DegenerateState when 2m == N.
ModePolynomial noon_state(unsigned n, unsigned m, std::pair<ModeLabel, ModeLabel> modes);

/// s1 over (a, b) tensor s2 over (A, B). Both must be normalized and of
/// fixed particle number.
CompositeState two_copy(const ModePolynomial& s1, const ModePolynomial& s2);

/// Convenience: bec_state(n1) on (a, b) with bec_state(n2) on (A, B).
CompositeState bec_pair(unsigned n1, unsigned n2);
/// Convenience: noon_state(n, m) on both systems.
CompositeState noon_pair(unsigned n, unsigned m);

/// Uniform mixture of the basis states spanning the chosen noise support.
StateEnsemble white_noise_ensemble(unsigned n1, unsigned n2,
                                   NoiseModel model = NoiseModel::outcome_space);

/// p |psi><psi| + (1-p) rho_w. Requires a pure composite.
CompositeState admix(const CompositeState& pure, double p,
                     NoiseModel model = NoiseModel::outcome_space);

}  // namespace bosesteer
