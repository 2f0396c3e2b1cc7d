#pragma once
// Beam-splitter measurements on each party's pair of modes.
//
// Alice mixes her modes (a, A) into outputs (c, C) and counts particles;
// Bob does the same with (b, B) into (d, D). The outcome (n, m) of one
// party is mapped to the dichotomic value epsilon(n, m).

#include <array>
#include <compare>
#include <map>
#include <utility>
#include <vector>

#include "bosesteer/fock.hpp"
#include "bosesteer/states.hpp"

namespace bosesteer {

/// Real amplitudes (alpha, beta) of a two-mode beam splitter.
struct Reflectivity {
  double alpha = 0.70710678118654752440;
  double beta = 0.70710678118654752440;

  static Reflectivity balanced() { return {}; }
  /// alpha given, beta = sqrt(1 - alpha^2). Requires alpha in [0, 1].
  static Reflectivity from_alpha(double alpha);
};

/// Reflectivities of both parties' beam splitters.
struct PartyReflectivities {
  Reflectivity alice;
  Reflectivity bob;

  static PartyReflectivities shared(Reflectivity r) { return {r, r}; }
};

struct BeamSplitterSetting {
  Reflectivity reflectivity;
  double phase = 0.0;

  BeamSplitterSetting() = default;
  /// Throws std::invalid_argument unless alpha^2 + beta^2 = 1 within 1e-12
  /// and both lie in [0, 1].
  BeamSplitterSetting(Reflectivity r, double phase);

  static BeamSplitterSetting balanced(double phase) { return {Reflectivity::balanced(), phase}; }
};

/// Creation-operator substitution for one party:
///   first^dagger  -> alpha out1^dagger + beta out2^dagger
///   second^dagger -> e^{i phase} (beta out1^dagger - alpha out2^dagger)
/// This is the inverse of out1 = alpha first + beta e^{-i phase} second,
/// out2 = beta first - alpha e^{-i phase} second.
LinearModeMap party_map(const BeamSplitterSetting& setting, std::pair<ModeLabel, ModeLabel> inputs,
                        std::pair<ModeLabel, ModeLabel> outputs);

/// Substitution for both parties: (a, A) -> (c, C), (b, B) -> (d, D).
LinearModeMap joint_map(const BeamSplitterSetting& alice, const BeamSplitterSetting& bob);

/// (-1)^(m + (m+n)(m+n+1)/2).
int epsilon(unsigned n, unsigned m);

/// Number of local outcomes (n, m) with n + m <= total.
unsigned outcome_count(unsigned total);

/// Local outcomes (n, m) with n + m <= total, lexicographic.
std::vector<std::pair<unsigned, unsigned>> local_outcomes(unsigned total);

struct Outcome {
  unsigned n_c = 0, m_C = 0, n_d = 0, m_D = 0;

  unsigned total() const { return n_c + m_C + n_d + m_D; }
  int sign() const { return epsilon(n_c, m_C) * epsilon(n_d, m_D); }

  friend auto operator<=>(const Outcome&, const Outcome&) = default;
};

/// Joint outcome probabilities, lexicographic in (n_c, m_C, n_d, m_D).
using OutcomeDistribution = std::map<Outcome, double>;

struct BasisElement {
  unsigned n = 0;
  unsigned m = 0;
  /// Normalized state over the input modes. Its terms() are the raw
  /// creation-monomial coefficients; fock_amplitudes() gives unit-norm
  /// Fock amplitudes.
  ModePolynomial vector;
  int epsilon = 1;
};

/// Effective measurement basis on the input modes: for each (n, m) with
/// n + m <= total, ((alpha x^dag + beta e^{-i phase} y^dag)^n / sqrt(n!))
/// ((beta x^dag - alpha e^{-i phase} y^dag)^m / sqrt(m!)) |0, 0>.
std::vector<BasisElement> effective_basis(unsigned total, const BeamSplitterSetting& setting,
                                          std::pair<ModeLabel, ModeLabel> input_modes);

/// Outcome distribution by substituting both parties' maps into every
/// ensemble member and mixing squared Fock amplitudes.
OutcomeDistribution joint_distribution(const CompositeState& state, const BeamSplitterSetting& alice,
                                       const BeamSplitterSetting& bob);

/// Same distribution, computed as |<alice (x) bob basis vector | psi>|^2
/// over the effective bases.
OutcomeDistribution joint_distribution_by_projection(const CompositeState& state,
                                                     const BeamSplitterSetting& alice,
                                                     const BeamSplitterSetting& bob);

/// sum_outcomes eps * eps * P.
double correlation_of(const OutcomeDistribution& distribution);

/// Sum over the noise-support basis states of the correlation
/// <A (x) B> in that basis state. Equals dim * correlation(white noise).
double sector_trace_product(unsigned n1, unsigned n2, const BeamSplitterSetting& alice,
                            const BeamSplitterSetting& bob,
                            NoiseModel model = NoiseModel::outcome_space);

/// Trace of one party's observable over its local outcome space:
/// sum_{n+m<=total} epsilon(n, m). Basis independent.
int local_observable_trace(unsigned total);

}  // namespace bosesteer
