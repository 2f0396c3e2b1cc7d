#pragma once
// Second-quantized states as polynomials in creation operators acting on vacuum.
//
// A ModePolynomial stores sum_k c_k prod_j (a_j^dagger)^{e_kj} |0>. The
// coefficients c_k are monomial coefficients, not Fock amplitudes: the Fock
// amplitude of |n_1..n_M> is c(n) * prod_j sqrt(n_j!).

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bosesteer {

using Complex = std::complex<double>;
using Exponents = std::vector<unsigned>;

/// Tolerance for numeric equality checks across the engine.
inline constexpr double kTolerance = 1e-10;

class LabelCollision : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ModeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonUnitaryMap : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Name of one bosonic mode. The standard labels a, b, A, B, c, C, d, D
/// sort first in that order; any other label sorts after them lexically.
class ModeLabel {
 public:
  ModeLabel() = default;
  ModeLabel(std::string name);  // NOLINT(google-explicit-constructor)
  ModeLabel(const char* name) : ModeLabel(std::string(name)) {}  // NOLINT

  const std::string& name() const { return name_; }

  friend bool operator==(const ModeLabel& x, const ModeLabel& y) { return x.name_ == y.name_; }
  friend bool operator<(const ModeLabel& x, const ModeLabel& y);

 private:
  std::string name_;
  int rank_ = 0;
};

class ModePolynomial {
 public:
  using Terms = std::map<Exponents, Complex>;

  ModePolynomial() = default;
  /// Empty (zero) polynomial over the given modes. Labels are sorted
  /// canonically; duplicates throw LabelCollision.
  explicit ModePolynomial(std::vector<ModeLabel> modes);

  const std::vector<ModeLabel>& modes() const { return modes_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Position of `label` in modes(), or nullopt.
  std::optional<std::size_t> index_of(const ModeLabel& label) const;

  /// Adds `c` to the coefficient of the monomial with exponents `e`
  /// (given in canonical mode order). Coefficients that cancel to exactly
  /// zero are dropped.
  void add_term(const Exponents& e, Complex c);
  /// Same as add_term, with exponents keyed by label.
  void add_term(const std::map<ModeLabel, unsigned>& occupations, Complex c);

  Complex coefficient(const Exponents& e) const;

  /// Total particle number N if every monomial has degree N.
  std::optional<unsigned> homogeneous_degree() const;

  ModePolynomial& operator*=(Complex s);
  friend ModePolynomial operator*(Complex s, ModePolynomial p) { return p *= s; }
  /// Sum of two polynomials over identical modes.
  friend ModePolynomial operator+(const ModePolynomial& p, const ModePolynomial& q);

 private:
  std::vector<ModeLabel> modes_;
  Terms terms_;
};

/// Linear substitution of creation operators: each input mode's creation
/// operator is replaced by a complex combination of output-mode creation
/// operators.
class LinearModeMap {
 public:
  using Image = std::vector<std::pair<ModeLabel, Complex>>;

  LinearModeMap() = default;

  void set(const ModeLabel& input, Image image);

  const std::map<ModeLabel, Image>& images() const { return images_; }
  /// Sorted set of all output labels.
  std::vector<ModeLabel> outputs() const;

  /// True when the input x output coefficient matrix is square and unitary.
  bool is_unitary(double tol = 1e-12) const;

  /// Block-diagonal combination of two maps with disjoint inputs and outputs.
  static LinearModeMap direct_sum(const LinearModeMap& x, const LinearModeMap& y);

 private:
  std::map<ModeLabel, Image> images_;
};

/// Normalized Fock basis state prod_k (a_k^dagger)^{n_k} / sqrt(n_k!) |0>.
ModePolynomial monomial_state(const std::map<ModeLabel, unsigned>& occupations);

/// Product state over the union of the two mode sets.
ModePolynomial tensor(const ModePolynomial& p, const ModePolynomial& q);

/// Rewrites p in the output modes of `map`. Throws NonUnitaryMap unless the
/// map is unitary, and ModeMismatch if some mode of p is not an input.
ModePolynomial substitute(const ModePolynomial& p, const LinearModeMap& map);

/// Fock amplitudes keyed by occupation vector (canonical mode order).
std::map<Exponents, Complex> fock_amplitudes(const ModePolynomial& p);

/// Builds a polynomial from Fock amplitudes; inverse of fock_amplitudes.
ModePolynomial from_fock_amplitudes(std::vector<ModeLabel> modes,
                                    const std::map<Exponents, Complex>& amplitudes);

/// <p|q>, conjugate-linear in p. Mode sets must match.
Complex inner(const ModePolynomial& p, const ModePolynomial& q);

/// <p|p>.
double norm_squared(const ModePolynomial& p);

double factorial(unsigned n);

}  // namespace bosesteer
