#pragma once
// Prepared correlation evaluator.
//
// Substituting e^{i phi} into Alice's A-mode image and e^{i theta} into Bob's
// B-mode image multiplies a monomial by e^{i (n_A phi + n_B theta)}. So for a
// fixed state and fixed reflectivities every outcome amplitude is a small
// trigonometric polynomial
//
//   amp_o(phi, theta) = sum_{j, l} C_o[j][l] e^{i j phi} e^{i l theta},
//
// and the correlation is sum_o w_o |amp_o|^2 with w_o = weight * eps * eps.
// The coefficients are computed once by substitution at zero phase; the
// evaluation loop is what the scalar and AVX2 kernels implement.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "bosesteer/measurement.hpp"
#include "bosesteer/states.hpp"

namespace bosesteer {

enum class KernelIsa { scalar, avx2 };

std::string_view to_string(KernelIsa isa);

/// True if this build contains the kernel and the CPU can run it.
bool kernel_available(KernelIsa isa);

/// Widest available kernel.
KernelIsa best_kernel();

struct AnglePair {
  double alice = 0.0;  // phi
  double bob = 0.0;    // theta
};

/// Flattened coefficient tables shared by all kernel variants.
struct CorrelationTables {
  std::size_t rows = 0;
  std::size_t alice_orders = 1;  // J: max n_A + 1
  std::size_t bob_orders = 1;    // L: max n_B + 1
  std::vector<double> weight;    // rows
  std::vector<double> coef_re;   // rows * J * L, row-major [row][j][l]
  std::vector<double> coef_im;
};

class CorrelationKernel {
 public:
  CorrelationKernel(const CompositeState& state, const PartyReflectivities& reflectivities);

  /// out[i] = <A(angles[i].alice) (x) B(angles[i].bob)>.
  void evaluate(std::span<const AnglePair> angles, std::span<double> out, KernelIsa isa) const;
  void evaluate(std::span<const AnglePair> angles, std::span<double> out) const {
    evaluate(angles, out, best_kernel());
  }

  double operator()(double alice_angle, double bob_angle) const;

  const CorrelationTables& tables() const { return tables_; }

 private:
  CorrelationTables tables_;
};

namespace detail {
void evaluate_scalar(const CorrelationTables& t, std::span<const AnglePair> angles, std::span<double> out);
void evaluate_avx2(const CorrelationTables& t, std::span<const AnglePair> angles, std::span<double> out);
}  // namespace detail

}  // namespace bosesteer
