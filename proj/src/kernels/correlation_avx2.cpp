// AVX2/FMA correlation kernel: four angle pairs per register lane group.
// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>
#include <vector>

#include "bosesteer/kernels.hpp"

namespace bosesteer::detail {

namespace {

constexpr std::size_t kLanes = 4;

struct alignas(32) LaneTable {
  double re[kLanes];
  double im[kLanes];
};

}  // namespace

void evaluate_avx2(const CorrelationTables& t, std::span<const AnglePair> angles, std::span<double> out) {
  const std::size_t J = t.alice_orders, L = t.bob_orders;
  const std::size_t full = angles.size() / kLanes * kLanes;
  std::vector<LaneTable> pa(J), pb(L);

  for (std::size_t i = 0; i < full; i += kLanes) {
    for (std::size_t lane = 0; lane < kLanes; ++lane) {
      for (std::size_t j = 0; j < J; ++j) {
        const double x = static_cast<double>(j) * angles[i + lane].alice;
        pa[j].re[lane] = std::cos(x);
        pa[j].im[lane] = std::sin(x);
      }
      for (std::size_t l = 0; l < L; ++l) {
        const double x = static_cast<double>(l) * angles[i + lane].bob;
        pb[l].re[lane] = std::cos(x);
        pb[l].im[lane] = std::sin(x);
      }
    }
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t r = 0; r < t.rows; ++r) {
      const double* cr = t.coef_re.data() + r * J * L;
      const double* ci = t.coef_im.data() + r * J * L;
      __m256d amp_re = _mm256_setzero_pd();
      __m256d amp_im = _mm256_setzero_pd();
      for (std::size_t j = 0; j < J; ++j) {
        __m256d s_re = _mm256_setzero_pd();
        __m256d s_im = _mm256_setzero_pd();
        for (std::size_t l = 0; l < L; ++l) {
          const __m256d b_re = _mm256_load_pd(pb[l].re);
          const __m256d b_im = _mm256_load_pd(pb[l].im);
          const __m256d c_re = _mm256_broadcast_sd(cr + j * L + l);
          const __m256d c_im = _mm256_broadcast_sd(ci + j * L + l);
          s_re = _mm256_fmadd_pd(c_re, b_re, s_re);
          s_re = _mm256_fnmadd_pd(c_im, b_im, s_re);
          s_im = _mm256_fmadd_pd(c_re, b_im, s_im);
          s_im = _mm256_fmadd_pd(c_im, b_re, s_im);
        }
        const __m256d a_re = _mm256_load_pd(pa[j].re);
        const __m256d a_im = _mm256_load_pd(pa[j].im);
        amp_re = _mm256_fmadd_pd(a_re, s_re, amp_re);
        amp_re = _mm256_fnmadd_pd(a_im, s_im, amp_re);
        amp_im = _mm256_fmadd_pd(a_re, s_im, amp_im);
        amp_im = _mm256_fmadd_pd(a_im, s_re, amp_im);
      }
      const __m256d mag = _mm256_fmadd_pd(amp_re, amp_re, _mm256_mul_pd(amp_im, amp_im));
      acc = _mm256_fmadd_pd(_mm256_set1_pd(t.weight[r]), mag, acc);
    }
    _mm256_storeu_pd(out.data() + i, acc);
  }

  if (full < angles.size()) evaluate_scalar(t, angles.subspan(full), out.subspan(full));
}

}  // namespace bosesteer::detail
