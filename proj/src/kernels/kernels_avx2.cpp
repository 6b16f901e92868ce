// AVX2+FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after the dispatcher has confirmed CPU support.

#include "harsanyi/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace harsanyi::kernels {
namespace {

// Butterfly sweep: for each bit, subtract the low half of every 2^(bit+1)
// block from the high half. Blocks of >= 4 lanes go through 256-bit ops; the
// two low bits stay scalar. Each output slot sees the identical op sequence
// as the scalar kernel, so results are bit-exact across backends.
void mobius_inplace_avx2(double* v, int n) {
    const size_t len = size_t{1} << n;
    for (int bit = 0; bit < n; ++bit) {
        const size_t half = size_t{1} << bit;
        if (half >= 4) {
            for (size_t base = 0; base < len; base += half << 1) {
                double* lo = v + base;
                double* hi = lo + half;
                for (size_t j = 0; j < half; j += 4) {
                    const __m256d a = _mm256_loadu_pd(hi + j);
                    const __m256d b = _mm256_loadu_pd(lo + j);
                    _mm256_storeu_pd(hi + j, _mm256_sub_pd(a, b));
                }
            }
        } else {
            for (size_t base = 0; base < len; base += half << 1) {
                double* lo = v + base;
                double* hi = lo + half;
                for (size_t j = 0; j < half; ++j) hi[j] -= lo[j];
            }
        }
    }
}

void zeta_inplace_avx2(double* v, int n) {
    const size_t len = size_t{1} << n;
    for (int bit = 0; bit < n; ++bit) {
        const size_t half = size_t{1} << bit;
        if (half >= 4) {
            for (size_t base = 0; base < len; base += half << 1) {
                double* lo = v + base;
                double* hi = lo + half;
                for (size_t j = 0; j < half; j += 4) {
                    const __m256d a = _mm256_loadu_pd(hi + j);
                    const __m256d b = _mm256_loadu_pd(lo + j);
                    _mm256_storeu_pd(hi + j, _mm256_add_pd(a, b));
                }
            }
        } else {
            for (size_t base = 0; base < len; base += half << 1) {
                double* lo = v + base;
                double* hi = lo + half;
                for (size_t j = 0; j < half; ++j) hi[j] += lo[j];
            }
        }
    }
}

double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double* a, const double* b, size_t len) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 8 <= len; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= len; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < len; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy_avx2(double alpha, const double* x, double* y, size_t len) {
    const __m256d av = _mm256_set1_pd(alpha);
    size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        const __m256d yv = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv));
    }
    for (; i < len; ++i) y[i] += alpha * x[i];
}

double sum_avx2(const double* v, size_t len) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 8 <= len; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(v + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(v + i + 4));
    }
    for (; i + 4 <= len; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(v + i));
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < len; ++i) acc += v[i];
    return acc;
}

double abs_max_avx2(const double* v, size_t len) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d best = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        const __m256d a = _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(v + i));
        best = _mm256_max_pd(best, a);
    }
    const __m128d lo = _mm256_castpd256_pd128(best);
    const __m128d hi = _mm256_extractf128_pd(best, 1);
    const __m128d m = _mm_max_pd(lo, hi);
    double out = _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
    for (; i < len; ++i) {
        const double a = std::fabs(v[i]);
        if (a > out) out = a;
    }
    return out;
}

const Ops avx2_ops = {
    &mobius_inplace_avx2, &zeta_inplace_avx2,
    &dot_avx2, &axpy_avx2, &sum_avx2, &abs_max_avx2,
};

}  // namespace

namespace detail {
const Ops* avx2_ops_or_null() { return &avx2_ops; }
}  // namespace detail

}  // namespace harsanyi::kernels
