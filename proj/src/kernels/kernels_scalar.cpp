#include "harsanyi/kernels.hpp"

#include <cmath>

namespace harsanyi::kernels {
namespace {

void mobius_inplace_scalar(double* v, int n) {
    const size_t len = size_t{1} << n;
    for (int bit = 0; bit < n; ++bit) {
        const size_t half = size_t{1} << bit;
        for (size_t base = 0; base < len; base += half << 1) {
            double* lo = v + base;
            double* hi = lo + half;
            for (size_t j = 0; j < half; ++j) hi[j] -= lo[j];
        }
    }
}

void zeta_inplace_scalar(double* v, int n) {
    const size_t len = size_t{1} << n;
    for (int bit = 0; bit < n; ++bit) {
        const size_t half = size_t{1} << bit;
        for (size_t base = 0; base < len; base += half << 1) {
            double* lo = v + base;
            double* hi = lo + half;
            for (size_t j = 0; j < half; ++j) hi[j] += lo[j];
        }
    }
}

double dot_scalar(const double* a, const double* b, size_t len) {
    double acc = 0.0;
    for (size_t i = 0; i < len; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, size_t len) {
    for (size_t i = 0; i < len; ++i) y[i] += alpha * x[i];
}

double sum_scalar(const double* v, size_t len) {
    double acc = 0.0;
    for (size_t i = 0; i < len; ++i) acc += v[i];
    return acc;
}

double abs_max_scalar(const double* v, size_t len) {
    double best = 0.0;
    for (size_t i = 0; i < len; ++i) {
        const double a = std::fabs(v[i]);
        if (a > best) best = a;
    }
    return best;
}

}  // namespace

namespace detail {
const Ops scalar_ops = {
    &mobius_inplace_scalar, &zeta_inplace_scalar,
    &dot_scalar, &axpy_scalar, &sum_scalar, &abs_max_scalar,
};
}  // namespace detail

}  // namespace harsanyi::kernels
