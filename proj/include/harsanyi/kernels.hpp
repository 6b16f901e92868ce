#pragma once

#include <cstddef>

namespace harsanyi::kernels {

enum class Backend { scalar, avx2 };

// Hot arithmetic loops, selected once at runtime. The lattice sweeps apply the
// same per-slot add/sub sequence in every backend and are bit-exact across
// them; dot/sum/abs_max reassociate and agree to rounding only.
struct Ops {
    // In-place fast Mobius / zeta sweeps over a dense array of length 2^n.
    void (*mobius_inplace)(double* values, int n);
    void (*zeta_inplace)(double* values, int n);

    // Dense-vector primitives (MLP layers, analytics reductions).
    double (*dot)(const double* a, const double* b, size_t len);
    void (*axpy)(double alpha, const double* x, double* y, size_t len);
    double (*sum)(const double* v, size_t len);
    double (*abs_max)(const double* v, size_t len);
};

// Active backend: HARSANYI_KERNELS=scalar|avx2 env override, else best
// supported by the CPU.
const Ops& ops();
const Ops& ops(Backend backend);

Backend active_backend();
void force_backend(Backend backend);
bool avx2_supported();
const char* backend_name(Backend backend);

namespace detail {
extern const Ops scalar_ops;
const Ops* avx2_ops_or_null();
}  // namespace detail

}  // namespace harsanyi::kernels
