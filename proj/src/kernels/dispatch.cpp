#include "harsanyi/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace harsanyi::kernels {

#ifndef HARSANYI_HAVE_AVX2
namespace detail {
const Ops* avx2_ops_or_null() { return nullptr; }
}  // namespace detail
#endif

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend pick_backend() {
    if (const char* env = std::getenv("HARSANYI_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0) {
            if (!avx2_supported()) {
                throw std::runtime_error("HARSANYI_KERNELS=avx2 but AVX2 is unavailable");
            }
            return Backend::avx2;
        }
        throw std::runtime_error(std::string("unknown HARSANYI_KERNELS value: ") + env);
    }
    return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

Backend& backend_slot() {
    static Backend current = pick_backend();
    return current;
}

}  // namespace

bool avx2_supported() {
    static const bool ok = cpu_has_avx2() && detail::avx2_ops_or_null() != nullptr;
    return ok;
}

const Ops& ops(Backend backend) {
    if (backend == Backend::avx2) {
        const Ops* table = avx2_supported() ? detail::avx2_ops_or_null() : nullptr;
        if (!table) throw std::runtime_error("AVX2 kernel backend unavailable on this host");
        return *table;
    }
    return detail::scalar_ops;
}

const Ops& ops() { return ops(backend_slot()); }

Backend active_backend() { return backend_slot(); }

void force_backend(Backend backend) {
    ops(backend);  // validates availability
    backend_slot() = backend;
}

const char* backend_name(Backend backend) {
    return backend == Backend::avx2 ? "avx2" : "scalar";
}

}  // namespace harsanyi::kernels
