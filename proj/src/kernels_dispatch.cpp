#include "qbos/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace qbos::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Kernel pick_default() {
    if (const char* env = std::getenv("QBOS_KERNEL")) {
        if (std::strcmp(env, "scalar") == 0) return Kernel::scalar;
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Kernel::avx2;
        return Kernel::scalar;
    }
    return cpu_has_avx2() ? Kernel::avx2 : Kernel::scalar;
}

Kernel& active_slot() {
    static Kernel k = pick_default();
    return k;
}

}  // namespace

const char* kernel_name(Kernel k) {
    switch (k) {
        case Kernel::scalar: return "scalar";
        case Kernel::avx2: return "avx2";
    }
    return "unknown";
}

bool kernel_supported(Kernel k) {
    switch (k) {
        case Kernel::scalar: return true;
        case Kernel::avx2: return cpu_has_avx2();
    }
    return false;
}

Kernel active_kernel() { return active_slot(); }

void set_active_kernel(Kernel k) {
    if (!kernel_supported(k)) throw std::runtime_error("kernel not supported on this CPU");
    active_slot() = k;
}

void evaluate(const Batch& b, double alpha, double beta, double gamma) {
    switch (active_slot()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Kernel::avx2: evaluate_avx2(b, alpha, beta, gamma); return;
#endif
        default: evaluate_scalar(b, alpha, beta, gamma); return;
    }
}

}  // namespace qbos::kernels
