// Batched evaluation of closed-form outcome probabilities and payoffs.
//
// The payoff sweeps, best-response grid scans and threshold searches all
// reduce to evaluating the same trigonometric expressions over large arrays
// of angles. A scalar reference kernel and an AVX2 variant are provided and
// selected at runtime; both must agree to near machine precision (the tests
// enforce this). Trig calls go through libm in both variants; the SIMD
// kernel vectorizes the arithmetic that follows.

#pragma once

#include <cstddef>

namespace qbos::kernels {

// Structure-of-arrays batch. Input pointers must all be non-null with n
// entries. Output pointers may individually be null when a caller does not
// need that column.
struct Batch {
    const double* theta_a = nullptr;
    const double* phi_a = nullptr;
    const double* theta_b = nullptr;
    const double* phi_b = nullptr;
    const double* lambda = nullptr;
    double* p_oo = nullptr;
    double* p_ot = nullptr;
    double* p_to = nullptr;
    double* p_tt = nullptr;
    double* payoff_a = nullptr;
    double* payoff_b = nullptr;
    std::size_t n = 0;
};

enum class Kernel { scalar, avx2 };

const char* kernel_name(Kernel k);
bool kernel_supported(Kernel k);

// The runtime-selected kernel. Defaults to the widest supported variant;
// the QBOS_KERNEL environment variable (scalar|avx2) overrides.
Kernel active_kernel();
void set_active_kernel(Kernel k);  // throws if unsupported on this CPU

// Evaluate through the active kernel.
void evaluate(const Batch& b, double alpha, double beta, double gamma);

// Specific variants (for equivalence tests and benchmarking).
void evaluate_scalar(const Batch& b, double alpha, double beta, double gamma);
#if defined(__x86_64__) || defined(_M_X64)
void evaluate_avx2(const Batch& b, double alpha, double beta, double gamma);
#endif

}  // namespace qbos::kernels
