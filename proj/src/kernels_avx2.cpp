// AVX2 variant of the batch kernel. Compiled with -mavx2 -mfma; only called
// after the dispatcher has verified CPU support. Mirrors the scalar kernel
// operation-for-operation: sin/cos per lane via libm, everything after that
// as 4-wide vector arithmetic.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "qbos/kernels.hpp"

namespace qbos::kernels {

namespace {

struct TrigLanes {
    alignas(32) double ca[4], sa[4], cb[4], sb[4];
    alignas(32) double cpa[4], spa[4], cpb[4], spb[4];
    alignas(32) double csum[4], ssum[4], cl[4], sl[4];
};

inline void fill_trig(const Batch& b, std::size_t i, TrigLanes& t) {
    for (int l = 0; l < 4; ++l) {
        const std::size_t k = i + l;
        t.ca[l] = std::cos(0.5 * b.theta_a[k]);
        t.sa[l] = std::sin(0.5 * b.theta_a[k]);
        t.cb[l] = std::cos(0.5 * b.theta_b[k]);
        t.sb[l] = std::sin(0.5 * b.theta_b[k]);
        t.cpa[l] = std::cos(b.phi_a[k]);
        t.spa[l] = std::sin(b.phi_a[k]);
        t.cpb[l] = std::cos(b.phi_b[k]);
        t.spb[l] = std::sin(b.phi_b[k]);
        t.csum[l] = std::cos(b.phi_a[k] + b.phi_b[k]);
        t.ssum[l] = std::sin(b.phi_a[k] + b.phi_b[k]);
        t.cl[l] = std::cos(b.lambda[k]);
        t.sl[l] = std::sin(b.lambda[k]);
    }
}

}  // namespace

void evaluate_avx2(const Batch& b, double alpha, double beta, double gamma) {
    const __m256d valpha = _mm256_set1_pd(alpha);
    const __m256d vbeta = _mm256_set1_pd(beta);
    const __m256d vgamma = _mm256_set1_pd(gamma);
    const __m256d vhalf = _mm256_set1_pd(0.5);
    const __m256d vtwo = _mm256_set1_pd(2.0);

    std::size_t i = 0;
    TrigLanes t;
    for (; i + 4 <= b.n; i += 4) {
        fill_trig(b, i, t);
        const __m256d ca = _mm256_load_pd(t.ca);
        const __m256d sa = _mm256_load_pd(t.sa);
        const __m256d cb = _mm256_load_pd(t.cb);
        const __m256d sb = _mm256_load_pd(t.sb);
        const __m256d cpa = _mm256_load_pd(t.cpa);
        const __m256d spa = _mm256_load_pd(t.spa);
        const __m256d cpb = _mm256_load_pd(t.cpb);
        const __m256d spb = _mm256_load_pd(t.spb);
        const __m256d csum = _mm256_load_pd(t.csum);
        const __m256d ssum = _mm256_load_pd(t.ssum);
        const __m256d cl = _mm256_load_pd(t.cl);
        const __m256d sl = _mm256_load_pd(t.sl);

        const __m256d cl2 = _mm256_mul_pd(cl, cl);
        const __m256d ca2 = _mm256_mul_pd(ca, ca);
        const __m256d sa2 = _mm256_mul_pd(sa, sa);
        const __m256d cb2 = _mm256_mul_pd(cb, cb);
        const __m256d sb2 = _mm256_mul_pd(sb, sb);
        const __m256d sin_ta = _mm256_mul_pd(vtwo, _mm256_mul_pd(sa, ca));
        const __m256d sin_tb = _mm256_mul_pd(vtwo, _mm256_mul_pd(sb, cb));

        // p_oo = (csum^2 + ssum^2 cl^2) ca^2 cb^2
        __m256d acc = _mm256_mul_pd(_mm256_mul_pd(ssum, ssum), cl2);
        acc = _mm256_fmadd_pd(csum, csum, acc);
        const __m256d p_oo = _mm256_mul_pd(acc, _mm256_mul_pd(ca2, cb2));

        // p_ot = (cpa^2 + spa^2 cl^2) ca^2 sb^2 - 0.5 cpa spb sin_ta sin_tb sl + (spb sa cb sl)^2
        acc = _mm256_mul_pd(_mm256_mul_pd(spa, spa), cl2);
        acc = _mm256_fmadd_pd(cpa, cpa, acc);
        const __m256d first_ot = _mm256_mul_pd(acc, _mm256_mul_pd(ca2, sb2));
        const __m256d cross_ot = _mm256_mul_pd(
            vhalf, _mm256_mul_pd(_mm256_mul_pd(cpa, spb), _mm256_mul_pd(_mm256_mul_pd(sin_ta, sin_tb), sl)));
        const __m256d last_ot = _mm256_mul_pd(_mm256_mul_pd(spb, sa), _mm256_mul_pd(cb, sl));
        const __m256d p_ot = _mm256_fmadd_pd(last_ot, last_ot, _mm256_sub_pd(first_ot, cross_ot));

        // p_to: mirror with players swapped
        acc = _mm256_mul_pd(_mm256_mul_pd(spb, spb), cl2);
        acc = _mm256_fmadd_pd(cpb, cpb, acc);
        const __m256d first_to = _mm256_mul_pd(acc, _mm256_mul_pd(sa2, cb2));
        const __m256d cross_to = _mm256_mul_pd(
            vhalf, _mm256_mul_pd(_mm256_mul_pd(cpb, spa), _mm256_mul_pd(_mm256_mul_pd(sin_ta, sin_tb), sl)));
        const __m256d last_to = _mm256_mul_pd(_mm256_mul_pd(spa, ca), _mm256_mul_pd(sb, sl));
        const __m256d p_to = _mm256_fmadd_pd(last_to, last_to, _mm256_sub_pd(first_to, cross_to));

        // p_tt = (sa sb + ssum ca cb sl)^2
        const __m256d amp =
            _mm256_fmadd_pd(_mm256_mul_pd(ssum, sl), _mm256_mul_pd(ca, cb), _mm256_mul_pd(sa, sb));
        const __m256d p_tt = _mm256_mul_pd(amp, amp);

        if (b.p_oo) _mm256_storeu_pd(b.p_oo + i, p_oo);
        if (b.p_ot) _mm256_storeu_pd(b.p_ot + i, p_ot);
        if (b.p_to) _mm256_storeu_pd(b.p_to + i, p_to);
        if (b.p_tt) _mm256_storeu_pd(b.p_tt + i, p_tt);

        if (b.payoff_a || b.payoff_b) {
            const __m256d shared = _mm256_mul_pd(vgamma, _mm256_add_pd(p_ot, p_to));
            if (b.payoff_a) {
                __m256d pay = _mm256_fmadd_pd(valpha, p_oo, shared);
                pay = _mm256_fmadd_pd(vbeta, p_tt, pay);
                _mm256_storeu_pd(b.payoff_a + i, pay);
            }
            if (b.payoff_b) {
                __m256d pay = _mm256_fmadd_pd(vbeta, p_oo, shared);
                pay = _mm256_fmadd_pd(valpha, p_tt, pay);
                _mm256_storeu_pd(b.payoff_b + i, pay);
            }
        }
    }

    if (i < b.n) {
        Batch tail = b;
        tail.theta_a += i;
        tail.phi_a += i;
        tail.theta_b += i;
        tail.phi_b += i;
        tail.lambda += i;
        if (tail.p_oo) tail.p_oo += i;
        if (tail.p_ot) tail.p_ot += i;
        if (tail.p_to) tail.p_to += i;
        if (tail.p_tt) tail.p_tt += i;
        if (tail.payoff_a) tail.payoff_a += i;
        if (tail.payoff_b) tail.payoff_b += i;
        tail.n = b.n - i;
        evaluate_scalar(tail, alpha, beta, gamma);
    }
}

}  // namespace qbos::kernels

#endif  // x86_64
