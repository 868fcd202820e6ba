// Single-point closed-form evaluation of the four outcome probabilities at
// general entanglement lambda. Shared by the scalar protocol route and the
// batch kernels so there is exactly one transcription of the formulas.

#pragma once

#include <cmath>

namespace qbos::detail {

struct ProbsPoint {
    double p_oo, p_ot, p_to, p_tt;
};

inline ProbsPoint probs_point(double theta_a, double phi_a, double theta_b, double phi_b, double lambda) {
    const double ca = std::cos(0.5 * theta_a);
    const double sa = std::sin(0.5 * theta_a);
    const double cb = std::cos(0.5 * theta_b);
    const double sb = std::sin(0.5 * theta_b);
    const double cpa = std::cos(phi_a);
    const double spa = std::sin(phi_a);
    const double cpb = std::cos(phi_b);
    const double spb = std::sin(phi_b);
    const double csum = std::cos(phi_a + phi_b);
    const double ssum = std::sin(phi_a + phi_b);
    const double cl = std::cos(lambda);
    const double sl = std::sin(lambda);

    const double sin_ta = 2.0 * sa * ca;
    const double sin_tb = 2.0 * sb * cb;

    ProbsPoint p;
    p.p_oo = (csum * csum + ssum * ssum * cl * cl) * ca * ca * cb * cb;
    {
        const double first = (cpa * cpa + spa * spa * cl * cl) * ca * ca * sb * sb;
        const double cross = 0.5 * cpa * spb * sin_ta * sin_tb * sl;
        const double last = spb * sa * cb * sl;
        p.p_ot = first - cross + last * last;
    }
    {
        const double first = (cpb * cpb + spb * spb * cl * cl) * sa * sa * cb * cb;
        const double cross = 0.5 * cpb * spa * sin_ta * sin_tb * sl;
        const double last = spa * ca * sb * sl;
        p.p_to = first - cross + last * last;
    }
    {
        const double amp = sa * sb + ssum * ca * cb * sl;
        p.p_tt = amp * amp;
    }
    return p;
}

}  // namespace qbos::detail
