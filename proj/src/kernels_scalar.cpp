#include "qbos/kernels.hpp"

#include "probs_point.hpp"

namespace qbos::kernels {

void evaluate_scalar(const Batch& b, double alpha, double beta, double gamma) {
    for (std::size_t i = 0; i < b.n; ++i) {
        const detail::ProbsPoint p =
            detail::probs_point(b.theta_a[i], b.phi_a[i], b.theta_b[i], b.phi_b[i], b.lambda[i]);
        if (b.p_oo) b.p_oo[i] = p.p_oo;
        if (b.p_ot) b.p_ot[i] = p.p_ot;
        if (b.p_to) b.p_to[i] = p.p_to;
        if (b.p_tt) b.p_tt[i] = p.p_tt;
        const double shared = gamma * (p.p_ot + p.p_to);
        if (b.payoff_a) b.payoff_a[i] = alpha * p.p_oo + shared + beta * p.p_tt;
        if (b.payoff_b) b.payoff_b[i] = beta * p.p_oo + shared + alpha * p.p_tt;
    }
}

}  // namespace qbos::kernels
