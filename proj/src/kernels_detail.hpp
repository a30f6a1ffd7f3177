#pragma once

#include <cmath>

#include "dress/kernels.hpp"

// Internal kernel entry points and the shared scalar inner loop.  The SIMD
// kernels run this exact loop over their tail edges, so every edge's sum is
// accumulated s += cur[a] + cur[b] in CSR order no matter which kernel runs.

namespace dress::detail {

double step_scalar_impl(const StepPlan&, const double* cur, const double* norms,
                        double* next);
double step_avx2_impl(const StepPlan&, const double* cur, const double* norms,
                      double* next);
double step_neon_impl(const StepPlan&, const double* cur, const double* norms,
                      double* next);

inline double scalar_edge_range(const StepPlan& plan, const double* cur,
                                const double* norms, double* next,
                                std::size_t begin, std::size_t end) {
    double residual = 0.0;
    for (std::size_t e = begin; e < end; ++e) {
        double s = 0.0;
        for (std::uint32_t i = plan.offsets[e]; i < plan.offsets[e + 1]; ++i)
            s += cur[plan.idx_a[i]] + cur[plan.idx_b[i]];
        double value = s / (norms[plan.end_u[e]] * norms[plan.end_v[e]]);
        next[e] = value;
        double diff = std::fabs(value - cur[e]);
        if (diff > residual) residual = diff;
    }
    return residual;
}

}  // namespace dress::detail
