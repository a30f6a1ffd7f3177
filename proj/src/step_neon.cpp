#include <arm_neon.h>

#include "kernels_detail.hpp"

namespace dress::detail {

// Two edges per iteration, one per lane; lane-local accumulation order
// matches the scalar loop and padding adds +0.0, so output is bit-identical
// to the scalar kernel.
double step_neon_impl(const StepPlan& plan, const double* cur,
                      const double* norms, double* next) {
    float64x2_t vmax = vdupq_n_f64(0.0);

    for (std::size_t grp = 0; grp < plan.num_groups; ++grp) {
        const std::size_t e0 = grp * 2;
        const std::uint64_t base = plan.group_offsets[grp];
        const std::uint64_t len = (plan.group_offsets[grp + 1] - base) / 2;

        float64x2_t sum = vdupq_n_f64(0.0);
        for (std::uint64_t j = 0; j < len; ++j) {
            const std::int32_t* pa = plan.lane_a.data() + base + j * 2;
            const std::int32_t* pb = plan.lane_b.data() + base + j * 2;
            float64x2_t va = vcombine_f64(vld1_f64(cur + pa[0]), vld1_f64(cur + pa[1]));
            float64x2_t vb = vcombine_f64(vld1_f64(cur + pb[0]), vld1_f64(cur + pb[1]));
            sum = vaddq_f64(sum, vaddq_f64(va, vb));
        }

        float64x2_t nu = vcombine_f64(vld1_f64(norms + plan.end_u[e0]),
                                      vld1_f64(norms + plan.end_u[e0 + 1]));
        float64x2_t nv = vcombine_f64(vld1_f64(norms + plan.end_v[e0]),
                                      vld1_f64(norms + plan.end_v[e0 + 1]));
        float64x2_t value = vdivq_f64(sum, vmulq_f64(nu, nv));
        vst1q_f64(next + e0, value);

        float64x2_t old = vld1q_f64(cur + e0);
        float64x2_t diff = vabsq_f64(vsubq_f64(value, old));
        vmax = vmaxq_f64(vmax, diff);
    }

    double residual = vmaxvq_f64(vmax);
    double tail = scalar_edge_range(plan, cur, norms, next,
                                    plan.num_groups * 2, plan.num_edges);
    return tail > residual ? tail : residual;
}

}  // namespace dress::detail
