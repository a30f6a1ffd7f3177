#include <immintrin.h>

#include "kernels_detail.hpp"

namespace dress::detail {

// Four edges per iteration, one edge per lane.  Each lane accumulates its
// edge's contribution pairs in the same order as the scalar loop; padded
// pairs read the zero slot, adding +0.0.  No FMA anywhere — the scalar code
// is compiled with contraction off, and the two must agree bit for bit.
double step_avx2_impl(const StepPlan& plan, const double* cur,
                      const double* norms, double* next) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d vmax = _mm256_setzero_pd();

    for (std::size_t grp = 0; grp < plan.num_groups; ++grp) {
        const std::size_t e0 = grp * 4;
        const std::uint64_t base = plan.group_offsets[grp];
        const std::uint64_t len = (plan.group_offsets[grp + 1] - base) / 4;

        __m256d sum = _mm256_setzero_pd();
        for (std::uint64_t j = 0; j < len; ++j) {
            __m128i ia = _mm_loadu_si128(
                reinterpret_cast<const __m128i*>(plan.lane_a.data() + base + j * 4));
            __m128i ib = _mm_loadu_si128(
                reinterpret_cast<const __m128i*>(plan.lane_b.data() + base + j * 4));
            __m256d va = _mm256_i32gather_pd(cur, ia, 8);
            __m256d vb = _mm256_i32gather_pd(cur, ib, 8);
            sum = _mm256_add_pd(sum, _mm256_add_pd(va, vb));
        }

        __m128i iu = _mm_loadu_si128(
            reinterpret_cast<const __m128i*>(plan.end_u.data() + e0));
        __m128i iv = _mm_loadu_si128(
            reinterpret_cast<const __m128i*>(plan.end_v.data() + e0));
        __m256d nu = _mm256_i32gather_pd(norms, iu, 8);
        __m256d nv = _mm256_i32gather_pd(norms, iv, 8);
        __m256d value = _mm256_div_pd(sum, _mm256_mul_pd(nu, nv));
        _mm256_storeu_pd(next + e0, value);

        __m256d old = _mm256_loadu_pd(cur + e0);
        __m256d diff = _mm256_andnot_pd(sign_mask, _mm256_sub_pd(value, old));
        vmax = _mm256_max_pd(vmax, diff);
    }

    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vmax);
    double residual = lanes[0];
    for (int l = 1; l < 4; ++l)
        if (lanes[l] > residual) residual = lanes[l];

    double tail = scalar_edge_range(plan, cur, norms, next,
                                    plan.num_groups * 4, plan.num_edges);
    return tail > residual ? tail : residual;
}

}  // namespace dress::detail
