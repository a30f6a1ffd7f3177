#include "kernels_detail.hpp"

namespace dress::detail {

double step_scalar_impl(const StepPlan& plan, const double* cur,
                        const double* norms, double* next) {
    return scalar_edge_range(plan, cur, norms, next, 0, plan.num_edges);
}

}  // namespace dress::detail
