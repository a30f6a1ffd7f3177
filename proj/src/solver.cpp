#include "dress/solver.hpp"

#include <algorithm>
#include <string>

namespace dress {

EdgeValues dress_converge(const Graph& g, const SolverConfig& cfg) {
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (cfg.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    if (!(cfg.init > 0.0)) throw std::invalid_argument("init must be positive");
    const StepKernel& kernel = cfg.kernel ? *cfg.kernel : preferred_kernel();

    StepPlan plan = build_step_plan(g);
    const std::size_t m = plan.num_edges;

    EdgeValues ev;
    ev.n = plan.n;
    ev.edges = plan.edges;
    if (m == 0) return ev;  // empty graph: nothing to iterate

    // one zero pad slot past the end for vector lanes
    std::vector<double> cur(m + 1, cfg.init), next(m + 1, 0.0);
    cur[m] = 0.0;
    std::vector<double> norms(plan.n);

    double residual = 0.0;
    for (int t = 1; t <= cfg.max_iter; ++t) {
        compute_norms(plan, cur.data(), norms.data());
        residual = kernel.step(plan, cur.data(), norms.data(), next.data());
        cur.swap(next);
        if (residual < cfg.tol) {
            ev.values.assign(cur.begin(), cur.begin() + m);
            ev.iterations = t;
            ev.final_residual = residual;
            return ev;
        }
    }
    throw ConvergenceError("no convergence after " + std::to_string(cfg.max_iter) +
                               " iterations (residual " + std::to_string(residual) + ")",
                           residual, cfg.max_iter);
}

std::vector<double> extract_fingerprint(const EdgeValues& ev) {
    std::vector<double> fp;
    fp.reserve(ev.values.size());
    for (std::size_t i = 0; i < ev.edges.size(); ++i)
        if (ev.edges[i].first != ev.edges[i].second) fp.push_back(ev.values[i]);
    std::sort(fp.begin(), fp.end());
    return fp;
}

std::vector<double> dress_fingerprint(const Graph& g, const SolverConfig& cfg) {
    return extract_fingerprint(dress_converge(g, cfg));
}

}  // namespace dress
