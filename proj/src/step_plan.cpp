#include <algorithm>

#include "dress/kernels.hpp"
#include "kernels_detail.hpp"

namespace dress {

StepPlan build_step_plan(const Graph& g) {
    StepPlan plan;
    plan.n = g.num_vertices();

    // closed neighborhoods, ascending
    std::vector<std::vector<int>> closed(plan.n);
    for (int u = 0; u < plan.n; ++u) closed[u].push_back(u);
    for (auto [u, v] : g.edges()) {
        closed[u].push_back(v);
        closed[v].push_back(u);
    }
    for (auto& nb : closed) std::sort(nb.begin(), nb.end());

    // augmented edge list: loops plus original edges, sorted (u, v), u <= v
    plan.edges.reserve(plan.n + g.num_edges());
    for (int u = 0; u < plan.n; ++u) plan.edges.emplace_back(u, u);
    plan.edges.insert(plan.edges.end(), g.edges().begin(), g.edges().end());
    std::sort(plan.edges.begin(), plan.edges.end());
    plan.num_edges = plan.edges.size();

    auto slot = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        auto it = std::lower_bound(plan.edges.begin(), plan.edges.end(),
                                   std::make_pair(a, b));
        return std::uint32_t(it - plan.edges.begin());
    };

    plan.end_u.resize(plan.num_edges);
    plan.end_v.resize(plan.num_edges);
    plan.offsets.resize(plan.num_edges + 1, 0);

    for (std::size_t e = 0; e < plan.num_edges; ++e) {
        auto [u, v] = plan.edges[e];
        plan.end_u[e] = u;
        plan.end_v[e] = v;
        // common closed neighbors, ascending x; both input lists are sorted
        const auto& nu = closed[u];
        const auto& nv = closed[v];
        std::size_t i = 0, j = 0;
        while (i < nu.size() && j < nv.size()) {
            if (nu[i] < nv[j]) ++i;
            else if (nu[i] > nv[j]) ++j;
            else {
                int x = nu[i];
                plan.idx_a.push_back(slot(u, x));
                plan.idx_b.push_back(slot(x, v));
                ++i;
                ++j;
            }
        }
        plan.offsets[e + 1] = std::uint32_t(plan.idx_a.size());
    }

    plan.norm_offsets.resize(plan.n + 1, 0);
    for (int u = 0; u < plan.n; ++u) {
        for (int x : closed[u]) plan.norm_idx.push_back(slot(u, x));
        plan.norm_offsets[u + 1] = std::uint32_t(plan.norm_idx.size());
    }

    // interleaved groups for the platform's vector width
    int lanes = preferred_kernel().lanes;
    if (lanes > 1) {
        plan.simd_lanes = lanes;
        plan.num_groups = plan.num_edges / lanes;
        plan.group_offsets.reserve(plan.num_groups + 1);
        plan.group_offsets.push_back(0);
        const std::int32_t pad = std::int32_t(plan.num_edges);  // zero slot
        for (std::size_t grp = 0; grp < plan.num_groups; ++grp) {
            std::size_t e0 = grp * lanes;
            std::uint32_t len = 0;
            for (int l = 0; l < lanes; ++l)
                len = std::max(len, plan.offsets[e0 + l + 1] - plan.offsets[e0 + l]);
            for (std::uint32_t j = 0; j < len; ++j)
                for (int l = 0; l < lanes; ++l) {
                    std::uint32_t base = plan.offsets[e0 + l];
                    if (j < plan.offsets[e0 + l + 1] - base) {
                        plan.lane_a.push_back(std::int32_t(plan.idx_a[base + j]));
                        plan.lane_b.push_back(std::int32_t(plan.idx_b[base + j]));
                    } else {
                        plan.lane_a.push_back(pad);
                        plan.lane_b.push_back(pad);
                    }
                }
            plan.group_offsets.push_back(plan.lane_a.size());
        }
    }
    return plan;
}

void compute_norms(const StepPlan& plan, const double* cur, double* norms) {
    for (int u = 0; u < plan.n; ++u) {
        double s = 0.0;
        for (std::uint32_t i = plan.norm_offsets[u]; i < plan.norm_offsets[u + 1]; ++i)
            s += cur[plan.norm_idx[i]];
        norms[u] = std::sqrt(s);
    }
}

}  // namespace dress
