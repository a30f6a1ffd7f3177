#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dress/graph.hpp"

namespace dress {

// Precomputed iteration structure for one graph.  The edge list is the
// original graph's edges augmented with one self-loop per vertex, sorted as
// (u, v) pairs with u <= v; values arrays are indexed the same way and carry
// one extra zero slot at index num_edges so vector lanes can consume padding
// without changing any sum.
//
// For every edge e the CSR contribution list enumerates, in ascending order
// of the common neighbor x, the pairs of edge slots (ux, xv) whose values
// are added.  The interleaved arrays regroup the same pairs for fixed-width
// vector kernels: edges are taken `simd_lanes` at a time, and iteration j of
// group g reads lane_a/lane_b at [group_offsets[g] + j*simd_lanes + l];
// shorter lists are padded with the zero slot.  Only full groups are
// interleaved — the tail runs through the scalar path.
struct StepPlan {
    int n = 0;
    std::size_t num_edges = 0;  // augmented: |E| + n
    std::vector<std::pair<int, int>> edges;

    std::vector<std::uint32_t> offsets;  // CSR, size num_edges + 1
    std::vector<std::uint32_t> idx_a;
    std::vector<std::uint32_t> idx_b;

    std::vector<std::int32_t> end_u;  // endpoint vertices per edge
    std::vector<std::int32_t> end_v;

    // Per-vertex incident slots (ascending), for the norm sums.
    std::vector<std::uint32_t> norm_offsets;  // size n + 1
    std::vector<std::uint32_t> norm_idx;

    int simd_lanes = 0;  // 0 when no vector kernel is compiled in
    std::size_t num_groups = 0;
    std::vector<std::uint64_t> group_offsets;  // size num_groups + 1
    std::vector<std::int32_t> lane_a;
    std::vector<std::int32_t> lane_b;
};

StepPlan build_step_plan(const Graph& g);

// norms[u] = sqrt(sum of cur over u's incident slots, ascending).  Shared by
// all kernels so the divisor bits are identical everywhere.
void compute_norms(const StepPlan& plan, const double* cur, double* norms);

// One synchronous update: reads cur[0..num_edges] (slot num_edges is the
// zero pad), writes next[0..num_edges), returns the max-norm residual.
// Every kernel must produce bitwise-identical next[] and residual: each
// edge's sum is accumulated in CSR order within one lane, and padding adds
// +0.0 only.
using StepFn = double (*)(const StepPlan&, const double* cur,
                          const double* norms, double* next);

struct StepKernel {
    const char* name;
    int lanes;
    StepFn step;
};

const StepKernel& scalar_kernel();

// Best kernel this CPU supports; scalar when nothing better is available.
const StepKernel& preferred_kernel();

// nullptr when unknown or unsupported on this CPU.
const StepKernel* kernel_by_name(const std::string& name);

std::vector<const StepKernel*> available_kernels();

}  // namespace dress
