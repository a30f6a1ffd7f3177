#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "dress/graph.hpp"
#include "dress/kernels.hpp"

namespace dress {

struct SolverConfig {
    double tol = 1e-6;
    int max_iter = 100;
    double init = 1.0;
    const StepKernel* kernel = nullptr;  // nullptr: preferred_kernel()
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(std::string what, double residual, int iterations)
        : std::runtime_error(std::move(what)),
          residual(residual),
          iterations(iterations) {}
    double residual;
    int iterations;
};

// Converged per-edge values, including the synthetic self-loop slots.
struct EdgeValues {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // augmented, sorted, u <= v
    std::vector<double> values;              // same indexing
    int iterations = 0;
    double final_residual = 0.0;
};

EdgeValues dress_converge(const Graph& g, const SolverConfig& cfg = {});

// Sorted ascending values of the non-loop edges.
std::vector<double> extract_fingerprint(const EdgeValues& ev);

std::vector<double> dress_fingerprint(const Graph& g, const SolverConfig& cfg = {});

}  // namespace dress
