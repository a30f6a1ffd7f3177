#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dress/delta.hpp"
#include "dress/graph.hpp"

namespace dress {

// Within-family collision scan.  Graphs are grouped by multiset digest;
// candidate pairs are confirmed with the tolerance comparison, and small
// families get a full all-pairs audit so tolerance-equal pairs with
// different digests cannot slip through.  Confirmed collision groups are
// escalated to higher deletion depth.
struct CollisionGroup {
    std::vector<std::size_t> members;  // 1-based graph indices, file order
    std::optional<int> resolved_at_k;  // separating depth; nullopt = exhausted
};

struct FamilyReport {
    std::string family;
    int k = 0;
    std::size_t num_graphs = 0;
    std::size_t num_unique = 0;
    std::size_t pairs = 0;  // C(num_graphs, 2)
    std::vector<CollisionGroup> collisions;
    int max_iterations = 0;  // worst solver iteration count in the scan
    double elapsed_seconds = 0.0;
};

struct ScanOptions {
    int k = 1;
    int escalate_to = 0;  // > k enables escalation of collision groups
    double tau = 1e-5;
    std::size_t full_audit_limit = 500;  // all-pairs compare below this
    SolverConfig solver;
    int threads = 1;
};

FamilyReport scan_family(const std::vector<Graph>& graphs,
                         const std::string& family_name,
                         const ScanOptions& opt = {});

// Minimum pairwise max-norm distance at a fixed depth.  Exact over all
// pairs for small families; above the threshold, pairs are sampled without
// replacement from a seeded generator (an upper bound on the true minimum).
// Pairs with unequal flattened lengths carry no distance and are skipped;
// known collision pairs can be excluded explicitly.
struct MarginOptions {
    int k = 1;
    std::size_t sample_threshold = 200;  // graphs
    std::size_t sample_pairs = 2000;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::size_t, std::size_t>> exclude;  // 1-based
    SolverConfig solver;
    int threads = 1;
};

struct MarginReport {
    std::string family;
    int k = 0;
    std::size_t num_graphs = 0;
    double min_linf = 0.0;
    double ratio = 0.0;  // min_linf / solver tol
    bool sampled = false;
    std::size_t sample_pairs = 0;  // when sampled
    std::uint64_t seed = 0;        // when sampled
    std::size_t pairs_measured = 0;
    std::size_t pairs_skipped_length = 0;
    std::size_t pairs_excluded = 0;
    std::optional<std::pair<std::size_t, std::size_t>> argmin;  // 1-based
    double elapsed_seconds = 0.0;
};

MarginReport margin_analysis(const std::vector<Graph>& graphs,
                             const std::string& family_name,
                             const MarginOptions& opt = {});

// Unique-fingerprint counts after rounding every value to d decimal digits
// (half away from zero), d sweeping an inclusive range.
struct RoundingReport {
    std::string family;
    int k = 0;
    std::size_t num_graphs = 0;
    std::size_t unique_unrounded = 0;
    std::vector<std::pair<int, std::size_t>> unique_per_digit;  // (d, count)
};

struct RoundingOptions {
    int k = 1;
    int min_digits = 6;
    int max_digits = 14;
    SolverConfig solver;
    int threads = 1;
};

RoundingReport rounding_stability(const std::vector<Graph>& graphs,
                                  const std::string& family_name,
                                  const RoundingOptions& opt = {});

enum class ReportFormat { Json, Csv };

std::string emit_report(const FamilyReport& r, ReportFormat fmt);
std::string emit_report(const MarginReport& r, ReportFormat fmt);
std::string emit_report(const RoundingReport& r, ReportFormat fmt);

}  // namespace dress
