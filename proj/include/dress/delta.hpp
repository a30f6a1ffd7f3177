#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dress/sha256.hpp"
#include "dress/solver.hpp"

namespace dress {

struct DeltaConfig {
    int k = 1;
    SolverConfig solver;
    bool retain_matrix = false;  // keep per-deletion rows (margin/audit work)
    int threads = 1;             // deletion subsets are independent solves
};

// One ascending-sorted row per deletion subset S (|S| = k), rows in
// lexicographic order of S.  Ragged: deletions may leave different numbers
// of edges behind.
struct MultisetMatrix {
    std::vector<std::vector<double>> rows;
};

// Fingerprint at deletion depth k: ascending-sorted flattening of all
// C(n, k) per-deletion fingerprints.
struct DeltaFingerprint {
    int k = 0;
    int n = 0;
    std::vector<double> values;              // globally sorted ascending
    std::vector<std::size_t> row_lengths;    // per subset, lexicographic order

    std::size_t total_length() const { return values.size(); }
    std::size_t num_rows() const { return row_lengths.size(); }
};

struct FingerprintDigests {
    Sha256::Digest histogram_sha256;
    Sha256::Digest multiset_sha256;

    bool operator==(const FingerprintDigests&) const = default;
};

struct DeltaResult {
    DeltaFingerprint fp;
    std::optional<MultisetMatrix> matrix;  // present iff cfg.retain_matrix
    FingerprintDigests digests;
    int max_iterations = 0;  // worst realized solver iteration count
};

DeltaResult delta_fingerprint(const Graph& g, const DeltaConfig& cfg = {});

// Values quantized to bins of width epsilon: bin(v) = floor(v / epsilon).
struct SparseHistogram {
    std::map<std::int64_t, std::uint64_t> entries;
    double epsilon = 1e-6;

    std::uint64_t total() const;
};

SparseHistogram histogram(const DeltaFingerprint& fp, double epsilon = 1e-6);

// Histogram digest: entries sorted by bin, each as 8-byte big-endian bin
// then 8-byte big-endian count.  Multiset digest: the sorted values as
// IEEE-754 binary64, big-endian.
FingerprintDigests digests(const DeltaFingerprint& fp, const SparseHistogram& hist);
FingerprintDigests digests(const DeltaFingerprint& fp, double epsilon = 1e-6);

enum class Verdict { Equal, Separated };

struct CompareResult {
    Verdict verdict;
    // Max-norm over aligned sorted values; absent when total lengths differ
    // (verdict Separated, distance undefined).
    std::optional<double> linf;
};

CompareResult compare(const DeltaFingerprint& a, const DeltaFingerprint& b,
                      double tau = 1e-5);

struct EscalateResult {
    bool separated = false;
    int final_k = 0;                       // first separating depth, or k_max
    CompareResult comparison;              // at final_k
    DeltaFingerprint fp_a, fp_b;           // at final_k
    std::vector<CompareResult> per_level;  // cfg.k .. final_k
};

// Compares at k = cfg.k, cfg.k+1, ... until Separated or k_max; the result
// carries the fingerprints of the last depth evaluated.
EscalateResult escalate(const Graph& a, const Graph& b, const DeltaConfig& cfg,
                        int k_max, double tau = 1e-5);

// Versioned binary container: k, n, row lengths, sorted values (binary64
// little-endian), both digests.  Layout documented in the README.
void write_fingerprint(const std::string& path, const DeltaFingerprint& fp,
                       const FingerprintDigests& dig);
struct StoredFingerprint {
    DeltaFingerprint fp;
    FingerprintDigests digests;
};
StoredFingerprint read_fingerprint(const std::string& path);

}  // namespace dress
