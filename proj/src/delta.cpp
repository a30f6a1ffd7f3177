#include "dress/delta.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "combinations.hpp"

namespace dress {

namespace {

std::string subset_label(const std::vector<int>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

void append_be64(std::vector<std::uint8_t>& buf, std::uint64_t v) {
    for (int i = 7; i >= 0; --i) buf.push_back(std::uint8_t(v >> (8 * i)));
}

}  // namespace

std::uint64_t SparseHistogram::total() const {
    std::uint64_t t = 0;
    for (const auto& [bin, count] : entries) t += count;
    return t;
}

DeltaResult delta_fingerprint(const Graph& g, const DeltaConfig& cfg) {
    if (cfg.k < 0 || cfg.k > g.num_vertices())
        throw std::invalid_argument("deletion depth k must satisfy 0 <= k <= n");
    if (cfg.threads < 1) throw std::invalid_argument("threads must be >= 1");

    const auto subsets = detail::lex_subsets(g.num_vertices(), cfg.k);
    std::vector<std::vector<double>> rows(subsets.size());
    std::vector<int> iters(subsets.size(), 0);

    auto solve_one = [&](std::size_t i) {
        Graph sub = induced_delete(g, subsets[i]);
        try {
            EdgeValues ev = dress_converge(sub, cfg.solver);
            rows[i] = extract_fingerprint(ev);
            iters[i] = ev.iterations;
        } catch (const ConvergenceError& e) {
            throw ConvergenceError("deletion subset " + subset_label(subsets[i]) +
                                       ": " + e.what(),
                                   e.residual, e.iterations);
        }
    };

    int workers = int(std::min<std::size_t>(cfg.threads, subsets.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < subsets.size(); ++i) solve_one(i);
    } else {
        std::atomic<std::size_t> cursor{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = cursor.fetch_add(1);
                    if (i >= subsets.size()) return;
                    try {
                        solve_one(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!first_error) first_error = std::current_exception();
                        return;
                    }
                }
            });
        for (auto& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    DeltaResult res;
    res.fp.k = cfg.k;
    res.fp.n = g.num_vertices();
    res.fp.row_lengths.reserve(rows.size());
    std::size_t total = 0;
    for (const auto& row : rows) {
        res.fp.row_lengths.push_back(row.size());
        total += row.size();
    }
    res.fp.values.reserve(total);
    for (const auto& row : rows)
        res.fp.values.insert(res.fp.values.end(), row.begin(), row.end());
    std::sort(res.fp.values.begin(), res.fp.values.end());
    res.max_iterations = iters.empty() ? 0 : *std::max_element(iters.begin(), iters.end());
    res.digests = digests(res.fp, cfg.solver.tol);
    if (cfg.retain_matrix) res.matrix = MultisetMatrix{std::move(rows)};
    return res;
}

SparseHistogram histogram(const DeltaFingerprint& fp, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    SparseHistogram h;
    h.epsilon = epsilon;
    for (double v : fp.values) ++h.entries[std::int64_t(std::floor(v / epsilon))];
    return h;
}

FingerprintDigests digests(const DeltaFingerprint& fp, const SparseHistogram& hist) {
    FingerprintDigests d;

    std::vector<std::uint8_t> hbuf;
    hbuf.reserve(hist.entries.size() * 16);
    for (const auto& [bin, count] : hist.entries) {  // map iterates by bin
        append_be64(hbuf, std::uint64_t(bin));
        append_be64(hbuf, count);
    }
    d.histogram_sha256 = Sha256::of(hbuf.data(), hbuf.size());

    std::vector<std::uint8_t> mbuf;
    mbuf.reserve(fp.values.size() * 8);
    for (double v : fp.values) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, 8);
        append_be64(mbuf, bits);
    }
    d.multiset_sha256 = Sha256::of(mbuf.data(), mbuf.size());
    return d;
}

FingerprintDigests digests(const DeltaFingerprint& fp, double epsilon) {
    return digests(fp, histogram(fp, epsilon));
}

CompareResult compare(const DeltaFingerprint& a, const DeltaFingerprint& b,
                      double tau) {
    if (a.values.size() != b.values.size())
        return {Verdict::Separated, std::nullopt};
    double linf = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        linf = std::max(linf, std::fabs(a.values[i] - b.values[i]));
    return {linf > tau ? Verdict::Separated : Verdict::Equal, linf};
}

EscalateResult escalate(const Graph& a, const Graph& b, const DeltaConfig& cfg,
                        int k_max, double tau) {
    if (k_max < cfg.k) throw std::invalid_argument("k_max must be >= starting k");
    EscalateResult res;
    DeltaConfig level = cfg;
    for (int k = cfg.k; k <= k_max; ++k) {
        level.k = k;
        DeltaResult ra = delta_fingerprint(a, level);
        DeltaResult rb = delta_fingerprint(b, level);
        CompareResult cmp = compare(ra.fp, rb.fp, tau);
        res.per_level.push_back(cmp);
        res.final_k = k;
        res.comparison = cmp;
        res.fp_a = std::move(ra.fp);
        res.fp_b = std::move(rb.fp);
        if (cmp.verdict == Verdict::Separated) {
            res.separated = true;
            break;
        }
    }
    return res;
}

namespace {

constexpr char kMagic[8] = {'D', 'R', 'E', 'S', 'S', 'F', 'P', '1'};

template <typename T>
void put_le(std::ostream& out, T v) {
    std::uint8_t buf[sizeof(T)];
    std::uint64_t bits;
    if constexpr (sizeof(T) == 8 && std::is_floating_point_v<T>) {
        std::memcpy(&bits, &v, 8);
    } else {
        bits = std::uint64_t(v);
    }
    for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = std::uint8_t(bits >> (8 * i));
    out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

std::uint64_t get_le64(std::istream& in) {
    std::uint8_t buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
    return v;
}

}  // namespace

void write_fingerprint(const std::string& path, const DeltaFingerprint& fp,
                       const FingerprintDigests& dig) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(kMagic, 8);
    put_le(out, std::uint64_t(fp.k));
    put_le(out, std::uint64_t(fp.n));
    put_le(out, std::uint64_t(fp.row_lengths.size()));
    put_le(out, std::uint64_t(fp.values.size()));
    for (std::size_t len : fp.row_lengths) put_le(out, std::uint64_t(len));
    for (double v : fp.values) put_le(out, v);
    out.write(reinterpret_cast<const char*>(dig.histogram_sha256.data()), 32);
    out.write(reinterpret_cast<const char*>(dig.multiset_sha256.data()), 32);
    if (!out) throw std::runtime_error("write failure on " + path);
}

StoredFingerprint read_fingerprint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0)
        throw std::runtime_error(path + ": not a fingerprint container");
    StoredFingerprint sf;
    sf.fp.k = int(get_le64(in));
    sf.fp.n = int(get_le64(in));
    std::uint64_t nrows = get_le64(in);
    std::uint64_t nvals = get_le64(in);
    sf.fp.row_lengths.resize(nrows);
    for (auto& len : sf.fp.row_lengths) len = std::size_t(get_le64(in));
    sf.fp.values.resize(nvals);
    for (auto& v : sf.fp.values) {
        std::uint64_t bits = get_le64(in);
        std::memcpy(&v, &bits, 8);
    }
    in.read(reinterpret_cast<char*>(sf.digests.histogram_sha256.data()), 32);
    in.read(reinterpret_cast<char*>(sf.digests.multiset_sha256.data()), 32);
    if (!in) throw std::runtime_error(path + ": truncated fingerprint container");
    return sf;
}

}  // namespace dress
