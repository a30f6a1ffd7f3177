#include "dress/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace dress {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn fn) {
    std::size_t nt = std::size_t(std::max(1, threads));
    if (nt > count) nt = count;
    if (nt <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        for (;;) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
                cursor.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

// union by minimum member, so each class root is its smallest index
struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t(0));
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent[b] = a;
    }
};

// p-th pair (i, j), i < j, in row-major order over C(n, 2)
std::pair<std::size_t, std::size_t> pair_from_index(std::size_t p, std::size_t n) {
    std::size_t i = 0;
    while (p >= n - 1 - i) {
        p -= n - 1 - i;
        ++i;
    }
    return {i, i + 1 + p};
}

std::string sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(6) << v;
    return os.str();
}

}  // namespace

FamilyReport scan_family(const std::vector<Graph>& graphs,
                         const std::string& family_name, const ScanOptions& opt) {
    auto t0 = Clock::now();
    FamilyReport rep;
    rep.family = family_name;
    rep.k = opt.k;
    rep.num_graphs = graphs.size();
    rep.pairs = graphs.size() < 2 ? 0 : graphs.size() * (graphs.size() - 1) / 2;

    DeltaConfig cfg;
    cfg.k = opt.k;
    cfg.solver = opt.solver;
    cfg.threads = 1;  // parallelism is across graphs here
    std::vector<DeltaResult> res(graphs.size());
    parallel_for(graphs.size(), opt.threads,
                 [&](std::size_t i) { res[i] = delta_fingerprint(graphs[i], cfg); });
    for (const auto& r : res) rep.max_iterations = std::max(rep.max_iterations, r.max_iterations);

    UnionFind uf(graphs.size());
    std::map<Sha256::Digest, std::vector<std::size_t>> by_digest;
    for (std::size_t i = 0; i < graphs.size(); ++i)
        by_digest[res[i].digests.multiset_sha256].push_back(i);
    for (const auto& [dig, members] : by_digest) {
        (void)dig;
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b)
                if (compare(res[members[a]].fp, res[members[b]].fp, opt.tau).verdict ==
                    Verdict::Equal)
                    uf.unite(members[a], members[b]);
    }
    if (graphs.size() <= opt.full_audit_limit) {
        // digests bin at fixed epsilon; the audit catches tolerance-equal
        // pairs whose values straddle a bin boundary
        for (std::size_t i = 0; i < graphs.size(); ++i)
            for (std::size_t j = i + 1; j < graphs.size(); ++j)
                if (uf.find(i) != uf.find(j) &&
                    compare(res[i].fp, res[j].fp, opt.tau).verdict == Verdict::Equal)
                    uf.unite(i, j);
    }

    std::map<std::size_t, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < graphs.size(); ++i) classes[uf.find(i)].push_back(i);
    rep.num_unique = classes.size();
    for (const auto& [root, members] : classes) {
        (void)root;
        if (members.size() < 2) continue;
        CollisionGroup grp;
        for (std::size_t i : members) grp.members.push_back(i + 1);
        rep.collisions.push_back(std::move(grp));
    }

    if (opt.escalate_to > opt.k) {
        for (auto& grp : rep.collisions) {
            for (int kk = opt.k + 1; kk <= opt.escalate_to && !grp.resolved_at_k; ++kk) {
                DeltaConfig deep = cfg;
                deep.k = kk;
                std::vector<DeltaResult> sub(grp.members.size());
                parallel_for(grp.members.size(), opt.threads, [&](std::size_t i) {
                    sub[i] = delta_fingerprint(graphs[grp.members[i] - 1], deep);
                });
                for (const auto& r : sub)
                    rep.max_iterations = std::max(rep.max_iterations, r.max_iterations);
                bool all_split = true;
                for (std::size_t a = 0; a < sub.size() && all_split; ++a)
                    for (std::size_t b = a + 1; b < sub.size() && all_split; ++b)
                        if (compare(sub[a].fp, sub[b].fp, opt.tau).verdict == Verdict::Equal)
                            all_split = false;
                if (all_split) grp.resolved_at_k = kk;
            }
        }
    }

    rep.elapsed_seconds = seconds_since(t0);
    return rep;
}

MarginReport margin_analysis(const std::vector<Graph>& graphs,
                             const std::string& family_name, const MarginOptions& opt) {
    auto t0 = Clock::now();
    MarginReport rep;
    rep.family = family_name;
    rep.k = opt.k;
    rep.num_graphs = graphs.size();
    rep.seed = opt.seed;

    DeltaConfig cfg;
    cfg.k = opt.k;
    cfg.solver = opt.solver;
    cfg.threads = 1;
    std::vector<DeltaFingerprint> fps(graphs.size());
    parallel_for(graphs.size(), opt.threads,
                 [&](std::size_t i) { fps[i] = delta_fingerprint(graphs[i], cfg).fp; });

    std::set<std::pair<std::size_t, std::size_t>> excluded;
    for (auto [a, b] : opt.exclude) {
        if (a > b) std::swap(a, b);
        excluded.insert({a, b});
    }

    const std::size_t n = graphs.size();
    const std::size_t total_pairs = n < 2 ? 0 : n * (n - 1) / 2;
    std::vector<std::pair<std::size_t, std::size_t>> candidates;
    if (n <= opt.sample_threshold || opt.sample_pairs >= total_pairs) {
        candidates.reserve(total_pairs);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) candidates.push_back({i, j});
    } else {
        rep.sampled = true;
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<std::size_t> dist(0, total_pairs - 1);
        std::set<std::size_t> seen;
        while (seen.size() < opt.sample_pairs) seen.insert(dist(rng));
        for (std::size_t p : seen) candidates.push_back(pair_from_index(p, n));
        rep.sample_pairs = candidates.size();
    }

    double best = std::numeric_limits<double>::infinity();
    for (auto [i, j] : candidates) {
        if (excluded.count({i + 1, j + 1})) {
            ++rep.pairs_excluded;
            continue;
        }
        CompareResult cmp = compare(fps[i], fps[j], 0.0);
        if (!cmp.linf) {
            ++rep.pairs_skipped_length;
            continue;
        }
        ++rep.pairs_measured;
        if (*cmp.linf < best) {
            best = *cmp.linf;
            rep.argmin = {i + 1, j + 1};
        }
    }
    if (rep.pairs_measured == 0)
        throw std::runtime_error("margins: no comparable pair in family '" + family_name +
                                 "' (need two graphs with equal fingerprint lengths)");

    rep.min_linf = best;
    rep.ratio = opt.solver.tol > 0 ? best / opt.solver.tol : 0.0;
    rep.elapsed_seconds = seconds_since(t0);
    return rep;
}

RoundingReport rounding_stability(const std::vector<Graph>& graphs,
                                  const std::string& family_name,
                                  const RoundingOptions& opt) {
    if (opt.min_digits > opt.max_digits)
        throw std::invalid_argument("rounding: min_digits exceeds max_digits");
    RoundingReport rep;
    rep.family = family_name;
    rep.k = opt.k;
    rep.num_graphs = graphs.size();

    DeltaConfig cfg;
    cfg.k = opt.k;
    cfg.solver = opt.solver;
    cfg.threads = 1;
    std::vector<DeltaFingerprint> fps(graphs.size());
    parallel_for(graphs.size(), opt.threads,
                 [&](std::size_t i) { fps[i] = delta_fingerprint(graphs[i], cfg).fp; });

    using Key = std::pair<std::vector<std::size_t>, std::vector<double>>;
    std::set<Key> exact;
    for (const auto& fp : fps) exact.insert({fp.row_lengths, fp.values});
    rep.unique_unrounded = exact.size();

    for (int d = opt.min_digits; d <= opt.max_digits; ++d) {
        const double scale = std::pow(10.0, d);
        using RKey = std::pair<std::vector<std::size_t>, std::vector<long long>>;
        std::set<RKey> seen;
        for (const auto& fp : fps) {
            std::vector<long long> rounded(fp.values.size());
            for (std::size_t i = 0; i < fp.values.size(); ++i)
                rounded[i] = std::llround(fp.values[i] * scale);  // half away from zero
            seen.insert({fp.row_lengths, std::move(rounded)});
        }
        rep.unique_per_digit.push_back({d, seen.size()});
    }
    return rep;
}

std::string emit_report(const FamilyReport& r, ReportFormat fmt) {
    if (fmt == ReportFormat::Json) {
        nlohmann::ordered_json j;
        j["report"] = "scan";
        j["family"] = r.family;
        j["k"] = r.k;
        j["num_graphs"] = r.num_graphs;
        j["num_unique"] = r.num_unique;
        j["pairs"] = r.pairs;
        j["max_iterations"] = r.max_iterations;
        j["elapsed_seconds"] = r.elapsed_seconds;
        j["collisions"] = nlohmann::ordered_json::array();
        for (const auto& g : r.collisions) {
            nlohmann::ordered_json grp;
            grp["members"] = g.members;
            if (g.resolved_at_k)
                grp["resolved_at_k"] = *g.resolved_at_k;
            else
                grp["resolved_at_k"] = nullptr;
            j["collisions"].push_back(grp);
        }
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "family,k,num_graphs,num_unique,collision_groups,max_iterations,elapsed_seconds\n";
    os << r.family << "," << r.k << "," << r.num_graphs << "," << r.num_unique << ","
       << r.collisions.size() << "," << r.max_iterations << "," << std::fixed
       << std::setprecision(3) << r.elapsed_seconds << "\n";
    return os.str();
}

std::string emit_report(const MarginReport& r, ReportFormat fmt) {
    if (fmt == ReportFormat::Json) {
        nlohmann::ordered_json j;
        j["report"] = "margins";
        j["family"] = r.family;
        j["k"] = r.k;
        j["num_graphs"] = r.num_graphs;
        j["min_linf"] = r.min_linf;
        j["ratio"] = r.ratio;
        j["sampled"] = r.sampled;
        if (r.sampled) {
            j["sample_pairs"] = r.sample_pairs;
            j["seed"] = r.seed;
        }
        j["pairs_measured"] = r.pairs_measured;
        j["pairs_skipped_length"] = r.pairs_skipped_length;
        j["pairs_excluded"] = r.pairs_excluded;
        if (r.argmin)
            j["argmin"] = {r.argmin->first, r.argmin->second};
        else
            j["argmin"] = nullptr;
        j["elapsed_seconds"] = r.elapsed_seconds;
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "family,min_linf,ratio,method\n";
    os << r.family << "," << sci(r.min_linf) << "," << std::fixed << std::setprecision(1)
       << r.ratio << ",delta" << r.k << "\n";
    return os.str();
}

std::string emit_report(const RoundingReport& r, ReportFormat fmt) {
    if (fmt == ReportFormat::Json) {
        nlohmann::ordered_json j;
        j["report"] = "rounding";
        j["family"] = r.family;
        j["k"] = r.k;
        j["num_graphs"] = r.num_graphs;
        j["unique_unrounded"] = r.unique_unrounded;
        nlohmann::ordered_json per;
        for (auto [d, cnt] : r.unique_per_digit) per[std::to_string(d)] = cnt;
        j["unique_per_digit"] = per;
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "family,digits,unique\n";
    os << r.family << ",none," << r.unique_unrounded << "\n";
    for (auto [d, cnt] : r.unique_per_digit)
        os << r.family << "," << d << "," << cnt << "\n";
    return os.str();
}

}  // namespace dress
