#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "dress/generators.hpp"
#include "dress/graph.hpp"
#include "dress/kernels.hpp"
#include "dress/solver.hpp"

using namespace dress;

namespace {

int ulp_gap(double a, double b) {
    int steps = 0;
    while (a != b && steps <= 8) {
        a = std::nextafter(a, b);
        ++steps;
    }
    return a == b ? steps : 9;
}

double linf(const std::vector<double>& a, const std::vector<double>& b) {
    REQUIRE(a.size() == b.size());
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

Graph random_graph(int n, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng) < p) edges.push_back({u, v});
    return Graph(n, edges);
}

}  // namespace

TEST_CASE("complete graphs fix at 2.0") {
    for (int n = 2; n <= 10; ++n) {
        EdgeValues ev = dress_converge(generate({Family::Complete, {n}}));
        for (double v : ev.values) CHECK(std::fabs(v - 2.0) <= 1e-6);
        CHECK(ev.iterations <= 3);
    }
    CHECK(dress_converge(generate({Family::Complete, {5}})).iterations == 2);
}

TEST_CASE("cycles fix at sqrt(2)") {
    const double root2 = std::sqrt(2.0);
    for (int n = 4; n <= 12; ++n) {
        auto fp = dress_fingerprint(generate({Family::Cycle, {n}}));
        REQUIRE(fp.size() == std::size_t(n));
        for (double v : fp) CHECK(std::fabs(v - root2) <= 1e-6);
    }
}

TEST_CASE("P3 matches the cubic root") {
    // independent bisection of p^3 + p^2 - 2p - 4 on [1, 2]
    auto f = [](double p) { return ((p + 1) * p - 2) * p - 4; };
    double lo = 1.0, hi = 2.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0 ? lo : hi) = mid;
    }
    const double root = 0.5 * (lo + hi);
    auto fp = dress_fingerprint(generate({Family::Path, {3}}));
    REQUIRE(fp.size() == 2);
    CHECK(std::fabs(fp[0] - root) <= 1e-6);
    CHECK(std::fabs(fp[1] - root) <= 1e-6);
    CHECK(std::fabs(root - 1.6589670819) <= 1e-5);
}

TEST_CASE("loops pin to 2.0 within 2 ulps") {
    std::vector<Graph> gs{generate({Family::Path, {4}}),
                          generate({Family::Cycle, {7}}),
                          generate({Family::Petersen, {}}),
                          generate({Family::Shrikhande, {}}),
                          random_graph(12, 0.3, 99)};
    for (const auto& g : gs) {
        // converged state
        EdgeValues ev = dress_converge(g);
        for (std::size_t i = 0; i < ev.edges.size(); ++i)
            if (ev.edges[i].first == ev.edges[i].second)
                CHECK(ulp_gap(ev.values[i], 2.0) <= 2);
        // after exactly one sweep: a huge tolerance stops the solver at t=1
        SolverConfig one;
        one.tol = 1e9;
        one.max_iter = 1;
        EdgeValues first = dress_converge(g, one);
        REQUIRE(first.iterations == 1);
        for (std::size_t i = 0; i < first.edges.size(); ++i)
            if (first.edges[i].first == first.edges[i].second)
                CHECK(ulp_gap(first.values[i], 2.0) <= 2);
    }
}

TEST_CASE("values stay inside [0, 2] and fingerprint is sorted") {
    std::vector<Graph> gs{generate({Family::Petersen, {}}), random_graph(15, 0.4, 5),
                          generate({Family::CompleteBipartite, {3, 4}})};
    for (const auto& g : gs) {
        EdgeValues ev = dress_converge(g);
        for (double v : ev.values) {
            CHECK(v >= 0.0);
            CHECK(v <= 2.0 + 1e-12);
        }
        auto fp = extract_fingerprint(ev);
        CHECK(std::is_sorted(fp.begin(), fp.end()));
        CHECK(fp.size() == std::size_t(g.num_edges()));
    }
}

TEST_CASE("initialization independence") {
    std::vector<Graph> gs{generate({Family::Petersen, {}}), random_graph(14, 0.35, 17),
                          generate({Family::Prism, {4}})};
    for (const auto& g : gs) {
        auto base = dress_fingerprint(g);
        for (double init : {0.1, 0.37, 2.0, 7.3, 10.0}) {
            SolverConfig cfg;
            cfg.init = init;
            CHECK(linf(base, dress_fingerprint(g, cfg)) <= 1e-5);
        }
    }
}

TEST_CASE("permutation invariance") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_graph(6 + int(rng() % 15), 0.35, rng());
        std::vector<int> pi(g.num_vertices());
        std::iota(pi.begin(), pi.end(), 0);
        std::shuffle(pi.begin(), pi.end(), rng);
        CHECK(linf(dress_fingerprint(g), dress_fingerprint(permute(g, pi))) <= 1e-5);
    }
}

TEST_CASE("component locality") {
    Graph a = generate({Family::Cycle, {5}});
    Graph b = generate({Family::Complete, {4}});
    auto fa = dress_fingerprint(a);
    auto fb = dress_fingerprint(b);
    std::vector<double> merged;
    merged.insert(merged.end(), fa.begin(), fa.end());
    merged.insert(merged.end(), fb.begin(), fb.end());
    std::sort(merged.begin(), merged.end());
    CHECK(linf(merged, dress_fingerprint(disjoint_union(a, b))) <= 1e-5);
}

TEST_CASE("determinism") {
    Graph g = random_graph(16, 0.3, 4242);
    EdgeValues a = dress_converge(g);
    EdgeValues b = dress_converge(g);
    CHECK(a.values == b.values);  // bitwise
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("empty and edgeless graphs") {
    EdgeValues none = dress_converge(Graph(0, {}));
    CHECK(none.edges.empty());
    CHECK(none.values.empty());
    CHECK(none.iterations == 0);
    CHECK(extract_fingerprint(none).empty());

    EdgeValues iso = dress_converge(Graph(5, {}));
    CHECK(iso.edges.size() == 5);  // loops only
    CHECK(extract_fingerprint(iso).empty());
    for (double v : iso.values) CHECK(ulp_gap(v, 2.0) <= 2);
}

TEST_CASE("non-convergence throws with diagnostics") {
    SolverConfig cfg;
    cfg.max_iter = 1;
    try {
        dress_converge(generate({Family::Path, {4}}), cfg);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.iterations == 1);
        CHECK(e.residual > 1e-6);
        CHECK(std::string(e.what()).find("converge") != std::string::npos);
    }
}

TEST_CASE("solver config is validated") {
    Graph g = generate({Family::Cycle, {4}});
    SolverConfig bad;
    bad.tol = 0.0;
    CHECK_THROWS_AS(dress_converge(g, bad), std::invalid_argument);
    bad = {};
    bad.max_iter = 0;
    CHECK_THROWS_AS(dress_converge(g, bad), std::invalid_argument);
    bad = {};
    bad.init = -1.0;
    CHECK_THROWS_AS(dress_converge(g, bad), std::invalid_argument);
}

TEST_CASE("every kernel agrees with scalar bit for bit") {
    const StepKernel* scalar = &scalar_kernel();
    std::vector<Graph> gs;
    for (int n = 3; n <= 9; ++n) gs.push_back(generate({Family::Cycle, {n}}));
    for (int n = 2; n <= 8; ++n) gs.push_back(generate({Family::Path, {n}}));
    gs.push_back(generate({Family::Petersen, {}}));
    gs.push_back(generate({Family::Shrikhande, {}}));
    gs.push_back(generate({Family::Complete, {7}}));
    gs.push_back(generate({Family::CompleteBipartite, {1, 9}}));  // star
    gs.push_back(Graph(6, {}));
    gs.push_back(Graph(9, {{0, 1}}));  // mostly isolated
    for (std::uint64_t s = 1; s <= 6; ++s) gs.push_back(random_graph(6 + int(s) * 2, 0.35, s));

    for (const StepKernel* k : available_kernels()) {
        if (k == scalar) continue;
        for (const auto& g : gs) {
            SolverConfig cs, ck;
            cs.kernel = scalar;
            ck.kernel = k;
            EdgeValues a = dress_converge(g, cs);
            EdgeValues b = dress_converge(g, ck);
            CHECK(a.values == b.values);  // bitwise, no tolerance
            CHECK(a.iterations == b.iterations);
        }
    }
}

TEST_CASE("kernel registry") {
    CHECK(kernel_by_name("scalar") == &scalar_kernel());
    CHECK(kernel_by_name("nope") == nullptr);
    const StepKernel* pref = &preferred_kernel();
    bool found = false;
    for (const StepKernel* k : available_kernels())
        if (k == pref) found = true;
    CHECK(found);
}
