#include <doctest.h>

#include <algorithm>
#include <set>

#include "tdg/kgraph.hpp"

using namespace tdg;

namespace {

// Dense random instance: t hypergraphs whose edges are random k-tuples, and
// z-multigraphs built as unions of random slices of those edge sets.
struct Instance {
    std::vector<DirectedKGraph> hs;
    std::vector<DirectedKGraph> zs;
};

Instance dense_instance(int n, int k, int t, int zcount, double density, std::uint64_t seed) {
    Rng rng(seed);
    Instance inst;
    auto random_tuple = [&]() {
        std::vector<int> tup;
        while (static_cast<int>(tup.size()) < k) {
            const int v = static_cast<int>(rng.next_below(n));
            if (std::find(tup.begin(), tup.end(), v) == tup.end()) tup.push_back(v);
        }
        return tup;
    };
    for (int i = 0; i < t; ++i) {
        DirectedKGraph h;
        h.n = n;
        h.k = k;
        std::int64_t target = 1;
        for (int e = 0; e < k; ++e) target *= n;
        target = static_cast<std::int64_t>(target * density);
        std::set<std::vector<int>> seen;
        while (static_cast<std::int64_t>(h.edges.size()) < target) {
            auto tup = random_tuple();
            if (seen.insert(tup).second) h.edges.push_back(std::move(tup));
        }
        inst.hs.push_back(std::move(h));
    }
    for (int j = 0; j < zcount; ++j) {
        DirectedKGraph z;
        z.n = n;
        z.k = k;
        for (const auto& h : inst.hs)
            for (const auto& e : h.edges)
                if (rng.next_bool(0.8)) z.edges.push_back(e);
        inst.zs.push_back(std::move(z));
    }
    return inst;
}

}  // namespace

TEST_CASE("verifier thresholds at degenerate parameters") {
    // t = 4, eps = 1: conclusion needs |M| >= 3 and |Z_j & M| >= 1
    const Ratio eps(1, 1);
    const Ratio size_bound = Ratio(1, 1) - eps * eps / Ratio(4, 1);
    CHECK(size_bound.ceil_scaled(4) == 3);
    CHECK((eps * eps / Ratio(4, 1)).ceil_scaled(4) == 1);

    // empty matching with t > 0 fails the size clause
    DirectedKGraph h;
    h.n = 4;
    h.k = 2;
    for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v)
            if (u != v) h.edges.push_back({u, v});
    std::vector<DirectedKGraph> hs(4, h);
    const KGraphReport rep =
        verify_rainbow_kgraph_matching(hs, {}, KGraphMatching{}, Ratio(1, 4), 4);
    bool size_failed = false;
    for (const auto& chk : rep.checks)
        if (chk.clause == "concl-size" && !chk.pass) size_failed = true;
    CHECK(size_failed);
    CHECK(!rep.conclusions_pass);
}

TEST_CASE("greedy construction passes the verifier on dense instances") {
    // (n, k, t) with t*k <= n; seeds frozen after deriving that the greedy
    // matching meets the target conclusions at the hypothesis-checker's eps.
    const struct {
        int n, k, t;
        std::uint64_t iseed, gseed;
    } combos[] = {{12, 2, 6, 1000, 90}, {16, 2, 8, 1000, 90}};
    for (const auto& combo : combos) {
        const Instance inst = dense_instance(combo.n, combo.k, combo.t, 3, 0.5, combo.iseed);
        const KGraphMatching m = greedy_rainbow_kgraph_matching(inst.hs, inst.zs, combo.gseed);
        const Ratio eps = max_feasible_eps(inst.hs, inst.zs, combo.t);
        REQUIRE(eps > Ratio(0, 1));
        const KGraphReport rep =
            verify_rainbow_kgraph_matching(inst.hs, inst.zs, m, eps, combo.t);
        CHECK(rep.hypotheses_pass);
        CHECK(rep.conclusions_pass);
        CHECK(m.picks.size() == static_cast<std::size_t>(combo.t));
    }
}

TEST_CASE("(10,3,4) cannot meet the size conclusion: verifier reports it") {
    // Four disjoint 3-tuples need 12 vertices on 10; |M| is capped at 3 while
    // (1 - eps^2/4) * 4 > 3 for every eps < 1. The verifier must say which
    // side fails rather than pretend.
    const Instance inst = dense_instance(10, 3, 4, 3, 0.5, 42);
    const Ratio eps = max_feasible_eps(inst.hs, inst.zs, 4);
    REQUIRE(eps > Ratio(0, 1));
    const KGraphMatching m = greedy_rainbow_kgraph_matching(inst.hs, inst.zs, 1);
    CHECK(m.picks.size() == 3);  // floor(n/k), the structural maximum
    const KGraphReport rep = verify_rainbow_kgraph_matching(inst.hs, inst.zs, m, eps, 4);
    CHECK(rep.hypotheses_pass);
    CHECK(!rep.conclusions_pass);
    bool size_clause_failed = false;
    for (const auto& chk : rep.checks)
        if (chk.clause == "concl-size" && !chk.pass) size_clause_failed = true;
    CHECK(size_clause_failed);
}

TEST_CASE("greedy is deterministic under seed") {
    const Instance inst = dense_instance(12, 2, 6, 2, 0.4, 5);
    const KGraphMatching a = greedy_rainbow_kgraph_matching(inst.hs, inst.zs, 1234);
    const KGraphMatching b = greedy_rainbow_kgraph_matching(inst.hs, inst.zs, 1234);
    CHECK(a.picks == b.picks);
}

TEST_CASE("verifier rejects malformed matchings and reports hypothesis failures") {
    DirectedKGraph h;
    h.n = 4;
    h.k = 2;
    h.edges = {{0, 1}, {2, 3}};
    std::vector<DirectedKGraph> hs(3, h);
    KGraphMatching overlap;
    overlap.picks = {{0, {0, 1}}, {1, {0, 1}}};  // shares vertices
    const KGraphReport rep = verify_rainbow_kgraph_matching(hs, {}, overlap, Ratio(1, 8), 3);
    CHECK(!rep.hypotheses_pass);

    // sparse hypergraph fails the eps n^k bound
    DirectedKGraph sparse;
    sparse.n = 4;
    sparse.k = 2;
    sparse.edges = {{0, 1}};
    const KGraphReport rep2 = verify_rainbow_kgraph_matching({sparse}, {}, KGraphMatching{},
                                                             Ratio(1, 2), 1);
    CHECK(!rep2.hypotheses_pass);

    CHECK_THROWS_AS(verify_rainbow_kgraph_matching({}, {}, KGraphMatching{}, Ratio(1, 2), 1),
                    Error);
}
