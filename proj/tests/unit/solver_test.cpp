#include <doctest.h>

#include "tdg/experiments.hpp"
#include "tdg/extremal.hpp"
#include "tdg/solver.hpp"
#include "tdg/stability.hpp"

using namespace tdg;

namespace {

DigraphCollection copies(const Digraph& d, int m) {
    return DigraphCollection(std::vector<Digraph>(static_cast<std::size_t>(m), d));
}

Digraph digon_pair() {  // two disjoint digons on 4 vertices
    Digraph d(4);
    d.add_edge(0, 1);
    d.add_edge(1, 0);
    d.add_edge(2, 3);
    d.add_edge(3, 2);
    return d;
}

Digraph complete_bipartite_digraph(int a, int b) {
    Digraph d(a + b);
    for (int u = 0; u < a; ++u)
        for (int v = a; v < a + b; ++v) {
            d.add_edge(u, v);
            d.add_edge(v, u);
        }
    return d;
}

}  // namespace

TEST_CASE("hamilton cycle solver on reference instances") {
    SearchConfig cfg;

    Digraph digon(2);
    digon.add_edge(0, 1);
    digon.add_edge(1, 0);
    const SolveOutcome d2 = find_transversal_hamilton_cycle(copies(digon, 2), cfg);
    REQUIRE(d2.status == SolveStatus::found);
    CHECK(validate_certificate(copies(digon, 2), *d2.certificate).pass);

    // disconnected union: exhaustively none
    Digraph two_k2 = digon_pair();
    const SolveOutcome d4 = find_transversal_hamilton_cycle(copies(two_k2, 4), cfg);
    CHECK(d4.status == SolveStatus::none);
    CHECK(d4.exhausted);

    // unbalanced complete bipartite: parity obstruction
    const SolveOutcome d5 =
        find_transversal_hamilton_cycle(copies(complete_bipartite_digraph(3, 2), 5), cfg);
    CHECK(d5.status == SolveStatus::none);

    CHECK_THROWS_AS(find_transversal_hamilton_cycle(copies(digon, 3), cfg), Error);
}

TEST_CASE("oracle counts and witnesses") {
    const DigraphCollection k3 = copies(Digraph::complete(3), 3);
    const OracleResult r3 = oracle_transversal_hamilton_cycle(k3);
    CHECK(r3.exists);
    CHECK(r3.pair_count == 12);  // 2 directed triangles x 3! bijections
    REQUIRE(r3.witness.has_value());
    CHECK(validate_certificate(k3, *r3.witness).pass);

    const OracleResult r4 = oracle_transversal_hamilton_cycle(copies(digon_pair(), 4));
    CHECK(!r4.exists);
    CHECK(r4.pair_count == 0);

    Digraph digon(2);
    digon.add_edge(0, 1);
    digon.add_edge(1, 0);
    const OracleResult r2 = oracle_transversal_hamilton_cycle(copies(digon, 2));
    CHECK(r2.pair_count == 2);

    CHECK_THROWS_AS(oracle_transversal_hamilton_cycle(copies(Digraph::complete(10), 10)), Error);
}

TEST_CASE("solver agrees with oracle on random instances") {
    int disagreements = 0;
    for (int t = 0; t < 120; ++t) {
        const int n = 2 + t % 5;
        const double p = 0.15 + 0.1 * (t % 7);
        const auto inst = gen_random_collection(n, n, p, std::nullopt, 1000 + t);
        SearchConfig cfg;
        const SolveOutcome outcome = find_transversal_hamilton_cycle(inst.collection, cfg);
        const OracleResult oracle = oracle_transversal_hamilton_cycle(inst.collection);
        if ((outcome.status == SolveStatus::found) != oracle.exists) ++disagreements;
        if (outcome.certificate)
            CHECK(validate_certificate(inst.collection, *outcome.certificate).pass);
    }
    CHECK(disagreements == 0);
}

TEST_CASE("hamilton path solver") {
    SearchConfig cfg;
    DigraphCollection one(2, 1);
    one.member(0).add_edge(0, 1);
    CHECK(find_transversal_hamilton_path(one, cfg).status == SolveStatus::found);

    DigraphCollection empty2(3, 2);
    CHECK(find_transversal_hamilton_path(empty2, cfg).status == SolveStatus::none);

    const DigraphCollection k3m2 =
        DigraphCollection(std::vector<Digraph>(2, Digraph::complete(3)));
    const SolveOutcome path = find_transversal_hamilton_path(k3m2, cfg);
    REQUIRE(path.status == SolveStatus::found);
    CHECK(validate_certificate(k3m2, *path.certificate).pass);

    CHECK_THROWS_AS(find_transversal_hamilton_path(copies(Digraph::complete(3), 3), cfg), Error);
}

TEST_CASE("transversal perfect matching solver") {
    SearchConfig cfg;
    BipartiteCollection complete2(2, 2);
    for (int c = 0; c < 2; ++c)
        for (int l = 0; l < 2; ++l)
            for (int r = 0; r < 2; ++r) complete2.add_edge(c, l, r);
    const SolveOutcome yes = find_transversal_perfect_matching(complete2, cfg);
    REQUIRE(yes.status == SolveStatus::found);
    CHECK(validate_certificate(complete2, *yes.certificate).pass);

    BipartiteCollection no(2, 2);
    no.add_edge(0, 0, 0);
    no.add_edge(1, 0, 1);  // left vertex 1 uncovered everywhere
    CHECK(find_transversal_perfect_matching(no, cfg).status == SolveStatus::none);
}

TEST_CASE("rainbow cycle cover matches the characteristic-bipartite reduction") {
    SearchConfig cfg;
    const DigraphCollection digons = copies(digon_pair(), 4);
    const SolveOutcome cover = rainbow_cycle_cover(digons, cfg);
    REQUIRE(cover.status == SolveStatus::found);
    CHECK(cover.certificate->kind == CertKind::cycle_cover);
    CHECK(validate_certificate(digons, *cover.certificate).pass);

    CHECK(rainbow_cycle_cover(DigraphCollection(3, 3), cfg).status == SolveStatus::none);

    for (int t = 0; t < 60; ++t) {
        const auto inst = gen_random_collection(5, 5, 0.25 + 0.1 * (t % 5), std::nullopt, 50 + t);
        const bool direct = rainbow_cycle_cover(inst.collection, cfg).status == SolveStatus::found;
        const bool via_pm =
            find_transversal_perfect_matching(characteristic_bipartite(inst.collection), cfg)
                .status == SolveStatus::found;
        CHECK(direct == via_pm);
    }
}

TEST_CASE("maximum rainbow matching") {
    SearchConfig cfg;
    BipartiteCollection one(1, 1);
    one.add_edge(0, 0, 0);
    CHECK(max_rainbow_matching(one, cfg).size == 1);

    BipartiteCollection complete3(3, 3);
    for (int c = 0; c < 3; ++c)
        for (int l = 0; l < 3; ++l)
            for (int r = 0; r < 3; ++r) complete3.add_edge(c, l, r);
    CHECK(max_rainbow_matching(complete3, cfg).size == 3);

    BipartiteCollection shared(3, 3);
    for (int c = 0; c < 3; ++c) shared.add_edge(c, 0, 0);  // everyone shares one edge
    CHECK(max_rainbow_matching(shared, cfg).size == 1);

    // brute-force cross-check on small random instances
    Rng rng(99);
    for (int t = 0; t < 40; ++t) {
        const int n = 2 + t % 3;
        const int m = 1 + t % 4;
        BipartiteCollection bc(n, m);
        for (int c = 0; c < m; ++c)
            for (int l = 0; l < n; ++l)
                for (int r = 0; r < n; ++r)
                    if (rng.next_bool(0.4)) bc.add_edge(c, l, r);
        // exhaustive maximum via recursion over colors
        std::function<int(int, unsigned, unsigned)> brute = [&](int c, unsigned ul,
                                                                unsigned ur) -> int {
            if (c == m) return 0;
            int best = brute(c + 1, ul, ur);
            for (int l = 0; l < n; ++l)
                for (int r = 0; r < n; ++r)
                    if (bc.has_edge(c, l, r) && !(ul & (1u << l)) && !(ur & (1u << r)))
                        best = std::max(best,
                                        1 + brute(c + 1, ul | (1u << l), ur | (1u << r)));
            return best;
        };
        const int expect = brute(0, 0, 0);
        const MaxMatchingResult got = max_rainbow_matching(bc, cfg);
        CHECK(got.size == expect);
        CHECK(validate_certificate(bc, got.certificate).pass);
    }
}

TEST_CASE("determinism and parallel existence equality") {
    const auto inst = gen_random_collection(6, 6, 0.5, 3, 2024);
    SearchConfig cfg;
    cfg.parallel = false;
    const SolveOutcome a = find_transversal_hamilton_cycle(inst.collection, cfg);
    const SolveOutcome b = find_transversal_hamilton_cycle(inst.collection, cfg);
    CHECK(a.status == b.status);
    CHECK(a.stats.nodes == b.stats.nodes);
    REQUIRE((a.certificate.has_value() == b.certificate.has_value()));
    if (a.certificate) {
        CHECK(a.certificate->edges == b.certificate->edges);
        CHECK(a.certificate->colors == b.certificate->colors);
    }
    SearchConfig par = cfg;
    par.parallel = true;
    const SolveOutcome c = find_transversal_hamilton_cycle(inst.collection, par);
    CHECK((c.status == SolveStatus::found) == (a.status == SolveStatus::found));
    if (c.certificate) CHECK(validate_certificate(inst.collection, *c.certificate).pass);
}

TEST_CASE("timeout is a third state") {
    // A hard instance with a 1-node budget must report timeout, never none.
    const auto inst = gen_random_collection(6, 6, 0.5, 3, 77);
    SearchConfig cfg;
    cfg.node_budget = 1;
    const SolveOutcome out = find_transversal_hamilton_cycle(inst.collection, cfg);
    CHECK(out.status == SolveStatus::timeout);
    CHECK(!out.exhausted);
}

TEST_CASE("monotonicity: adding an edge never kills existence (oracle, n<=5)") {
    Rng rng(4242);
    for (int t = 0; t < 40; ++t) {
        const int n = 3 + t % 3;
        auto inst = gen_random_collection(n, n, 0.3, std::nullopt, 9000 + t);
        const bool before = oracle_transversal_hamilton_cycle(inst.collection).exists;
        // add a random missing edge to a random color
        const int c = static_cast<int>(rng.next_below(n));
        std::vector<std::pair<int, int>> missing;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v && !inst.collection.has_edge(c, u, v)) missing.emplace_back(u, v);
        if (missing.empty()) continue;
        const auto [u, v] = missing[rng.next_below(missing.size())];
        inst.collection.member(c).add_edge(u, v);
        const bool after = oracle_transversal_hamilton_cycle(inst.collection).exists;
        if (before) CHECK(after);
    }
}

TEST_CASE("large rainbow matchings in mu-nice collections (experimental property)") {
    // Dense bipartite collections where every color meets the (1/2 - mu)n
    // degree bound (so the exception count d is 0): when the collection is
    // 6mu-nice, the maximum rainbow matching should reach n - 2.
    for (int n : {6, 8, 10}) {
        const BipartiteCollection bc = gen_random_bradshaw(n, n, 0.65, 9000 + n);
        const Ratio mu(1, 40);
        bool degrees_ok = true;
        for (int c = 0; c < n && degrees_ok; ++c)
            for (int v = 0; v < n; ++v)
                if (!count_at_least(bc.left_degree(c, v), Ratio(1, 2) - mu, n) ||
                    !count_at_least(bc.right_degree(c, v), Ratio(1, 2) - mu, n))
                    degrees_ok = false;
        REQUIRE(degrees_ok);
        const MuNiceVerdict nice = collection_mu_nice(bc, mu * Ratio(6, 1));
        REQUIRE(nice.nice);
        SearchConfig cfg;
        const MaxMatchingResult m = max_rainbow_matching(bc, cfg);
        CHECK(m.size >= n - 2);
        CHECK(validate_certificate(bc, m.certificate).pass);
    }
}
