#include <doctest.h>

#include "tdg/extremal.hpp"
#include "tdg/solver.hpp"

using namespace tdg;

namespace {

Digraph two_disjoint_complete(int half) {
    Digraph d(2 * half);
    for (int u = 0; u < half; ++u)
        for (int v = 0; v < half; ++v)
            if (u != v) {
                d.add_edge(u, v);
                d.add_edge(half + u, half + v);
            }
    return d;
}

// Naive double-subset brute force; the independent oracle for is_eps_nice.
std::int64_t brute_min_pair_value(const Digraph& d, int k) {
    const int n = d.order();
    std::int64_t best = -1;
    for (std::uint64_t ma = 0; ma < (1ULL << n); ++ma) {
        if (std::popcount(ma) != k) continue;
        Vset a(n);
        for (int i = 0; i < n; ++i)
            if (ma & (1ULL << i)) a.set(i);
        for (std::uint64_t mb = 0; mb < (1ULL << n); ++mb) {
            if (std::popcount(mb) != k) continue;
            Vset b(n);
            for (int i = 0; i < n; ++i)
                if (mb & (1ULL << i)) b.set(i);
            const std::int64_t e = d.edges_between(a, b);
            if (best < 0 || e < best) best = e;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("niceness on reference instances") {
    // complete digraph: min e = k^2 - k at A == B
    const NicenessVerdict complete = is_eps_nice(Digraph::complete(10), Ratio(1, 10));
    CHECK(complete.nice);
    CHECK(complete.min_value == 12);  // k=4: 16 - 4
    CHECK(complete.threshold == 10);

    const NicenessVerdict split = is_eps_nice(two_disjoint_complete(5), Ratio(1, 10));
    CHECK(!split.nice);
    CHECK(split.min_value == 0);
    REQUIRE(split.witness.has_value());

    // complete bipartite digraph: sets inside one part give e = 0
    Digraph bip(10);
    for (int u = 0; u < 5; ++u)
        for (int v = 5; v < 10; ++v) {
            bip.add_edge(u, v);
            bip.add_edge(v, u);
        }
    CHECK(!is_eps_nice(bip, Ratio(1, 10)).nice);
}

TEST_CASE("exact niceness equals the double-subset brute force") {
    Rng rng(5);
    for (int t = 0; t < 12; ++t) {
        const int n = 6 + t % 4;  // 6..9
        Digraph d(n);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v && rng.next_bool(0.45)) d.add_edge(u, v);
        for (const Ratio& eps : {Ratio(1, 10), Ratio(1, 5)}) {
            const int k = static_cast<int>((Ratio(1, 2) - eps).ceil_scaled(n));
            const NicenessVerdict v = is_eps_nice(d, eps);
            CHECK(v.min_value == brute_min_pair_value(d, k));
        }
    }
}

TEST_CASE("monotonicity: enlarging A never decreases the pair value") {
    Rng rng(6);
    for (int t = 0; t < 60; ++t) {
        const int n = 5 + t % 6;
        Digraph d(n);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v && rng.next_bool(0.5)) d.add_edge(u, v);
        Vset a(n), b(n);
        for (int v = 0; v < n; ++v) {
            if (rng.next_bool(0.4)) a.set(v);
            if (rng.next_bool(0.4)) b.set(v);
        }
        std::vector<int> outside;
        for (int v = 0; v < n; ++v)
            if (!a.test(v)) outside.push_back(v);
        if (outside.empty()) continue;
        Vset a2 = a;
        a2.set(outside[rng.next_below(outside.size())]);
        CHECK(d.edges_between(a2, b) >= d.edges_between(a, b));
    }
}

TEST_CASE("sampled niceness finds certified witnesses") {
    NicenessOptions opts;
    opts.mode = NicenessMode::sampled;
    opts.seed = 11;
    const NicenessVerdict v = is_eps_nice(two_disjoint_complete(8), Ratio(1, 10), opts);
    CHECK(!v.nice);
    CHECK(v.certified);
    REQUIRE(v.witness.has_value());
    // witness must re-verify exactly
    const auto& [wa, wb] = *v.witness;
    const Digraph d = two_disjoint_complete(8);
    CHECK(d.edges_between(Vset::from(16, wa), Vset::from(16, wb)) < v.threshold);
}

TEST_CASE("generator closure: defect-0 templates verify") {
    const GenExtremalResult ec1 = gen_extremal(ExtremalKind::EC1, 8, Ratio(1, 8), std::nullopt,
                                               Ratio(0, 1), 1);
    CHECK(verify_partition(ec1.digraph, ec1.partition).pass);

    const GenExtremalResult ec2 = gen_extremal(ExtremalKind::EC2, 10, Ratio(1, 10), std::nullopt,
                                               Ratio(0, 1), 1);
    CHECK(verify_partition(ec2.digraph, ec2.partition).pass);
    CHECK(!is_eps_nice(ec2.digraph, Ratio(1, 10)).nice);

    const GenExtremalResult ec3 = gen_extremal(ExtremalKind::EC3, 20, Ratio(1, 20), Ratio(3, 20),
                                               Ratio(0, 1), 1);
    CHECK(verify_partition(ec3.digraph, ec3.partition).pass);
}

TEST_CASE("cross-template checks fail as expected") {
    const GenExtremalResult ec1 = gen_extremal(ExtremalKind::EC1, 12, Ratio(1, 8), std::nullopt,
                                               Ratio(0, 1), 2);
    CharacteristicPartition as_ec2 = ec1.partition;
    as_ec2.kind = ExtremalKind::EC2;
    CHECK(!verify_partition(ec1.digraph, as_ec2).pass);

    // one extra cross edge within the eps*n^2 cap still passes
    GenExtremalResult ec3 = gen_extremal(ExtremalKind::EC3, 20, Ratio(1, 20), Ratio(3, 20),
                                         Ratio(0, 1), 3);
    const int c1v = ec3.partition.c1.front();
    const int c3v = ec3.partition.c3.front();
    ec3.digraph.add_edge(c1v, c3v);  // eps*n^2 = 20 >= 1
    CHECK(verify_partition(ec3.digraph, ec3.partition).pass);
}

TEST_CASE("tight witnesses: semi-degree and unsolvability") {
    SearchConfig cfg;
    for (int n = 4; n <= 8; ++n) {
        const DigraphCollection w = gen_tight_witness(n);
        CHECK(collection_semi_degree(w) == (n + 1) / 2 - 1);
        const SolveOutcome out = find_transversal_hamilton_cycle(w, cfg);
        CHECK(out.status == SolveStatus::none);
        CHECK(out.exhausted);
    }
    CHECK_THROWS_AS(gen_tight_witness(3), Error);
}

TEST_CASE("defect perturbation keeps the clauses") {
    const GenExtremalResult noisy = gen_extremal(ExtremalKind::EC1, 16, Ratio(1, 8), std::nullopt,
                                                 Ratio(1, 50), 99);
    CHECK(noisy.defect_edges_applied > 0);
    CHECK(verify_partition(noisy.digraph, noisy.partition).pass);
}

TEST_CASE("classification recovers planted structures") {
    for (int n : {8, 10, 12, 16, 20}) {
        for (ExtremalKind kind : {ExtremalKind::EC1, ExtremalKind::EC2}) {
            const Ratio eps(1, 8);
            const GenExtremalResult g = gen_extremal(kind, n, eps, std::nullopt, Ratio(0, 1), 4);
            ClassifyOptions opts;
            opts.seed = 17;
            const auto found = classify_extremal(g.digraph, eps, opts);
            REQUIRE(found.has_value());
            CHECK(found->kind == kind);
            CHECK(partition_agreement(*found, g.partition, n) >= 0.9);
        }
    }
    for (int n : {14, 20}) {
        const Ratio eps(1, 12);
        const Ratio zeta(1, 4);
        const GenExtremalResult g = gen_extremal(ExtremalKind::EC3, n, eps, zeta, Ratio(0, 1), 5);
        ClassifyOptions opts;
        opts.seed = 18;
        const auto found = classify_extremal(g.digraph, eps, opts);
        REQUIRE(found.has_value());
        CHECK(found->kind == ExtremalKind::EC3);
        CHECK(partition_agreement(*found, g.partition, n) >= 0.9);
    }
}

TEST_CASE("classification returns nothing on nice or degenerate digraphs") {
    ClassifyOptions opts;
    CHECK(!classify_extremal(Digraph::complete(10), Ratio(1, 10), opts).has_value());
    ClassifyOptions opts2;
    CHECK(!classify_extremal(Digraph(10), Ratio(1, 10), opts2).has_value());
}

TEST_CASE("exact niceness refuses oversized instances") {
    NicenessOptions opts;
    opts.mode = NicenessMode::exact;
    bool budget_error = false;
    try {
        is_eps_nice(Digraph::complete(40), Ratio(1, 10), opts);
    } catch (const Error& e) {
        budget_error = e.kind() == ErrorKind::budget;
    }
    CHECK(budget_error);
}
