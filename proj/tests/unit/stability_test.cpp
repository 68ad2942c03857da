#include <doctest.h>

#include <numeric>

#include "tdg/stability.hpp"

using namespace tdg;

namespace {

CharacteristicPartition ec12_record(ExtremalKind kind, int n, const Ratio& eps,
                                    std::vector<int> a, std::vector<int> b) {
    CharacteristicPartition p;
    p.kind = kind;
    p.eps = eps;
    p.a = std::move(a);
    p.b = std::move(b);
    std::vector<char> used(n, 0);
    for (int v : p.a) used[v] = 1;
    for (int v : p.b) used[v] = 1;
    for (int v = 0; v < n; ++v)
        if (!used[v]) p.l.push_back(v);
    return p;
}

std::vector<int> range(int lo, int hi) {
    std::vector<int> out;
    for (int v = lo; v < hi; ++v) out.push_back(v);
    return out;
}

}  // namespace

TEST_CASE("good vertices") {
    const DigraphCollection dc(std::vector<Digraph>(3, Digraph::complete(8)));
    PartitionRecords records(3);
    CHECK(good_vertices(dc, 0, records).count() == 8);

    records[1] = ec12_record(ExtremalKind::EC1, 8, Ratio(1, 8), range(0, 3), range(3, 6));
    const Vset good = good_vertices(dc, 1, records);
    CHECK(good.count() == 6);
    CHECK(!good.test(6));
    CHECK(!good.test(7));
}

TEST_CASE("crossing clauses on EC1/EC2 records") {
    const int n = 20;
    const Ratio delta(1, 10);
    const Ratio eps(1, 8);
    const auto rec_a = ec12_record(ExtremalKind::EC1, n, eps, range(0, 8), range(8, 16));

    // identical partitions: |A d A| = 0
    CHECK(!is_crossing(rec_a, rec_a, delta, n).crossing);

    // swapped labels: |A_i d B_j| = 0
    const auto rec_swapped = ec12_record(ExtremalKind::EC2, n, eps, range(8, 16), range(0, 8));
    CHECK(!is_crossing(rec_a, rec_swapped, delta, n).crossing);

    // interleaved halves: both symmetric differences large
    std::vector<int> a2, b2;
    for (int i = 0; i < 8; ++i) a2.push_back((i * 2) % 16);
    for (int i = 0; i < 8; ++i) b2.push_back((i * 2 + 1) % 16);
    const auto rec_b = ec12_record(ExtremalKind::EC1, n, eps, a2, b2);
    const CrossingResult cr = is_crossing(rec_a, rec_b, delta, n);
    CHECK(cr.crossing);
    CHECK(cr.clause == "A1");
}

TEST_CASE("crossing is symmetric (fuzzed)") {
    Rng rng(31337);
    const int n = 16;
    for (int t = 0; t < 300; ++t) {
        auto random_record = [&]() {
            std::vector<int> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            rng.shuffle(perm);
            const int kind_pick = static_cast<int>(rng.next_below(3));
            CharacteristicPartition p;
            if (kind_pick < 2) {
                p.kind = kind_pick == 0 ? ExtremalKind::EC1 : ExtremalKind::EC2;
                p.eps = Ratio(1, 8);
                p.a = std::vector<int>(perm.begin(), perm.begin() + 6);
                p.b = std::vector<int>(perm.begin() + 6, perm.begin() + 12);
                p.l = std::vector<int>(perm.begin() + 12, perm.end());
            } else {
                p.kind = ExtremalKind::EC3;
                p.eps = Ratio(1, 16);
                p.zeta = Ratio(1, 4);
                p.c1 = std::vector<int>(perm.begin(), perm.begin() + 4);
                p.c2 = std::vector<int>(perm.begin() + 4, perm.begin() + 7);
                p.c3 = std::vector<int>(perm.begin() + 7, perm.begin() + 11);
                p.c4 = std::vector<int>(perm.begin() + 11, perm.begin() + 14);
                p.l = std::vector<int>(perm.begin() + 14, perm.end());
            }
            return p;
        };
        const CharacteristicPartition r1 = random_record();
        const CharacteristicPartition r2 = random_record();
        const Ratio delta(1, 8);
        CHECK(is_crossing(r1, r2, delta, n).crossing == is_crossing(r2, r1, delta, n).crossing);
    }
}

TEST_CASE("relabel robustness for (A1)") {
    Rng rng(777);
    const int n = 14;
    for (int t = 0; t < 100; ++t) {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm);
        auto mk = [&](int off) {
            CharacteristicPartition p;
            p.kind = ExtremalKind::EC1;
            p.eps = Ratio(1, 8);
            for (int i = 0; i < 5; ++i) p.a.push_back(perm[(off + i) % n]);
            for (int i = 5; i < 10; ++i) p.b.push_back(perm[(off + i) % n]);
            for (int i = 10; i < n; ++i) p.l.push_back(perm[(off + i) % n]);
            return p;
        };
        const CharacteristicPartition r1 = mk(0);
        const CharacteristicPartition r2 = mk(static_cast<int>(rng.next_below(n)));
        CharacteristicPartition r2_swapped = r2;
        std::swap(r2_swapped.a, r2_swapped.b);
        const Ratio delta(1, 7);
        CHECK(is_crossing(r1, r2, delta, n).crossing ==
              is_crossing(r1, r2_swapped, delta, n).crossing);
    }
}

TEST_CASE("observation intersections on crossing pairs") {
    for (int n : {16, 24, 32}) {
        // eps <= delta/8 regime; A_i interleaved vs contiguous halves
        const Ratio delta(1, 4);
        const Ratio eps(1, 32);
        const int k = n / 2 - 1;
        CharacteristicPartition r1, r2;
        r1.kind = r2.kind = ExtremalKind::EC1;
        r1.eps = r2.eps = eps;
        for (int i = 0; i < k; ++i) {
            r1.a.push_back(2 * i);
            r1.b.push_back(2 * i + 1);
            r2.a.push_back(i);
            r2.b.push_back(k + i);
        }
        for (int v = 2 * k; v < n; ++v) {
            r1.l.push_back(v);
            r2.l.push_back(v);
        }
        const CrossingResult cr = is_crossing(r1, r2, delta, n);
        REQUIRE(cr.crossing);
        const ObservationReport rep = observation_check(r1, r2, delta, n);
        CHECK(rep.applicable);
        CHECK(rep.pass);
    }
}

TEST_CASE("cross graph construction") {
    const int n = 20;
    const Ratio eps(1, 8);
    const Ratio delta(1, 10);
    // two groups of EC1 records: identical inside a group, crossing across
    const DigraphCollection dc(std::vector<Digraph>(6, Digraph::complete(n)));
    PartitionRecords records(6);
    std::vector<int> a2, b2;
    for (int i = 0; i < 8; ++i) a2.push_back((2 * i) % 16);
    for (int i = 0; i < 8; ++i) b2.push_back((2 * i + 1) % 16);
    for (int c = 0; c < 3; ++c)
        records[c] = ec12_record(ExtremalKind::EC1, n, eps, range(0, 8), range(8, 16));
    for (int c = 3; c < 6; ++c) records[c] = ec12_record(ExtremalKind::EC1, n, eps, a2, b2);

    const CrossGraphs graphs = build_cross_graph(dc, delta, records);
    CHECK(graphs.edges[0].size() == 9);  // complete bipartite between the groups
    CHECK(graphs.edges[1].empty());
    CHECK(graphs.edges[2].empty());
    for (const auto& [i, j] : graphs.edges[0]) CHECK(((i < 3) != (j < 3)));

    PartitionRecords same(6);
    for (int c = 0; c < 6; ++c)
        same[c] = ec12_record(ExtremalKind::EC1, n, eps, range(0, 8), range(8, 16));
    CHECK(build_cross_graph(dc, delta, same).edges[0].empty());

    CHECK(build_cross_graph(dc, delta, PartitionRecords(6)).edges[0].empty());
}

TEST_CASE("stability verdicts") {
    const int n = 10;
    {
        DigraphCollection dc(std::vector<Digraph>(10, Digraph::complete(n)));
        PartitionRecords records(10);
        const StabilityReport rep = classify_stability(dc, Ratio(1, 2), Ratio(1, 10), Ratio(1, 8),
                                                       Ratio(1, 10), records);
        CHECK(rep.verdict == StabilityVerdict::strongly_stable);
        CHECK(rep.nice_colors.size() == 10);
    }
    {
        const int nn = 20;
        const Ratio eps(1, 8);
        const Digraph ec1 =
            gen_extremal(ExtremalKind::EC1, nn, eps, std::nullopt, Ratio(0, 1), 1).digraph;
        DigraphCollection dc(std::vector<Digraph>(10, ec1));
        PartitionRecords records(10);
        std::vector<int> a2, b2;
        for (int i = 0; i < 8; ++i) a2.push_back((2 * i) % 16);
        for (int i = 0; i < 8; ++i) b2.push_back((2 * i + 1) % 16);
        for (int c = 0; c < 5; ++c)
            records[c] = ec12_record(ExtremalKind::EC1, nn, eps, range(0, 8), range(8, 16));
        for (int c = 5; c < 10; ++c) records[c] = ec12_record(ExtremalKind::EC1, nn, eps, a2, b2);
        // e(cross) = 25 >= delta * m^2 = 0.25 * 100 with delta = 1/4; the
        // EC1 members are not (1/8)-nice, so the strong clause cannot fire
        const StabilityReport rep = classify_stability(dc, Ratio(9, 10), Ratio(1, 8),
                                                       Ratio(1, 8), Ratio(1, 4), records);
        CHECK(rep.verdict == StabilityVerdict::weakly_stable);
        CHECK(rep.weakly_mode == 1);
        CHECK(rep.cross.edges[0].size() == 25);
    }
    {
        const int nn = 20;
        const Ratio eps(1, 8);
        const Digraph ec1 =
            gen_extremal(ExtremalKind::EC1, nn, eps, std::nullopt, Ratio(0, 1), 1).digraph;
        DigraphCollection dc(std::vector<Digraph>(10, ec1));
        PartitionRecords records(10);
        for (int c = 0; c < 10; ++c)
            records[c] = ec12_record(ExtremalKind::EC1, nn, eps, range(0, 8), range(8, 16));
        const StabilityReport rep = classify_stability(dc, Ratio(9, 10), Ratio(1, 8),
                                                       Ratio(1, 8), Ratio(1, 4), records);
        CHECK(rep.verdict == StabilityVerdict::none);
    }
}

TEST_CASE("strongly-stable verdict is monotone in gamma") {
    const int n = 10;
    std::vector<Digraph> members(10, Digraph::complete(n));
    for (int c = 6; c < 10; ++c) members[c] = Digraph(n);  // edgeless colors are not nice
    DigraphCollection dc{members};
    PartitionRecords records(10);
    bool was_strong = false;
    for (int num = 10; num >= 1; --num) {
        const bool strong = classify_stability(dc, Ratio(num, 10), Ratio(1, 10), Ratio(1, 8),
                                               Ratio(1, 10), records)
                                .verdict == StabilityVerdict::strongly_stable;
        if (was_strong) CHECK(strong);  // lowering gamma never flips it off
        was_strong = strong;
    }
    CHECK(classify_stability(dc, Ratio(6, 10), Ratio(1, 10), Ratio(1, 8), Ratio(1, 10), records)
              .verdict == StabilityVerdict::strongly_stable);
    CHECK(classify_stability(dc, Ratio(7, 10), Ratio(1, 10), Ratio(1, 8), Ratio(1, 10), records)
              .verdict != StabilityVerdict::strongly_stable);
}

TEST_CASE("collection mu-niceness") {
    BipartiteCollection complete(6, 6);
    for (int c = 0; c < 6; ++c)
        for (int l = 0; l < 6; ++l)
            for (int r = 0; r < 6; ++r) complete.add_edge(c, l, r);
    const MuNiceVerdict nice = collection_mu_nice(complete, Ratio(1, 20));
    CHECK(nice.nice);
    CHECK(nice.min_value == 54);  // m * floor(n/2)^2

    BipartiteCollection edgeless(6, 6);
    const MuNiceVerdict bad = collection_mu_nice(edgeless, Ratio(1, 20));
    CHECK(!bad.nice);
    CHECK(bad.witness.has_value());

    BipartiteCollection half(6, 6);
    for (int c = 0; c < 3; ++c)
        for (int l = 0; l < 6; ++l)
            for (int r = 0; r < 6; ++r) half.add_edge(c, l, r);
    CHECK(collection_mu_nice(half, Ratio(27, 216)).nice);
    CHECK(!collection_mu_nice(half, Ratio(28, 216)).nice);
}

TEST_CASE("exact mu-niceness equals brute force on small instances") {
    Rng rng(2718);
    for (int t = 0; t < 14; ++t) {
        const int n = 4 + t % 7;  // 4..10
        const int m = 2 + t % 5;  // 2..6
        BipartiteCollection bc(n, m);
        for (int c = 0; c < m; ++c)
            for (int l = 0; l < n; ++l)
                for (int r = 0; r < n; ++r)
                    if (rng.next_bool(0.5)) bc.add_edge(c, l, r);
        const int k = n / 2;
        std::int64_t best = -1;
        for (std::uint64_t ma = 0; ma < (1ULL << n); ++ma) {
            if (std::popcount(ma) != k) continue;
            for (std::uint64_t mb = 0; mb < (1ULL << n); ++mb) {
                if (std::popcount(mb) != k) continue;
                std::int64_t value = 0;
                for (int c = 0; c < m; ++c)
                    for (int l = 0; l < n; ++l)
                        if (ma & (1ULL << l))
                            for (int r = 0; r < n; ++r)
                                if ((mb & (1ULL << r)) && bc.has_edge(c, l, r)) ++value;
                if (best < 0 || value < best) best = value;
            }
        }
        CHECK(collection_mu_nice(bc, Ratio(1, 100)).min_value == best);
    }
}

TEST_CASE("bipartite records: planted structure verifies and crossing works") {
    const int n = 16;
    const Ratio eps(1, 8);
    const auto [bc, rec] = gen_bipartite_extremal(n, eps, 0, 4);
    CHECK(verify_bipartite_partition(bc, 0, rec).pass);

    const auto [bc2, rec2] = gen_bipartite_extremal(n, eps, 7, 4);
    CHECK(verify_bipartite_partition(bc2, 0, rec2).pass);

    CHECK(!is_crossing_bipartite(rec, rec, Ratio(1, 8), n).crossing);
    CHECK(is_crossing_bipartite(rec, rec2, Ratio(1, 8), n).crossing);

    const auto derived = derive_bipartite_record(bc, 0, eps, 5);
    REQUIRE(derived.has_value());
    CHECK(verify_bipartite_partition(bc, 0, *derived).pass);

    BipartiteRecords records(4);
    records[0] = rec;
    const Vset good = bipartite_good_vertices(bc, 0, records, eps, 1);
    CHECK(good.count() == n - static_cast<int>(rec.c1.size()));
}

TEST_CASE("bipartite stability classification") {
    const int n = 16;
    const Ratio eps(1, 8);
    const auto [bc_base, rec0] = gen_bipartite_extremal(n, eps, 0, 8);
    const auto [bc_shift, rec7] = gen_bipartite_extremal(n, eps, 7, 8);
    BipartiteCollection mixed(n, 8);
    for (int c = 0; c < 8; ++c) {
        const BipartiteCollection& src = c < 4 ? bc_base : bc_shift;
        for (int l = 0; l < n; ++l)
            for (int r = 0; r < n; ++r)
                if (src.has_edge(c, l, r)) mixed.add_edge(c, l, r);
    }
    BipartiteRecords records(8);
    for (int c = 0; c < 4; ++c) records[c] = rec0;
    for (int c = 4; c < 8; ++c) records[c] = rec7;
    const StabilityReport rep = classify_stability_bipartite(
        mixed, Ratio(9, 10), Ratio(1, 8), eps, Ratio(1, 4), records);
    CHECK(rep.verdict == StabilityVerdict::weakly_stable);
    CHECK(rep.cross.edges[0].size() == 16);
}
