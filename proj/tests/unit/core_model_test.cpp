#include <doctest.h>

#include "tdg/digraph.hpp"
#include "tdg/certificate.hpp"
#include "tdg/json_io.hpp"
#include "tdg/ratio.hpp"
#include "tdg/rng.hpp"

using namespace tdg;

namespace {

DigraphCollection copies(const Digraph& d, int m) {
    return DigraphCollection(std::vector<Digraph>(static_cast<std::size_t>(m), d));
}

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

}  // namespace

TEST_CASE("ratio parsing and exact comparisons") {
    CHECK(parse_ratio("0.125") == Ratio(1, 8));
    CHECK(parse_ratio("1/3") == Ratio(1, 3));
    CHECK(parse_ratio("-0.05") == Ratio(-1, 20));
    CHECK(parse_ratio("2") == Ratio(2, 1));
    CHECK(Ratio(1, 2).ceil_scaled(5) == 3);
    CHECK(Ratio(1, 2).floor_scaled(5) == 2);
    CHECK(Ratio(1, 2).round_scaled(5) == 3);  // half-up
    CHECK(count_at_least(3, Ratio(1, 2), 6));
    CHECK(!count_at_least(2, Ratio(1, 2), 6));
    CHECK(count_at_most(3, Ratio(1, 2), 6));
    CHECK((Ratio(1, 2) - Ratio(1, 8) * Ratio(2, 1)) == Ratio(1, 4));
}

TEST_CASE("semi-degree basics") {
    CHECK(semi_degree(Digraph::complete(5)) == 4);

    Digraph iso(4);
    iso.add_edge(0, 1);
    iso.add_edge(1, 0);
    iso.add_edge(1, 2);
    iso.add_edge(2, 1);
    iso.add_edge(0, 2);
    iso.add_edge(2, 0);  // vertex 3 isolated
    CHECK(semi_degree(iso) == 0);

    CHECK(semi_degree(two_disjoint_complete(2)) == 1);
    CHECK(semi_degree(Digraph(1)) == 0);
}

TEST_CASE("collection semi-degree") {
    CHECK(collection_semi_degree(copies(Digraph::complete(3), 3)) == 2);
    std::vector<Digraph> members(3, Digraph::complete(3));
    Digraph source(3);  // vertex 2 has out-edges only
    source.add_edge(0, 1);
    source.add_edge(1, 0);
    source.add_edge(2, 0);
    source.add_edge(2, 1);
    members[1] = source;
    CHECK(collection_semi_degree(DigraphCollection(members)) == 0);
    CHECK(collection_semi_degree(copies(two_disjoint_complete(2), 4)) == 1);
}

TEST_CASE("color lists") {
    DigraphCollection dc(3, 4);
    dc.member(1).add_edge(0, 1);
    dc.member(3).add_edge(0, 1);
    const ColorList cl = color_list(dc, 0, 1);
    CHECK(cl.colors == std::vector<int>{1, 3});
    CHECK(color_list(dc, 1, 0).colors.empty());
    CHECK(color_list(copies(Digraph::complete(3), 5), 0, 2).colors.size() == 5);
    CHECK_THROWS_AS(color_list(dc, 1, 1), Error);
}

TEST_CASE("transpose consistency under random edits") {
    Rng rng(42);
    for (int round = 0; round < 50; ++round) {
        const int n = 2 + static_cast<int>(rng.next_below(30));
        Digraph d(n);
        for (int e = 0; e < n; ++e) {
            const int u = static_cast<int>(rng.next_below(n));
            int v = static_cast<int>(rng.next_below(n - 1));
            if (v >= u) ++v;
            if (rng.next_bool(0.8)) d.add_edge(u, v);
            else d.remove_edge(u, v);
        }
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                CHECK(d.has_edge(u, v) == d.in_neighbors(v).test(u));
            }
        CHECK(d.transpose().transpose() == d);
    }
}

TEST_CASE("validate_certificate clauses") {
    Digraph digon(2);
    digon.add_edge(0, 1);
    digon.add_edge(1, 0);
    const DigraphCollection dc = copies(digon, 2);

    RainbowCertificate good = RainbowCertificate::from_cycle(CertKind::hamilton_cycle, {0, 1},
                                                             {0, 1});
    CHECK(validate_certificate(dc, good).pass);

    RainbowCertificate repeat = good;
    repeat.colors = {0, 0};
    const ValidationReport r1 = validate_certificate(dc, repeat);
    CHECK(!r1.pass);
    bool saw_injectivity = false;
    for (const auto& issue : r1.issues) saw_injectivity |= issue.clause == "injectivity";
    CHECK(saw_injectivity);

    // cycle skipping a vertex
    const DigraphCollection dc3 = copies(Digraph::complete(3), 3);
    RainbowCertificate skip = RainbowCertificate::from_cycle(CertKind::hamilton_cycle, {0, 1},
                                                             {0, 1});
    const ValidationReport r2 = validate_certificate(dc3, skip);
    CHECK(!r2.pass);

    // membership failure
    DigraphCollection sparse(2, 2);
    sparse.member(0).add_edge(0, 1);
    sparse.member(1).add_edge(0, 1);
    RainbowCertificate member = good;
    const ValidationReport r3 = validate_certificate(sparse, member);
    CHECK(!r3.pass);
    bool saw_membership = false;
    for (const auto& issue : r3.issues) saw_membership |= issue.clause == "membership";
    CHECK(saw_membership);
}

TEST_CASE("restricted collection") {
    const DigraphCollection dc = copies(Digraph::complete(4), 3);
    const RestrictedCollection full = restricted_collection(dc, {0, 1, 2, 3}, {0, 1, 2});
    CHECK(full.collection == dc);

    const RestrictedCollection single = restricted_collection(dc, {2}, {0, 1, 2});
    CHECK(single.collection.order() == 1);
    CHECK(single.collection.member(0).edge_count() == 0);

    const RestrictedCollection fewer = restricted_collection(dc, {0, 1, 2, 3}, {0, 2});
    CHECK(fewer.collection.colors() == 2);
    CHECK(fewer.color_map == std::vector<int>{0, 2});

    CHECK_THROWS_AS(restricted_collection(dc, {}, {0}), Error);
}

TEST_CASE("characteristic bipartite graph") {
    Digraph digon(2);
    digon.add_edge(0, 1);
    digon.add_edge(1, 0);
    const BipartiteCollection bd = characteristic_bipartite(digon);
    CHECK(bd.has_edge(0, 0, 1));
    CHECK(bd.has_edge(0, 1, 0));
    CHECK(!bd.has_edge(0, 0, 0));

    CHECK(characteristic_bipartite(Digraph(3)).edge_count(0) == 0);

    const Digraph k4 = Digraph::complete(4);
    const BipartiteCollection bk = characteristic_bipartite(k4);
    CHECK(bk.edge_count(0) == 12);  // complete bipartite minus the diagonal
    for (int v = 0; v < 4; ++v) {
        CHECK(bk.left_degree(0, v) == k4.out_degree(v));
        CHECK(bk.right_degree(0, v) == k4.in_degree(v));
    }
}

TEST_CASE("instance json round trip") {
    Rng rng(7);
    for (int round = 0; round < 20; ++round) {
        const int n = 2 + static_cast<int>(rng.next_below(6));
        const int m = 1 + static_cast<int>(rng.next_below(6));
        DigraphCollection dc(n, m);
        for (int c = 0; c < m; ++c)
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v)
                    if (u != v && rng.next_bool(0.4)) dc.member(c).add_edge(u, v);
        const Json j = collection_to_json(dc);
        CHECK(collection_from_json(j) == dc);
    }
}

TEST_CASE("certificate json uses 1-based colors and cyclic form") {
    const RainbowCertificate cert =
        RainbowCertificate::from_cycle(CertKind::hamilton_cycle, {0, 2, 1}, {2, 0, 1});
    const Json j = certificate_to_json(cert);
    CHECK(j["kind"] == "hamilton-cycle");
    CHECK(j["cycle"] == Json::array({0, 2, 1}));
    CHECK(j["colors"] == Json::array({3, 1, 2}));
    const RainbowCertificate back = certificate_from_json(j);
    CHECK(back.edges == cert.edges);
    CHECK(back.colors == cert.colors);
}
