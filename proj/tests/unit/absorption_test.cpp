#include <doctest.h>

#include <set>

#include "tdg/absorption.hpp"
#include "tdg/rng.hpp"

using namespace tdg;

namespace {

// All edges present in all colors: every segment absorbs everything.
DigraphCollection all_complete(int n, int m) {
    return DigraphCollection(std::vector<Digraph>(static_cast<std::size_t>(m),
                                                  Digraph::complete(n)));
}

RainbowCertificate make_cycle(const std::vector<int>& verts, const std::vector<int>& cols) {
    return RainbowCertificate::from_cycle(CertKind::cycle, verts, cols);
}

// Brute-force maximum disjoint subset over the returned segments.
int brute_max_disjoint(const std::vector<AbsorberWitness>& ws) {
    const int k = static_cast<int>(ws.size());
    int best = 0;
    for (int mask = 0; mask < (1 << k); ++mask) {
        std::set<int> used;
        bool ok = true;
        int count = 0;
        for (int i = 0; i < k && ok; ++i) {
            if (!(mask & (1 << i))) continue;
            ++count;
            for (int v : ws[i].segment)
                if (!used.insert(v).second) ok = false;
        }
        if (ok) best = std::max(best, count);
    }
    return best;
}

}  // namespace

TEST_CASE("absorbing path predicate, both types") {
    // 8 vertices; cycle on 0..5, targets v=6, u=7
    const int n = 8;
    DigraphCollection dc(n, n);
    // segment 0->1->2->3 with colors 0,1,2
    dc.member(0).add_edge(0, 1);
    dc.member(1).add_edge(1, 2);
    dc.member(2).add_edge(2, 3);
    // Type-I for (v=6, u=7) with c=5: needs 1->6 in color 5 and 7->2 in color 1
    dc.member(5).add_edge(1, 6);
    dc.member(1).add_edge(7, 2);
    CHECK(is_absorbing_path(dc, AbsorberKind::type_I, {0, 1, 2, 3}, {0, 1, 2}, 5, 6, 7));

    // delete the (u, v3) edge: false, not an error
    dc.member(1).remove_edge(7, 2);
    CHECK(!is_absorbing_path(dc, AbsorberKind::type_I, {0, 1, 2, 3}, {0, 1, 2}, 5, 6, 7));
    dc.member(1).add_edge(7, 2);

    // Type-II mirror: needs 6->2 in color 5 and 1->7 in color 1
    dc.member(5).add_edge(6, 2);
    dc.member(1).add_edge(1, 7);
    CHECK(is_absorbing_path(dc, AbsorberKind::type_II, {0, 1, 2, 3}, {0, 1, 2}, 5, 6, 7));

    // precondition violations raise invalid-witness, distinct from false
    CHECK_THROWS_AS(is_absorbing_path(dc, AbsorberKind::type_I, {0, 1, 2, 3}, {0, 1, 2}, 5, 1, 7),
                    Error);  // v on the segment
    CHECK_THROWS_AS(is_absorbing_path(dc, AbsorberKind::type_I, {0, 1, 2, 3}, {0, 1, 1}, 5, 6, 7),
                    Error);  // not rainbow
    CHECK_THROWS_AS(is_absorbing_path(dc, AbsorberKind::type_I, {0, 1, 2, 3}, {0, 1, 2}, 1, 6, 7),
                    Error);  // c on the segment
}

TEST_CASE("enumerate_absorbers with engineered counts") {
    // cycle of 8 on an all-complete collection: every segment qualifies,
    // max disjoint = floor(8/4) = 2
    const int n = 12;
    const DigraphCollection dc = all_complete(n, n);
    std::vector<int> verts = {0, 1, 2, 3, 4, 5, 6, 7};
    std::vector<int> cols = {0, 1, 2, 3, 4, 5, 6, 7};
    const RainbowCertificate cycle = make_cycle(verts, cols);
    const AbsorberScan scan = enumerate_absorbers(dc, cycle, 9, 10, 11, AbsorberKind::type_I);
    CHECK(scan.witnesses.size() == 8);
    CHECK(scan.max_disjoint == 2);
    CHECK(brute_max_disjoint(scan.witnesses) == 2);

    // engineered: exactly two disjoint segments qualify
    DigraphCollection sparse(n, n);
    for (std::size_t k = 0; k < verts.size(); ++k)
        sparse.member(cols[k]).add_edge(verts[k], verts[(k + 1) % verts.size()]);
    // qualify segments starting at 0 (vertices 0,1,2,3) and at 4 (4,5,6,7)
    sparse.member(9).add_edge(1, 10);   // c in L(v2 v) for segment 0
    sparse.member(1).add_edge(11, 2);   // col(v2 v3) in L(u v3)
    sparse.member(9).add_edge(5, 10);   // segment 4
    sparse.member(5).add_edge(11, 6);
    const RainbowCertificate cycle2 = make_cycle(verts, cols);
    const AbsorberScan scan2 = enumerate_absorbers(sparse, cycle2, 9, 10, 11,
                                                   AbsorberKind::type_I);
    CHECK(scan2.witnesses.size() == 2);
    CHECK(scan2.max_disjoint == 2);

    // no qualifying segment
    const AbsorberScan scan3 = enumerate_absorbers(sparse, cycle2, 9, 11, 10,
                                                   AbsorberKind::type_I);
    CHECK(scan3.witnesses.empty());
    CHECK(scan3.max_disjoint == 0);
}

TEST_CASE("max disjoint segments equals subset brute force") {
    Rng rng(515);
    for (int trial = 0; trial < 200; ++trial) {
        const int t = 8 + static_cast<int>(rng.next_below(13));  // cycle length 8..20
        std::vector<int> starts;
        for (int s = 0; s < t; ++s)
            if (rng.next_bool(0.4)) starts.push_back(s);
        if (starts.size() > 18) starts.resize(18);
        // brute force over subsets of windows
        int best = 0;
        const int k = static_cast<int>(starts.size());
        for (int mask = 0; mask < (1 << k); ++mask) {
            std::set<int> used;
            bool ok = true;
            int count = 0;
            for (int i = 0; i < k && ok; ++i) {
                if (!(mask & (1 << i))) continue;
                ++count;
                for (int off = 0; off < 4; ++off)
                    if (!used.insert((starts[i] + off) % t).second) ok = false;
            }
            if (ok) best = std::max(best, count);
        }
        CHECK(max_disjoint_segments(starts, t) == best);
    }
}

TEST_CASE("absorb: single vertex") {
    const int n = 10;
    const DigraphCollection dc = all_complete(n, n);
    const RainbowCertificate cycle = make_cycle({0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 4, 5});
    const AbsorberScan scan = enumerate_absorbers(dc, cycle, 7, 8, 8, AbsorberKind::type_I);
    REQUIRE(!scan.witnesses.empty());
    const RainbowCertificate bigger = absorb(dc, cycle, scan.witnesses.front(), {{8}, {}});
    CHECK(validate_certificate(dc, bigger).pass);
    CHECK(bigger.edges.size() == 7);
    std::set<int> cols(bigger.colors.begin(), bigger.colors.end());
    CHECK(cols.count(7) == 1);
    CHECK(cols.size() == 7);
}

TEST_CASE("absorb: pair with payload path, both types") {
    const int n = 12;
    const DigraphCollection dc = all_complete(n, n);
    const RainbowCertificate cycle = make_cycle({0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 4, 5});

    // Type-I: payload v=8 -> 9 -> 10 = u with fresh colors 7, 9
    {
        const AbsorberScan scan = enumerate_absorbers(dc, cycle, 6, 8, 10, AbsorberKind::type_I);
        REQUIRE(!scan.witnesses.empty());
        const RainbowCertificate bigger =
            absorb(dc, cycle, scan.witnesses.front(), {{8, 9, 10}, {7, 9}});
        CHECK(validate_certificate(dc, bigger).pass);
        CHECK(bigger.edges.size() == cycle.edges.size() + 3);  // v, one interior, u
        const Vset vs = bigger.vertex_set(n);
        CHECK(vs.count() == 9);
        std::set<int> cols(bigger.colors.begin(), bigger.colors.end());
        CHECK(cols == std::set<int>({0, 1, 2, 3, 4, 5, 6, 7, 9}));
    }
    // two interior payload vertices: cycle length +4
    {
        const AbsorberScan scan = enumerate_absorbers(dc, cycle, 6, 8, 11, AbsorberKind::type_I);
        REQUIRE(!scan.witnesses.empty());
        const RainbowCertificate bigger =
            absorb(dc, cycle, scan.witnesses.front(), {{8, 9, 10, 11}, {7, 9, 10}});
        CHECK(validate_certificate(dc, bigger).pass);
        CHECK(bigger.edges.size() == cycle.edges.size() + 4);
    }
    // Type-II: payload runs u -> v
    {
        const AbsorberScan scan = enumerate_absorbers(dc, cycle, 6, 8, 10, AbsorberKind::type_II);
        REQUIRE(!scan.witnesses.empty());
        const RainbowCertificate bigger =
            absorb(dc, cycle, scan.witnesses.front(), {{10, 9, 8}, {7, 9}});
        CHECK(validate_certificate(dc, bigger).pass);
        CHECK(bigger.edges.size() == cycle.edges.size() + 3);
    }
    // reusing a cycle color in the payload is an error
    {
        const AbsorberScan scan = enumerate_absorbers(dc, cycle, 6, 8, 10, AbsorberKind::type_I);
        CHECK_THROWS_AS(absorb(dc, cycle, scan.witnesses.front(), {{8, 9, 10}, {0, 9}}), Error);
    }
}

TEST_CASE("absorb is local outside the rewritten window") {
    const int n = 10;
    const DigraphCollection dc = all_complete(n, n);
    const RainbowCertificate cycle = make_cycle({0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 4, 5});
    const AbsorberScan scan = enumerate_absorbers(dc, cycle, 7, 8, 8, AbsorberKind::type_I);
    REQUIRE(!scan.witnesses.empty());
    const AbsorberWitness& w = scan.witnesses.front();
    const RainbowCertificate bigger = absorb(dc, cycle, w, {{8}, {}});
    // every original edge except (v2, v3) must survive with its color
    for (std::size_t k = 0; k < cycle.edges.size(); ++k) {
        if (cycle.edges[k] == std::make_pair(w.segment[1], w.segment[2])) continue;
        bool found = false;
        for (std::size_t j = 0; j < bigger.edges.size(); ++j)
            if (bigger.edges[j] == cycle.edges[k] && bigger.colors[j] == cycle.colors[k])
                found = true;
        CHECK(found);
    }
}

TEST_CASE("absorb chains keep validating") {
    const int n = 16;
    const DigraphCollection dc = all_complete(n, n);
    RainbowCertificate cycle = make_cycle({0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 4, 5});
    int next_vertex = 6;
    int next_color = 6;
    for (int step = 0; step < 5; ++step) {
        const AbsorberScan scan =
            enumerate_absorbers(dc, cycle, next_color, next_vertex, next_vertex,
                                AbsorberKind::type_I);
        REQUIRE(!scan.witnesses.empty());
        cycle = absorb(dc, cycle, scan.witnesses.front(), {{next_vertex}, {}});
        CHECK(validate_certificate(dc, cycle).pass);
        ++next_vertex;
        ++next_color;
    }
    CHECK(cycle.edges.size() == 11);
}

TEST_CASE("enumerator matches a brute-force segment re-scan") {
    Rng rng(8088);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 12;
        DigraphCollection dc(n, n);
        for (int c = 0; c < n; ++c)
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v)
                    if (u != v && rng.next_bool(0.5)) dc.member(c).add_edge(u, v);
        // build a rainbow cycle on vertices 0..7 if the edges allow; else force it
        std::vector<int> verts = {0, 1, 2, 3, 4, 5, 6, 7};
        std::vector<int> cols = {0, 1, 2, 3, 4, 5, 6, 7};
        for (std::size_t k = 0; k < verts.size(); ++k) {
            const int u = verts[k], v = verts[(k + 1) % verts.size()];
            if (!dc.has_edge(cols[k], u, v)) dc.member(cols[k]).add_edge(u, v);
        }
        const RainbowCertificate cycle = make_cycle(verts, cols);
        const int c = 8 + static_cast<int>(rng.next_below(4));
        const int v = 8 + static_cast<int>(rng.next_below(4));
        int u = 8 + static_cast<int>(rng.next_below(4));
        const AbsorberKind kind = rng.next_bool(0.5) ? AbsorberKind::type_I
                                                     : AbsorberKind::type_II;
        const AbsorberScan scan = enumerate_absorbers(dc, cycle, c, v, u, kind);
        // brute force re-scan
        int count = 0;
        for (int s = 0; s < 8; ++s) {
            std::vector<int> seg = {verts[s], verts[(s + 1) % 8], verts[(s + 2) % 8],
                                    verts[(s + 3) % 8]};
            std::vector<int> sc = {cols[s], cols[(s + 1) % 8], cols[(s + 2) % 8]};
            if (seg[1] == v || seg[2] == v || seg[0] == v || seg[3] == v) continue;
            if (seg[1] == u || seg[2] == u || seg[0] == u || seg[3] == u) continue;
            const bool hit = kind == AbsorberKind::type_I
                                 ? dc.has_edge(c, seg[1], v) && dc.has_edge(sc[1], u, seg[2])
                                 : dc.has_edge(c, v, seg[2]) && dc.has_edge(sc[1], seg[1], u);
            if (hit) ++count;
        }
        CHECK(static_cast<int>(scan.witnesses.size()) == count);
        for (const AbsorberWitness& w : scan.witnesses)
            CHECK(is_absorbing_path(dc, kind, w.segment, w.segment_colors, c, v, u));
    }
}

TEST_CASE("verify_absorbing_cycle parameter checks") {
    const int n = 12;
    const DigraphCollection dc = all_complete(n, n);
    const RainbowCertificate cycle = make_cycle({0, 1, 2, 3, 4, 5, 6, 7}, {0, 1, 2, 3, 4, 5, 6, 7});
    std::vector<int> cset = {8, 9, 10, 11};
    std::vector<Vset> good(n);
    for (int c = 0; c < n; ++c) {
        good[c] = Vset(n);
        good[c].fill();
    }
    // all-complete: every unused color absorbs everything; off-cycle pairs
    // see 2 disjoint segments and on-cycle u's still see 1, so gamma' = 1/n
    // passes with delta' = 0.
    AbsorbingCycleParams ok_params{Ratio(1, 4), Ratio(0, 1), Ratio(3, 4), Ratio(1, 12)};
    const AbsorbReport ok = verify_absorbing_cycle(dc, cycle, cset, ok_params, good,
                                                   AbsorberKind::type_I);
    CHECK(ok.pass);

    // gamma' = 1 cannot hold: pigeonhole in a gamma*n cycle
    AbsorbingCycleParams bad_params{Ratio(1, 4), Ratio(0, 1), Ratio(3, 4), Ratio(1, 1)};
    CHECK(!verify_absorbing_cycle(dc, cycle, cset, bad_params, good, AbsorberKind::type_I).pass);

    // |C| below delta*n fails the size clause
    AbsorbingCycleParams small_c{Ratio(1, 2), Ratio(0, 1), Ratio(3, 4), Ratio(1, 12)};
    const AbsorbReport sc = verify_absorbing_cycle(dc, cycle, cset, small_c, good,
                                                   AbsorberKind::type_I);
    CHECK(!sc.pass);
    CHECK(sc.checks.front().clause == "color-set-size");
}

TEST_CASE("bipartite absorbing edges") {
    const int n = 3;
    BipartiteCollection bc(n, 3);
    // matching edge (w1=0, w2=0) in color 0; target u=1 (left), v=1 (right)
    bc.add_edge(0, 0, 0);
    bc.add_edge(2, 0, 1);  // c=2 in L(w1 v)
    bc.add_edge(0, 1, 0);  // col(w1w2) in L(u w2)
    CHECK(is_absorbing_edge(bc, 0, 0, 0, 2, 1, 1));

    RainbowCertificate matching;
    matching.kind = CertKind::matching;
    matching.edges = {{0, 0}};
    matching.colors = {0};
    AbsorberWitness w;
    w.kind = AbsorberKind::bip_edge;
    w.segment = {0, 0};
    w.segment_colors = {0};
    w.color = 2;
    w.u = 1;
    w.v = 1;
    const RainbowCertificate grown = absorb_edge(bc, matching, w);
    CHECK(validate_certificate(bc, grown).pass);
    CHECK(grown.edges.size() == 2);
    std::set<int> cols(grown.colors.begin(), grown.colors.end());
    CHECK(cols == std::set<int>({0, 2}));

    // missing (w1, v) in color c: false
    BipartiteCollection bc2 = bc;
    bc2.remove_edge(2, 0, 1);
    CHECK(!is_absorbing_edge(bc2, 0, 0, 0, 2, 1, 1));
}

TEST_CASE("verify_absorbing_matching") {
    const int n = 8;
    BipartiteCollection bc(n, n);
    for (int c = 0; c < n; ++c)
        for (int l = 0; l < n; ++l)
            for (int r = 0; r < n; ++r) bc.add_edge(c, l, r);
    RainbowCertificate matching;
    matching.kind = CertKind::matching;
    for (int i = 0; i < 4; ++i) {
        matching.edges.emplace_back(i, i);
        matching.colors.push_back(i);
    }
    std::vector<int> cset = {4, 5};
    std::vector<Vset> good(n);
    for (int c = 0; c < n; ++c) {
        good[c] = Vset(n);
        good[c].fill();
    }
    AbsorbingCycleParams ok_params{Ratio(1, 4), Ratio(0, 1), Ratio(1, 2), Ratio(3, 8)};
    CHECK(verify_absorbing_matching(bc, matching, cset, ok_params, good).pass);

    // pigeonhole: gamma' * n above the matching size
    AbsorbingCycleParams bad{Ratio(1, 4), Ratio(0, 1), Ratio(1, 2), Ratio(7, 8)};
    CHECK(!verify_absorbing_matching(bc, matching, cset, bad, good).pass);

    AbsorbingCycleParams small_c{Ratio(1, 2), Ratio(0, 1), Ratio(1, 2), Ratio(1, 8)};
    const AbsorbReport rep = verify_absorbing_matching(bc, matching, cset, small_c, good);
    CHECK(!rep.pass);
}

TEST_CASE("fuzzed absorb soundness") {
    Rng rng(6161);
    int performed = 0;
    for (int trial = 0; trial < 400 && performed < 300; ++trial) {
        const int n = 10 + static_cast<int>(rng.next_below(5));
        DigraphCollection dc(n, n);
        for (int c = 0; c < n; ++c)
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v)
                    if (u != v && rng.next_bool(0.75)) dc.member(c).add_edge(u, v);
        std::vector<int> verts = {0, 1, 2, 3, 4, 5};
        std::vector<int> cols = {0, 1, 2, 3, 4, 5};
        for (std::size_t k = 0; k < verts.size(); ++k)
            if (!dc.has_edge(cols[k], verts[k], verts[(k + 1) % 6]))
                dc.member(cols[k]).add_edge(verts[k], verts[(k + 1) % 6]);
        const RainbowCertificate cycle = make_cycle(verts, cols);
        const AbsorberKind kind = rng.next_bool(0.5) ? AbsorberKind::type_I
                                                     : AbsorberKind::type_II;
        const bool pair = rng.next_bool(0.5);
        const int v = 6, u = pair ? 7 : 6, c = 6;
        const AbsorberScan scan = enumerate_absorbers(dc, cycle, c, v, u, kind);
        if (scan.witnesses.empty()) continue;
        Payload payload;
        if (pair) {
            const int front = kind == AbsorberKind::type_I ? v : u;
            const int back = kind == AbsorberKind::type_I ? u : v;
            if (rng.next_bool(0.5)) {
                payload = {{front, 8, back}, {7, 8}};
                bool feasible = dc.has_edge(7, front, 8) && dc.has_edge(8, 8, back);
                if (!feasible) continue;
            } else {
                payload = {{front, back}, {7}};
                if (!dc.has_edge(7, front, back)) continue;
            }
        } else {
            payload = {{v}, {}};
        }
        const std::size_t before_v = cycle.vertex_list().size();
        const RainbowCertificate after = absorb(dc, cycle, scan.witnesses.front(), payload);
        ++performed;
        CHECK(validate_certificate(dc, after).pass);
        CHECK(after.vertex_list().size() == before_v + payload.vertices.size());
        CHECK(after.colors.size() == cycle.colors.size() + payload.colors.size() + 1);
    }
    CHECK(performed >= 100);
}
