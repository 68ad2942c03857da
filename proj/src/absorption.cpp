#include "tdg/absorption.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tdg {

std::string absorber_kind_name(AbsorberKind k) {
    switch (k) {
        case AbsorberKind::type_I: return "type-I";
        case AbsorberKind::type_II: return "type-II";
        case AbsorberKind::bip_edge: return "bip-edge";
    }
    return "?";
}

AbsorberKind absorber_kind_from_name(const std::string& s) {
    if (s == "type-I" || s == "I") return AbsorberKind::type_I;
    if (s == "type-II" || s == "II") return AbsorberKind::type_II;
    if (s == "bip-edge") return AbsorberKind::bip_edge;
    fail(ErrorKind::invalid_argument, "unknown absorber kind: " + s);
}

bool is_absorbing_path(const DigraphCollection& dc, AbsorberKind kind,
                       const std::vector<int>& segment, const std::vector<int>& segment_colors,
                       int c, int v, int u) {
    if (kind == AbsorberKind::bip_edge)
        fail(ErrorKind::invalid_argument, "is_absorbing_path: use is_absorbing_edge for bip-edge");
    if (segment.size() != 4 || segment_colors.size() != 3)
        fail(ErrorKind::invalid_witness, "absorbing path needs 4 vertices and 3 colors");
    const int n = dc.order();
    for (int x : segment)
        if (x < 0 || x >= n) fail(ErrorKind::invalid_witness, "segment vertex out of range");
    if (v < 0 || v >= n || u < 0 || u >= n)
        fail(ErrorKind::invalid_witness, "target vertex out of range");
    if (c < 0 || c >= dc.colors()) fail(ErrorKind::invalid_witness, "target color out of range");
    std::set<int> distinct(segment.begin(), segment.end());
    if (distinct.size() != 4) fail(ErrorKind::invalid_witness, "segment vertices must be distinct");
    if (distinct.count(v) || distinct.count(u))
        fail(ErrorKind::invalid_witness, "target vertices must avoid the segment");
    std::set<int> colset(segment_colors.begin(), segment_colors.end());
    if (colset.size() != 3) fail(ErrorKind::invalid_witness, "segment must be rainbow");
    if (colset.count(c)) fail(ErrorKind::invalid_witness, "absorbed color already on the segment");
    for (int k3 = 0; k3 < 3; ++k3)
        if (!dc.has_edge(segment_colors[k3], segment[k3], segment[k3 + 1]))
            fail(ErrorKind::invalid_witness, "segment is not a rainbow directed path in dc");

    const int v2 = segment[1], v3 = segment[2];
    const int col23 = segment_colors[1];
    if (kind == AbsorberKind::type_I)
        return dc.has_edge(c, v2, v) && dc.has_edge(col23, u, v3);
    return dc.has_edge(c, v, v3) && dc.has_edge(col23, v2, u);
}

int max_disjoint_segments(const std::vector<int>& starts, int t) {
    if (starts.empty()) return 0;
    if (t < 4) return 0;
    int best = 0;
    for (int anchor : starts) {
        // Choose the window at `anchor`, unroll the rest of the circle into a
        // line and run earliest-end scheduling there.
        std::vector<std::pair<int, int>> intervals;  // (end, start) in unrolled coords
        for (int s : starts) {
            if (s == anchor) continue;
            const int rel = ((s - anchor) % t + t) % t;
            if (rel < 4 || rel > t - 4) continue;  // overlaps the anchor window
            intervals.emplace_back(rel + 3, rel);
        }
        std::sort(intervals.begin(), intervals.end());
        int count = 1;
        int last_end = 3;  // anchor occupies 0..3
        for (const auto& [end, start] : intervals) {
            if (start > last_end) {
                ++count;
                last_end = end;
            }
        }
        best = std::max(best, count);
    }
    return best;
}

AbsorberScan enumerate_absorbers(const DigraphCollection& dc, const RainbowCertificate& cycle,
                                 int c, int v, int u, AbsorberKind kind) {
    const ValidationReport vr = validate_certificate(dc, cycle);
    if (!vr.pass) fail(ErrorKind::invalid_argument, "enumerate_absorbers: invalid cycle: " +
                                                        vr.issues.front().detail);
    if (cycle.kind != CertKind::cycle && cycle.kind != CertKind::hamilton_cycle)
        fail(ErrorKind::invalid_argument, "enumerate_absorbers: certificate is not a cycle");
    const Vset cyc_vs = cycle.vertex_set(dc.order());
    if (cyc_vs.test(v) || cyc_vs.test(u))
        fail(ErrorKind::invalid_argument, "enumerate_absorbers: v,u must avoid the cycle");
    for (int col : cycle.colors)
        if (col == c) fail(ErrorKind::invalid_argument,
                           "enumerate_absorbers: c already appears on the cycle");

    const std::vector<int> order = cycle.cycle_order();
    const int t = static_cast<int>(order.size());
    // color of edge (order[k], order[k+1])
    std::map<std::pair<int, int>, int> edge_color;
    for (std::size_t k = 0; k < cycle.edges.size(); ++k) edge_color[cycle.edges[k]] = cycle.colors[k];

    AbsorberScan scan;
    std::vector<int> starts;
    for (int s = 0; s < t; ++s) {
        if (t < 4) break;
        std::vector<int> seg = {order[s], order[(s + 1) % t], order[(s + 2) % t],
                                order[(s + 3) % t]};
        std::vector<int> cols = {edge_color.at({seg[0], seg[1]}), edge_color.at({seg[1], seg[2]}),
                                 edge_color.at({seg[2], seg[3]})};
        if (is_absorbing_path(dc, kind, seg, cols, c, v, u)) {
            AbsorberWitness w;
            w.kind = kind;
            w.segment = seg;
            w.segment_colors = cols;
            w.color = c;
            w.v = v;
            w.u = u;
            scan.witnesses.push_back(std::move(w));
            starts.push_back(s);
        }
    }
    scan.max_disjoint = max_disjoint_segments(starts, t);
    return scan;
}

RainbowCertificate absorb(const DigraphCollection& dc, const RainbowCertificate& cycle,
                          const AbsorberWitness& witness, const Payload& payload) {
    if (witness.kind == AbsorberKind::bip_edge)
        fail(ErrorKind::invalid_argument, "absorb: bip-edge witnesses use absorb_edge");
    // Re-check the witness against the collection.
    if (!is_absorbing_path(dc, witness.kind, witness.segment, witness.segment_colors,
                           witness.color, witness.v, witness.u))
        fail(ErrorKind::invalid_witness, "absorb: witness conditions do not hold");

    const int n = dc.order();
    if (payload.vertices.empty()) fail(ErrorKind::invalid_argument, "absorb: empty payload");
    if (payload.colors.size() + 1 != payload.vertices.size())
        fail(ErrorKind::invalid_argument, "absorb: payload needs |colors| == |vertices|-1");
    const bool single = witness.v == witness.u;
    if (single) {
        if (payload.vertices.size() != 1 || payload.vertices[0] != witness.v)
            fail(ErrorKind::invalid_argument, "absorb: single-vertex payload must be {v}");
    } else {
        const int front_expect = witness.kind == AbsorberKind::type_I ? witness.v : witness.u;
        const int back_expect = witness.kind == AbsorberKind::type_I ? witness.u : witness.v;
        if (payload.vertices.front() != front_expect || payload.vertices.back() != back_expect)
            fail(ErrorKind::invalid_argument,
                 "absorb: payload endpoints must match the witness target order");
    }

    // Disjointness of vertices and freshness of colors.
    const Vset cyc_vs = cycle.vertex_set(n);
    std::set<int> pv;
    for (int x : payload.vertices) {
        if (x < 0 || x >= n) fail(ErrorKind::invalid_argument, "absorb: payload vertex out of range");
        if (cyc_vs.test(x))
            fail(ErrorKind::invalid_argument,
                 "absorb: payload vertex " + std::to_string(x) + " already on the cycle");
        if (!pv.insert(x).second)
            fail(ErrorKind::invalid_argument,
                 "absorb: payload repeats vertex " + std::to_string(x));
    }
    std::set<int> used_cols(cycle.colors.begin(), cycle.colors.end());
    if (used_cols.count(witness.color))
        fail(ErrorKind::invalid_argument, "absorb: color c already used by the cycle");
    std::set<int> pc;
    for (int col : payload.colors) {
        if (col < 0 || col >= dc.colors())
            fail(ErrorKind::invalid_argument, "absorb: payload color out of range");
        if (used_cols.count(col) || col == witness.color)
            fail(ErrorKind::invalid_argument,
                 "absorb: payload color " + std::to_string(col + 1) + " clashes");
        if (!pc.insert(col).second)
            fail(ErrorKind::invalid_argument,
                 "absorb: payload repeats color " + std::to_string(col + 1));
    }
    for (std::size_t k = 0; k + 1 < payload.vertices.size(); ++k)
        if (!dc.has_edge(payload.colors[k], payload.vertices[k], payload.vertices[k + 1]))
            fail(ErrorKind::invalid_argument, "absorb: payload is not a rainbow path in dc");

    const int v2 = witness.segment[1], v3 = witness.segment[2];
    const int col23 = witness.segment_colors[1];

    RainbowCertificate out;
    out.kind = CertKind::cycle;
    for (std::size_t k = 0; k < cycle.edges.size(); ++k) {
        const auto& e = cycle.edges[k];
        if (e.first == v2 && e.second == v3) continue;  // the rewritten window
        out.edges.push_back(e);
        out.colors.push_back(cycle.colors[k]);
    }
    auto push = [&](int a, int b, int col) {
        out.edges.emplace_back(a, b);
        out.colors.push_back(col);
    };
    if (witness.kind == AbsorberKind::type_I) {
        // v2 -> v [c], payload v..u, u -> v3 [col23]
        push(v2, payload.vertices.front(), witness.color);
        for (std::size_t k = 0; k + 1 < payload.vertices.size(); ++k)
            push(payload.vertices[k], payload.vertices[k + 1], payload.colors[k]);
        push(payload.vertices.back(), v3, col23);
    } else {
        // v2 -> u [col23], payload u..v, v -> v3 [c]
        push(v2, payload.vertices.front(), col23);
        for (std::size_t k = 0; k + 1 < payload.vertices.size(); ++k)
            push(payload.vertices[k], payload.vertices[k + 1], payload.colors[k]);
        push(payload.vertices.back(), v3, witness.color);
    }

    const ValidationReport vr = validate_certificate(dc, out);
    if (!vr.pass)
        fail(ErrorKind::internal, "absorb produced an invalid certificate: " +
                                      (vr.issues.empty() ? "?" : vr.issues.front().detail));
    return out;
}

AbsorbReport verify_absorbing_cycle(const DigraphCollection& dc, const RainbowCertificate& cycle,
                                    const std::vector<int>& color_set,
                                    const AbsorbingCycleParams& params,
                                    const std::vector<Vset>& good_vertices_per_color,
                                    AbsorberKind kind) {
    const int n = dc.order();
    AbsorbReport report;
    const ValidationReport vr = validate_certificate(dc, cycle);
    if (!vr.pass) fail(ErrorKind::invalid_argument, "verify_absorbing_cycle: invalid cycle");
    std::set<int> cycle_cols(cycle.colors.begin(), cycle.colors.end());
    for (int c : color_set) {
        if (c < 0 || c >= dc.colors())
            fail(ErrorKind::invalid_argument, "verify_absorbing_cycle: color out of range");
        if (cycle_cols.count(c))
            fail(ErrorKind::invalid_argument,
                 "verify_absorbing_cycle: color set overlaps col(cycle)");
    }
    if (static_cast<int>(good_vertices_per_color.size()) != dc.colors())
        fail(ErrorKind::invalid_argument,
             "verify_absorbing_cycle: need a good-vertex set per color");

    report.add("color-set-size",
               count_at_least(static_cast<std::int64_t>(color_set.size()), params.delta, n),
               "|C|=" + std::to_string(color_set.size()) + " vs delta*n");
    report.add("cycle-length",
               count_at_most(static_cast<std::int64_t>(cycle.vertex_list().size()), params.gamma,
                             n),
               "|V(cycle)|=" + std::to_string(cycle.vertex_list().size()) + " vs gamma*n");

    const Vset cyc_vs = cycle.vertex_set(n);
    const std::vector<int> order = cycle.cycle_order();
    const int t = static_cast<int>(order.size());
    std::map<std::pair<int, int>, int> edge_color;
    for (std::size_t k = 0; k < cycle.edges.size(); ++k) edge_color[cycle.edges[k]] = cycle.colors[k];
    struct Seg {
        int start;
        int vs[4];
        int cols[3];
    };
    std::vector<Seg> segs;
    for (int s = 0; s < t && t >= 4; ++s) {
        Seg sg;
        sg.start = s;
        for (int i = 0; i < 4; ++i) sg.vs[i] = order[(s + i) % t];
        for (int i = 0; i < 3; ++i) sg.cols[i] = edge_color.at({sg.vs[i], sg.vs[i + 1]});
        segs.push_back(sg);
    }

    auto disjoint_count = [&](int c, int v, int u) {
        std::vector<int> starts;
        for (const Seg& sg : segs) {
            if (v == sg.vs[0] || v == sg.vs[1] || v == sg.vs[2] || v == sg.vs[3]) continue;
            if (u == sg.vs[0] || u == sg.vs[1] || u == sg.vs[2] || u == sg.vs[3]) continue;
            const bool ok = kind == AbsorberKind::type_I
                                ? dc.has_edge(c, sg.vs[1], v) && dc.has_edge(sg.cols[1], u, sg.vs[2])
                                : dc.has_edge(c, v, sg.vs[2]) && dc.has_edge(sg.cols[1], sg.vs[1], u);
            if (ok) starts.push_back(sg.start);
        }
        return max_disjoint_segments(starts, t);
    };

    bool pair_ok = true, vv_ok = true;
    for (int c : color_set) {
        Vset good = good_vertices_per_color[c];
        good.subtract(cyc_vs);
        std::int64_t vv_failures = 0;
        for (int v = good.first(); v >= 0; v = good.next(v)) {
            std::int64_t u_failures = 0;
            for (int u = 0; u < n; ++u) {
                const int count = (u == v) ? disjoint_count(c, v, v) : disjoint_count(c, v, u);
                if (u == v) {
                    if (!count_at_least(count, params.gamma_prime, n)) ++vv_failures;
                } else if (!count_at_least(count, params.gamma_prime, n)) {
                    ++u_failures;
                }
            }
            report.worst_pair_failures = std::max(report.worst_pair_failures, u_failures);
            if (!count_at_most(u_failures, params.delta_prime, n)) pair_ok = false;
        }
        report.worst_vv_failures = std::max(report.worst_vv_failures, vv_failures);
        if (!count_at_most(vv_failures, params.delta_prime, n)) vv_ok = false;
    }
    report.add("pair-absorbers", pair_ok,
               "worst bad-u count " + std::to_string(report.worst_pair_failures) +
                   " vs delta'*n");
    report.add("vv-absorbers", vv_ok,
               "worst bad-(v,v) count " + std::to_string(report.worst_vv_failures) +
                   " vs delta'*n");
    return report;
}

bool is_absorbing_edge(const BipartiteCollection& bc, int w1, int w2, int edge_color, int c,
                       int u, int v) {
    const int n = bc.part_size();
    if (w1 < 0 || w1 >= n || w2 < 0 || w2 >= n || u < 0 || u >= n || v < 0 || v >= n)
        fail(ErrorKind::invalid_witness, "is_absorbing_edge: vertex out of range");
    if (edge_color < 0 || edge_color >= bc.colors() || c < 0 || c >= bc.colors())
        fail(ErrorKind::invalid_witness, "is_absorbing_edge: color out of range");
    if (!bc.has_edge(edge_color, w1, w2))
        fail(ErrorKind::invalid_witness, "is_absorbing_edge: w1w2 not present in its color");
    if (u == w1 || v == w2)
        fail(ErrorKind::invalid_witness, "is_absorbing_edge: (u,v) must avoid the edge");
    if (c == edge_color) fail(ErrorKind::invalid_witness, "is_absorbing_edge: c must be fresh");
    // w1 in V1, w2 in V2; the new edges are w1->v (color c) and u->w2 (old).
    return bc.has_edge(c, w1, v) && bc.has_edge(edge_color, u, w2);
}

RainbowCertificate absorb_edge(const BipartiteCollection& bc, const RainbowCertificate& matching,
                               const AbsorberWitness& witness) {
    if (witness.kind != AbsorberKind::bip_edge)
        fail(ErrorKind::invalid_argument, "absorb_edge: witness must be bip-edge");
    if (witness.segment.size() != 2 || witness.segment_colors.size() != 1)
        fail(ErrorKind::invalid_witness, "absorb_edge: segment must be {w1, w2} with one color");
    const int w1 = witness.segment[0], w2 = witness.segment[1];
    const int old_color = witness.segment_colors[0];
    const int u = witness.u, v = witness.v;
    if (!is_absorbing_edge(bc, w1, w2, old_color, witness.color, u, v))
        fail(ErrorKind::invalid_witness, "absorb_edge: witness conditions do not hold");

    const ValidationReport vr = validate_certificate(bc, matching);
    if (!vr.pass) fail(ErrorKind::invalid_argument, "absorb_edge: invalid matching");
    std::set<int> used_cols(matching.colors.begin(), matching.colors.end());
    if (used_cols.count(witness.color))
        fail(ErrorKind::invalid_argument, "absorb_edge: color c already used by the matching");
    for (const auto& [l, r] : matching.edges)
        if (l == u || r == v)
            fail(ErrorKind::invalid_argument,
                 "absorb_edge: target vertex already covered by the matching");

    RainbowCertificate out;
    out.kind = CertKind::matching;
    bool replaced = false;
    for (std::size_t k = 0; k < matching.edges.size(); ++k) {
        if (matching.edges[k] == std::make_pair(w1, w2) && matching.colors[k] == old_color) {
            replaced = true;
            continue;
        }
        out.edges.push_back(matching.edges[k]);
        out.colors.push_back(matching.colors[k]);
    }
    if (!replaced)
        fail(ErrorKind::invalid_argument, "absorb_edge: witness edge is not in the matching");
    out.edges.emplace_back(w1, v);
    out.colors.push_back(witness.color);
    out.edges.emplace_back(u, w2);
    out.colors.push_back(old_color);
    const ValidationReport after = validate_certificate(bc, out);
    if (!after.pass) fail(ErrorKind::internal, "absorb_edge produced an invalid matching");
    return out;
}

AbsorbReport verify_absorbing_matching(const BipartiteCollection& bc,
                                       const RainbowCertificate& matching,
                                       const std::vector<int>& color_set,
                                       const AbsorbingCycleParams& params,
                                       const std::vector<Vset>& good_right_per_color) {
    const int n = bc.part_size();
    AbsorbReport report;
    const ValidationReport vr = validate_certificate(bc, matching);
    if (!vr.pass) fail(ErrorKind::invalid_argument, "verify_absorbing_matching: invalid matching");
    std::set<int> used(matching.colors.begin(), matching.colors.end());
    for (int c : color_set)
        if (used.count(c))
            fail(ErrorKind::invalid_argument,
                 "verify_absorbing_matching: color set overlaps col(M)");
    if (static_cast<int>(good_right_per_color.size()) != bc.colors())
        fail(ErrorKind::invalid_argument,
             "verify_absorbing_matching: need a good-vertex set per color");

    report.add("color-set-size",
               count_at_least(static_cast<std::int64_t>(color_set.size()), params.delta, n),
               "|C|=" + std::to_string(color_set.size()) + " vs delta*n");
    report.add("matching-size",
               count_at_most(static_cast<std::int64_t>(matching.edges.size()), params.gamma, n),
               "|E(M)|=" + std::to_string(matching.edges.size()) + " vs gamma*n");

    Vset covered_left(n), covered_right(n);
    for (const auto& [l, r] : matching.edges) {
        covered_left.set(l);
        covered_right.set(r);
    }

    bool pair_ok = true;
    for (int c : color_set) {
        for (int v = 0; v < n; ++v) {
            if (!good_right_per_color[c].test(v) || covered_right.test(v)) continue;
            std::int64_t u_failures = 0;
            for (int u = 0; u < n; ++u) {
                if (covered_left.test(u)) continue;
                int count = 0;
                for (std::size_t k = 0; k < matching.edges.size(); ++k) {
                    const auto& [w1, w2] = matching.edges[k];
                    if (u == w1 || v == w2 || c == matching.colors[k]) continue;
                    if (bc.has_edge(c, w1, v) && bc.has_edge(matching.colors[k], u, w2)) ++count;
                }
                if (!count_at_least(count, params.gamma_prime, n)) ++u_failures;
            }
            report.worst_pair_failures = std::max(report.worst_pair_failures, u_failures);
            if (!count_at_most(u_failures, params.delta_prime, n)) pair_ok = false;
        }
    }
    report.add("pair-absorbers", pair_ok,
               "worst bad-u count " + std::to_string(report.worst_pair_failures) +
                   " vs delta'*n");
    return report;
}

}  // namespace tdg
