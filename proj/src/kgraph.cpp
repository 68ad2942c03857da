#include "tdg/kgraph.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace tdg {

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

void check_tuples(const DirectedKGraph& g, const std::string& what) {
    for (const auto& e : g.edges) {
        if (static_cast<int>(e.size()) != g.k)
            fail(ErrorKind::invalid_argument, what + ": tuple arity mismatch");
        std::set<int> distinct(e.begin(), e.end());
        if (static_cast<int>(distinct.size()) != g.k)
            fail(ErrorKind::invalid_argument, what + ": tuple vertices must be distinct");
        for (int v : e)
            if (v < 0 || v >= g.n) fail(ErrorKind::invalid_argument, what + ": vertex out of range");
    }
}

}  // namespace

KGraphReport verify_rainbow_kgraph_matching(const std::vector<DirectedKGraph>& hypergraphs,
                                            const std::vector<DirectedKGraph>& z_multigraphs,
                                            const KGraphMatching& matching, const Ratio& eps,
                                            int t) {
    if (hypergraphs.empty()) fail(ErrorKind::invalid_argument, "need at least one hypergraph");
    const int n = hypergraphs[0].n;
    const int k = hypergraphs[0].k;
    for (const auto& h : hypergraphs) {
        if (h.n != n || h.k != k)
            fail(ErrorKind::invalid_argument, "hypergraphs must share (n, k)");
        check_tuples(h, "hypergraph");
    }
    for (const auto& z : z_multigraphs) {
        if (z.n != n || z.k != k)
            fail(ErrorKind::invalid_argument, "multigraphs must share (n, k) with the hypergraphs");
        check_tuples(z, "multigraph");
    }
    if (t < 1 || t > static_cast<int>(hypergraphs.size()))
        fail(ErrorKind::invalid_argument, "t must be in [1, #hypergraphs]");

    KGraphReport report;
    const std::int64_t nk = ipow(n, k);

    // --- matching well-formedness (precondition-level, reported not thrown)
    {
        std::set<int> used_idx;
        std::set<int> used_vertices;
        bool ok = true;
        std::string why;
        for (const auto& [idx, edge] : matching.picks) {
            if (idx < 0 || idx >= static_cast<int>(hypergraphs.size())) {
                ok = false;
                why = "pick index out of range";
                break;
            }
            if (!used_idx.insert(idx).second) {
                ok = false;
                why = "two picks from hypergraph " + std::to_string(idx);
                break;
            }
            const auto& es = hypergraphs[idx].edges;
            if (std::find(es.begin(), es.end(), edge) == es.end()) {
                ok = false;
                why = "picked edge not in its hypergraph";
                break;
            }
            for (int v : edge)
                if (!used_vertices.insert(v).second) {
                    ok = false;
                    why = "matching edges share vertex " + std::to_string(v);
                }
            if (!ok) break;
        }
        report.add("matching-shape", ok, ok ? "rainbow and vertex-disjoint" : why, true);
    }

    // --- hypotheses
    bool sizes_ok = true;
    for (std::size_t i = 0; i < hypergraphs.size(); ++i) {
        if (!count_at_least(static_cast<std::int64_t>(hypergraphs[i].edges.size()), eps, nk)) {
            sizes_ok = false;
            report.add("hyp-edge-count", false,
                       "|E(H_" + std::to_string(i) + ")| = " +
                           std::to_string(hypergraphs[i].edges.size()) + " < eps*n^k",
                       true);
        }
    }
    if (sizes_ok) report.add("hyp-edge-count", true, "every |E(H_i)| >= eps*n^k", true);

    std::vector<std::map<std::vector<int>, int>> h_sets(hypergraphs.size());
    for (std::size_t i = 0; i < hypergraphs.size(); ++i)
        for (const auto& e : hypergraphs[i].edges) ++h_sets[i][e];

    bool z_ok = true;
    for (std::size_t j = 0; j < z_multigraphs.size(); ++j) {
        int heavy = 0;
        for (std::size_t i = 0; i < hypergraphs.size(); ++i) {
            std::int64_t inter = 0;
            for (const auto& e : z_multigraphs[j].edges)
                if (h_sets[i].count(e)) ++inter;  // multiplicity from Z side
            if (count_at_least(inter, eps, nk)) ++heavy;
        }
        if (!count_at_least(heavy, eps, t)) {
            z_ok = false;
            report.add("hyp-z-coverage", false,
                       "Z_" + std::to_string(j) + " meets only " + std::to_string(heavy) +
                           " hypergraphs heavily (needs >= eps*t)",
                       true);
        }
    }
    if (z_ok) report.add("hyp-z-coverage", true, "every Z_j meets >= eps*t hypergraphs heavily",
                         true);

    // --- conclusions
    const Ratio size_bound = Ratio(1, 1) - eps * eps / Ratio(4, 1);
    report.add("concl-size",
               size_bound.le_scaled(static_cast<std::int64_t>(matching.picks.size()), t),
               "|M| = " + std::to_string(matching.picks.size()) + " vs (1-eps^2/4)t", false);

    std::set<std::vector<int>> m_edges;
    for (const auto& [idx, edge] : matching.picks) {
        (void)idx;
        m_edges.insert(edge);
    }
    const Ratio z_bound = eps * eps / Ratio(4, 1);
    for (std::size_t j = 0; j < z_multigraphs.size(); ++j) {
        std::int64_t inter = 0;
        for (const auto& e : z_multigraphs[j].edges)
            if (m_edges.count(e)) ++inter;
        const bool ok = z_bound.le_scaled(inter, t);
        report.add("concl-z-" + std::to_string(j), ok,
                   "|E(Z_" + std::to_string(j) + ") & E(M)| = " + std::to_string(inter) +
                       " vs eps^2 t/4",
                   false);
    }
    return report;
}

KGraphMatching greedy_rainbow_kgraph_matching(const std::vector<DirectedKGraph>& hypergraphs,
                                              const std::vector<DirectedKGraph>& z_multigraphs,
                                              std::uint64_t seed) {
    KGraphMatching matching;
    if (hypergraphs.empty()) return matching;
    const int n = hypergraphs[0].n;

    // Which Z_j's contain a given tuple (with multiplicity for the serve
    // counts).
    std::map<std::vector<int>, std::vector<int>> z_of_edge;
    for (std::size_t j = 0; j < z_multigraphs.size(); ++j)
        for (const auto& e : z_multigraphs[j].edges)
            z_of_edge[e].push_back(static_cast<int>(j));

    std::vector<std::int64_t> served(z_multigraphs.size(), 0);
    std::vector<char> used_vertex(n, 0);

    std::vector<int> order(hypergraphs.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);

    for (int idx : order) {
        const auto& edges = hypergraphs[idx].edges;
        // Prefer edges hitting the least-served Z_j; tie-break on coverage
        // breadth, then lexicographic edge order for determinism.
        std::int64_t best_key = -1;
        int best_breadth = -1;
        const std::vector<int>* best_edge = nullptr;
        for (const auto& e : edges) {
            bool free = true;
            for (int v : e)
                if (used_vertex[v]) {
                    free = false;
                    break;
                }
            if (!free) continue;
            std::int64_t key = std::numeric_limits<std::int64_t>::max();
            int breadth = 0;
            auto it = z_of_edge.find(e);
            if (it != z_of_edge.end()) {
                breadth = static_cast<int>(it->second.size());
                for (int j : it->second) key = std::min(key, served[j]);
            }
            const bool better =
                best_edge == nullptr || key < best_key ||
                (key == best_key && breadth > best_breadth) ||
                (key == best_key && breadth == best_breadth && e < *best_edge);
            if (better) {
                best_key = key;
                best_breadth = breadth;
                best_edge = &e;
            }
        }
        if (!best_edge) continue;
        for (int v : *best_edge) used_vertex[v] = 1;
        auto it = z_of_edge.find(*best_edge);
        if (it != z_of_edge.end())
            for (int j : it->second) ++served[j];
        matching.picks.emplace_back(idx, *best_edge);
    }
    std::sort(matching.picks.begin(), matching.picks.end());
    return matching;
}

Ratio max_feasible_eps(const std::vector<DirectedKGraph>& hypergraphs,
                       const std::vector<DirectedKGraph>& z_multigraphs, int t, int max_den) {
    for (int q = 2; q <= max_den; ++q) {
        const Ratio eps(1, q);
        KGraphMatching empty;
        const KGraphReport rep =
            verify_rainbow_kgraph_matching(hypergraphs, z_multigraphs, empty, eps, t);
        if (rep.hypotheses_pass) return eps;
    }
    return Ratio(0, 1);
}

}  // namespace tdg
