#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tdg/error.hpp"
#include "tdg/ratio.hpp"
#include "tdg/rng.hpp"

namespace tdg {

// Directed k-graph: edge set of k-tuples of distinct vertices over [n].
// A multi-k-graph may repeat tuples.
struct DirectedKGraph {
    int n = 0;
    int k = 0;
    std::vector<std::vector<int>> edges;
};

// A rainbow matching in a family {H_1..H_t}: at most one edge per H_i,
// selected edges pairwise vertex-disjoint.
struct KGraphMatching {
    // (hypergraph index, edge) pairs
    std::vector<std::pair<int, std::vector<int>>> picks;
};

struct KGraphCheck {
    std::string clause;
    bool pass = true;
    std::string detail;
};

struct KGraphReport {
    bool hypotheses_pass = true;
    bool conclusions_pass = true;
    std::vector<KGraphCheck> checks;

    void add(const std::string& clause, bool ok, const std::string& detail, bool hypothesis) {
        checks.push_back({clause, ok, detail});
        if (!ok) (hypothesis ? hypotheses_pass : conclusions_pass) = false;
    }
};

// Checks both sides of the large-rainbow-matching property on concrete data:
// hypotheses |E(H_i)| >= eps n^k and, for each Z_j, at least eps*t
// hypergraphs with |E(Z_j) & E(H_i)| >= eps n^k; conclusions |M| >=
// (1 - eps^2/4) t and |E(Z_j) & E(M)| >= eps^2 t / 4. Multigraph
// intersections count multiplicity.
KGraphReport verify_rainbow_kgraph_matching(const std::vector<DirectedKGraph>& hypergraphs,
                                            const std::vector<DirectedKGraph>& z_multigraphs,
                                            const KGraphMatching& matching, const Ratio& eps,
                                            int t);

// Randomized greedy construction: process hypergraphs in seeded random
// order, pick an edge disjoint from the partial matching, preferring edges
// that cover the currently least-served Z_j. Deterministic under seed.
KGraphMatching greedy_rainbow_kgraph_matching(const std::vector<DirectedKGraph>& hypergraphs,
                                              const std::vector<DirectedKGraph>& z_multigraphs,
                                              std::uint64_t seed);

// Largest eps = 1/q on the grid q = 2..max_den such that the hypotheses
// hold for this instance; returns 0/1 when none does.
Ratio max_feasible_eps(const std::vector<DirectedKGraph>& hypergraphs,
                       const std::vector<DirectedKGraph>& z_multigraphs, int t, int max_den = 64);

}  // namespace tdg
