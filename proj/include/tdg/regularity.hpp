#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tdg/digraph.hpp"
#include "tdg/ratio.hpp"

namespace tdg {

// A bipartite slice of a digraph collection: edges from V1 to V2 in the
// colors of `colors`.
struct CollectionSlice {
    const DigraphCollection* parent = nullptr;
    std::vector<int> v1, v2;
    std::vector<int> colors;

    void check() const;
};

// Exact density of the restricted slice:
// sum_{c in C'} e_{D_c}(V1', V2') / (|C'| |V1'| |V2'|).
Ratio slice_density(const CollectionSlice& s, const std::vector<int>& v1_sub,
                    const std::vector<int>& v2_sub, const std::vector<int>& color_sub);

enum class RegMode { exact, sampled };

struct RegularityWitness {
    std::vector<int> v1_sub, v2_sub, color_sub;
    Ratio sub_density;
    Ratio global_density;
};

struct RegularityVerdict {
    bool regular = true;
    bool certified = true;  // sampled "regular" verdicts are not certified
    bool density_clause = true;
    Ratio global_density;
    std::optional<RegularityWitness> witness;  // on irregularity
    std::int64_t triples_checked = 0;
    RegMode mode = RegMode::exact;
};

struct RegCheckOptions {
    RegMode mode = RegMode::exact;
    std::uint64_t seed = 0;
    int samples = 10'000;
    std::int64_t exact_budget = 200'000'000;
};

// Definition-level (eps, d)-regularity: every qualifying subset triple
// (|V_i'| >= eps|V_i|, |C'| >= eps|C|) has density within eps of the global
// density, and the global edge mass is at least d |C||V1||V2|. The global
// clause is always exact.
RegularityVerdict check_regular_slice(const CollectionSlice& s, const Ratio& eps, const Ratio& d,
                                      const RegCheckOptions& opts = {});

struct ReducedCollection {
    int cluster_count = 0;  // L
    int color_cluster_count = 0;  // M
    std::vector<Digraph> members;  // R_1..R_M on [L]
    // provenance
    Ratio eps, d;
    RegMode mode = RegMode::exact;
    bool cleaned = false;  // raw collection; no edge-cleaning preprocessing
    std::vector<std::vector<int>> vertex_clusters;  // [0] = exceptional V0
    std::vector<std::vector<int>> color_clusters;   // [0] = exceptional C0
    std::vector<std::string> warnings;
};

// Builds the cluster-level collection from user-supplied partitions: edge
// h->i in R_j iff the slice D[V_h, V_i] restricted to C_j is (eps, d)-regular.
// Index 0 of each partition is the exceptional set (may be empty); clusters
// 1.. should be equal-sized (warned, not failed).
ReducedCollection build_reduced(const DigraphCollection& dc,
                                const std::vector<std::vector<int>>& vertex_partition,
                                const std::vector<std::vector<int>>& color_partition,
                                const Ratio& eps, const Ratio& d,
                                const RegCheckOptions& opts = {});

struct DegreeInheritanceReport {
    // fraction of colors j (per cluster-vertex i) with d+-_{R_j}(i) >= (p+g/2)L
    std::vector<double> per_vertex_fraction;
    // fraction of cluster-vertices i (per color j) with the same bound
    std::vector<double> per_color_fraction;
    double target_fraction = 0.0;  // 1 - d^{1/4}, diagnostic only
    int bound = 0;                 // ceil((p + gamma/2) L)
};

DegreeInheritanceReport degree_inheritance_report(const ReducedCollection& rc, const Ratio& p,
                                                  const Ratio& gamma);

// Appendix-style auxiliary 4-graph: V(H) = [n] u C u S1 u S2 with one
// hyperedge {i, j, c, x} per (digraph edge, S-vertex), x ranging over S1 for
// i<j edges and S2 for i>j edges.
struct Auxiliary4Graph {
    int n = 0;
    int m = 0;
    std::vector<std::array<int, 4>> edges;

    int vertex_count() const { return 3 * n + m; }
    int color_id(int c) const { return n + c; }
    int s1_id(int x) const { return n + m + x; }
    int s2_id(int x) const { return n + m + n + x; }
    std::int64_t degree(int vertex_id) const;
};

Auxiliary4Graph build_auxiliary_4graph(const DigraphCollection& dc);

}  // namespace tdg
