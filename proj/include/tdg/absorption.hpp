#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tdg/certificate.hpp"
#include "tdg/ratio.hpp"

namespace tdg {

enum class AbsorberKind { type_I, type_II, bip_edge };

std::string absorber_kind_name(AbsorberKind k);
AbsorberKind absorber_kind_from_name(const std::string& s);

// A 4-vertex cycle segment (or bipartite matching edge) able to absorb the
// target (c, v, u). For paths, `segment` holds v1..v4 and `segment_colors`
// the three edge colors in order; for bip-edge, segment = {w1, w2} with one
// color.
struct AbsorberWitness {
    AbsorberKind kind = AbsorberKind::type_I;
    std::vector<int> segment;
    std::vector<int> segment_colors;
    int color = 0;  // c
    int v = 0;
    int u = 0;  // == v for the single-vertex case
};

struct AbsorbingCycleParams {
    Ratio delta, delta_prime, gamma, gamma_prime;
};

// Membership test for Definition-style absorbing paths:
//   Type-I:  c in L(v2 v)  and  col(v2 v3) in L(u v3)
//   Type-II: c in L(v v3)  and  col(v2 v3) in L(v2 u)
// Precondition violations (segment not a rainbow path, vertex/color clashes)
// raise an invalid-witness error, which is distinct from returning false.
bool is_absorbing_path(const DigraphCollection& dc, AbsorberKind kind,
                       const std::vector<int>& segment, const std::vector<int>& segment_colors,
                       int c, int v, int u);

struct AbsorberScan {
    std::vector<AbsorberWitness> witnesses;    // all qualifying segments, in cycle order
    int max_disjoint = 0;                      // circular interval scheduling optimum
};

// Scans every 4-consecutive-vertex segment of the rainbow cycle.
AbsorberScan enumerate_absorbers(const DigraphCollection& dc, const RainbowCertificate& cycle,
                                 int c, int v, int u, AbsorberKind kind);

// Exact maximum number of pairwise vertex-disjoint segments among length-4
// windows at the given start offsets on a cycle of length t.
int max_disjoint_segments(const std::vector<int>& starts, int t);

// The absorbing rewrite. `payload` lists the inserted vertices in insertion
// order together with the colors of its internal edges
// (|colors| == |vertices| - 1). Type-I inserts v ... u between v2 and v3;
// Type-II inserts u ... v. The single-vertex case passes payload {v} with no
// colors. The result is re-validated before returning.
struct Payload {
    std::vector<int> vertices;
    std::vector<int> colors;
};

RainbowCertificate absorb(const DigraphCollection& dc, const RainbowCertificate& cycle,
                          const AbsorberWitness& witness, const Payload& payload);

struct ClauseCheckDetail {
    std::string clause;
    bool pass = true;
    std::string detail;
};

struct AbsorbReport {
    bool pass = true;
    std::vector<ClauseCheckDetail> checks;
    std::int64_t worst_pair_failures = 0;  // max over (c,v) of bad-u count
    std::int64_t worst_vv_failures = 0;    // max over c of bad-(v,v) count

    void add(const std::string& clause, bool ok, const std::string& detail) {
        checks.push_back({clause, ok, detail});
        if (!ok) pass = false;
    }
};

// Definition 3.4 parameter check against a concrete cycle: |C| >= delta*n,
// |V(cycle)| <= gamma*n, and the two absorber-count quantifiers with the
// delta' exception budgets. Good-vertex sets are injected per color.
AbsorbReport verify_absorbing_cycle(const DigraphCollection& dc, const RainbowCertificate& cycle,
                                    const std::vector<int>& color_set,
                                    const AbsorbingCycleParams& params,
                                    const std::vector<Vset>& good_vertices_per_color,
                                    AbsorberKind kind);

// Bipartite analogue: matching edge w1w2 absorbs (u, v) when c in L(w1 v)
// and col(w1 w2) in L(u w2).
bool is_absorbing_edge(const BipartiteCollection& bc, int w1, int w2, int edge_color, int c,
                       int u, int v);

// Replaces matching edge w1w2 by w1->v (color c) and u->w2 (the displaced
// color); the result covers two more vertices and one more color.
RainbowCertificate absorb_edge(const BipartiteCollection& bc, const RainbowCertificate& matching,
                               const AbsorberWitness& witness);

AbsorbReport verify_absorbing_matching(const BipartiteCollection& bc,
                                       const RainbowCertificate& matching,
                                       const std::vector<int>& color_set,
                                       const AbsorbingCycleParams& params,
                                       const std::vector<Vset>& good_right_per_color);

}  // namespace tdg
