#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tdg/digraph.hpp"

namespace tdg {

enum class CertKind {
    hamilton_cycle,
    hamilton_path,
    matching,
    cycle_cover,
    cycle,  // one directed rainbow cycle, not necessarily spanning (absorbing cycles)
};

std::string cert_kind_name(CertKind k);
CertKind cert_kind_from_name(const std::string& s);

// A subgraph plus an injective edge->color assignment. colors[k] is assigned
// to edges[k]. For matchings over a BipartiteCollection, edges are
// (left, right) pairs.
struct RainbowCertificate {
    CertKind kind = CertKind::hamilton_cycle;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> colors;

    std::vector<int> vertex_list() const;      // distinct vertices, in first-seen order
    Vset vertex_set(int universe) const;
    std::vector<int> color_set() const;        // sorted

    // Convenience constructor for cycle-shaped certificates: edge k runs
    // cycle[k] -> cycle[(k+1) mod len].
    static RainbowCertificate from_cycle(CertKind kind, const std::vector<int>& cycle,
                                         const std::vector<int>& colors);
    // Vertices of a cycle certificate in cyclic order (requires cycle shape).
    std::vector<int> cycle_order() const;
};

struct ValidationIssue {
    std::string clause;  // "shape", "membership", "injectivity", "size", "range"
    std::string detail;
};

struct ValidationReport {
    bool pass = true;
    std::vector<ValidationIssue> issues;

    void add(const std::string& clause, const std::string& detail) {
        pass = false;
        issues.push_back({clause, detail});
    }
};

// Checks every certificate invariant against the collection; violations are
// report entries, never exceptions. For hamilton-cycle kind the coloring must
// be a bijection onto all m colors (|edges| == m).
ValidationReport validate_certificate(const DigraphCollection& dc, const RainbowCertificate& cert);
ValidationReport validate_certificate(const BipartiteCollection& bc, const RainbowCertificate& cert);

}  // namespace tdg
