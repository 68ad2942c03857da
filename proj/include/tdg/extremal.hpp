#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tdg/digraph.hpp"
#include "tdg/ratio.hpp"
#include "tdg/rng.hpp"

namespace tdg {

enum class ExtremalKind { EC1, EC2, EC3 };

std::string extremal_kind_name(ExtremalKind k);
ExtremalKind extremal_kind_from_name(const std::string& s);

// Vertex partition witnessing one of the three extremal templates.
// EC1/EC2 use (A, B, L); EC3 uses (C1..C4, L). Sizes follow the realized
// rounding recorded here, not the real-valued formulas.
struct CharacteristicPartition {
    ExtremalKind kind = ExtremalKind::EC1;
    std::vector<int> a, b;              // EC1/EC2
    std::vector<int> c1, c2, c3, c4;    // EC3
    std::vector<int> l;
    Ratio eps;
    Ratio zeta;                          // EC3 only
    std::string rounding = "ec12:ceil((1/2-eps)n); ec3:round-half-up";

    // W^j := C^j u C^{j+1}, cyclic (W^4 = C^4 u C^1).
    Vset w_set(int j, int universe) const;
    Vset set_a(int universe) const { return Vset::from(universe, a); }
    Vset set_b(int universe) const { return Vset::from(universe, b); }
    Vset set_l(int universe) const { return Vset::from(universe, l); }
    Vset block(int i, int universe) const;  // C^i
    bool is_ec3() const { return kind == ExtremalKind::EC3; }
};

enum class NicenessMode { exact, sampled };

struct NicenessVerdict {
    bool nice = true;
    NicenessMode mode = NicenessMode::exact;
    bool certified = true;  // sampled "nice" verdicts are not certified
    std::int64_t min_value = 0;
    std::int64_t threshold = 0;  // smallest count that still passes (ceil(eps*n^2))
    std::optional<std::pair<std::vector<int>, std::vector<int>>> witness;  // (A, B) with e < eps n^2
    int trials = 0;
    std::uint64_t seed = 0;
};

struct NicenessOptions {
    NicenessMode mode = NicenessMode::exact;
    std::uint64_t seed = 0;
    int restarts = 64;
    std::int64_t exact_budget = 200'000'000;  // refuse exact mode above C(n,k)^2
};

// eps-niceness of a digraph: every pair of vertex sets A,B of size at least
// ceil((1/2-eps)n) spans e_D(A,B) >= eps n^2 directed edges. Exact mode
// minimizes e_D(A,B) at size exactly k (enlarging a set never decreases the
// count); sampled mode is hill descent whose negative verdicts carry a
// certified witness.
NicenessVerdict is_eps_nice(const Digraph& d, const Ratio& eps, const NicenessOptions& opts = {});

// Bipartite variant: A from V1, B from V2. The extremality exponent (the
// bipartite definition uses eps^5 where the digraph one uses eps) is the
// caller's business; this checks the given eps literally.
NicenessVerdict is_eps_nice_bipartite(const BipartiteCollection& bc, int color, const Ratio& eps,
                                      const NicenessOptions& opts = {});

struct GenExtremalResult {
    Digraph digraph;
    CharacteristicPartition partition;
    int defect_edges_applied = 0;
};

// Idealized extremal digraphs (defect = 0) plus a seeded defect-perturbation
// that preserves every partition inequality (re-verified before returning).
GenExtremalResult gen_extremal(ExtremalKind kind, int n, const Ratio& eps,
                               std::optional<Ratio> zeta, const Ratio& defect,
                               std::uint64_t seed);

// Sharpness witnesses for the n/2 threshold: n colors, semi-degree exactly
// ceil(n/2)-1, no transversal Hamilton cycle (disconnected union when n is
// even, parity obstruction when n is odd).
DigraphCollection gen_tight_witness(int n);

struct ClauseCheck {
    std::string clause;
    bool pass = true;
    std::string detail;
};

struct PartitionReport {
    bool pass = true;
    std::vector<ClauseCheck> checks;

    void add(const std::string& clause, bool ok, const std::string& detail) {
        checks.push_back({clause, ok, detail});
        if (!ok) pass = false;
    }
};

// Evaluates every inequality of the matching template clause literally.
PartitionReport verify_partition(const Digraph& d, const CharacteristicPartition& p);

struct ClassifyOptions {
    std::vector<Ratio> zeta_grid;  // defaults to {1/10, 3/20, ..., 7/20}
    std::uint64_t seed = 0;
    int restarts = 8;
    int exhaustive_limit = 12;
    bool heuristic_flagged = false;  // set on return when the heuristic path ran
    // Kinds whose clauses verified during the search. More than one entry is
    // a template-overlap finding (possible at small n with concrete eps);
    // the best cap fit is returned either way.
    std::vector<ExtremalKind> verified_kinds;
};

// Searches for a verified characteristic partition under any of the three
// templates. Exhaustive for n <= exhaustive_limit, seeded greedy otherwise.
std::optional<CharacteristicPartition> classify_extremal(const Digraph& d, const Ratio& eps,
                                                         ClassifyOptions& opts);

// Fraction (in [0,1]) of vertices assigned identically, maximized over the
// template's label symmetries (A<->B swap for EC1/EC2, the C^i -> C^{i+2}
// rotation for EC3).
double partition_agreement(const CharacteristicPartition& found,
                           const CharacteristicPartition& planted, int n);

}  // namespace tdg
