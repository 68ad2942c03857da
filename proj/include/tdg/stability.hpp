#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tdg/extremal.hpp"

namespace tdg {

// ---------------------------------------------------------------------------
// Digraph-collection stability (crossing, cross graphs, verdicts)
// ---------------------------------------------------------------------------

using PartitionRecords = std::vector<std::optional<CharacteristicPartition>>;  // per color

// D_i-good vertices: all of V when color i carries no extremal record,
// V minus the record's exceptional set L otherwise.
Vset good_vertices(const DigraphCollection& dc, int color, const PartitionRecords& records);

struct CrossingResult {
    bool crossing = false;
    std::string clause;    // "A1", "A2", "A3"
    std::string disjunct;  // which source set and family fired
    int family = 0;        // 0 for A1; 1 = odd W-family, 2 = even (A2/A3)
};

// Crossing is evaluated on unordered pairs: the defining inequalities are
// checked in both role orders, so is_crossing(i,j) == is_crossing(j,i).
CrossingResult is_crossing(const CharacteristicPartition& rec_i,
                           const CharacteristicPartition& rec_j, const Ratio& delta, int n);

struct ObservationCheck {
    std::string intersection;  // e.g. "A_i n B_j" or "W_i^1 n W_j^3"
    std::int64_t size = 0;
    std::int64_t bound = 0;  // ceil(delta*n/4)
    bool pass = false;
};

struct ObservationReport {
    bool applicable = false;  // records must be crossing
    bool pass = true;
    std::vector<ObservationCheck> checks;
};

// The intersection lower bounds (>= delta*n/4) implied by the fired crossing
// clause; a sanity property, not a classifier. Requires eps <= delta/8.
ObservationReport observation_check(const CharacteristicPartition& rec_i,
                                    const CharacteristicPartition& rec_j, const Ratio& delta,
                                    int n);

struct CrossGraphs {
    // mode k in {1,2,3} -> undirected edge list over colors (i < j)
    std::array<std::vector<std::pair<int, int>>, 3> edges;
    std::array<std::vector<std::int64_t>, 3> disjunct_counts;  // per-mode fired-disjunct tallies
};

CrossGraphs build_cross_graph(const DigraphCollection& dc, const Ratio& delta,
                              const PartitionRecords& records);

enum class StabilityVerdict { strongly_stable, weakly_stable, none };

std::string stability_verdict_name(StabilityVerdict v);

struct StabilityReport {
    std::vector<int> nice_colors;
    std::vector<int> uncertified_nice_colors;  // sampled positives
    std::vector<int> unrecorded_extremal_colors;
    CrossGraphs cross;
    StabilityVerdict verdict = StabilityVerdict::none;
    int weakly_mode = 0;  // k for the weakly-stable verdict
    Ratio gamma, alpha, eps, delta;
    std::vector<std::string> flags;
};

struct StabilityOptions {
    NicenessOptions niceness;
};

// Counts alpha-nice members (strongly stable when >= gamma*m), otherwise
// looks for a dense cross graph (e >= delta*m^2 for some mode) over the
// supplied records. Records are the caller's fixed characteristic
// partitions; they are not re-derived here.
StabilityReport classify_stability(const DigraphCollection& dc, const Ratio& gamma,
                                   const Ratio& alpha, const Ratio& eps, const Ratio& delta,
                                   const PartitionRecords& records,
                                   const StabilityOptions& opts = {});

// ---------------------------------------------------------------------------
// Collection-level niceness (Appendix B)
// ---------------------------------------------------------------------------

struct MuNiceVerdict {
    bool nice = true;
    bool certified = true;
    std::int64_t min_value = 0;
    std::int64_t threshold = 0;  // ceil(mu * n^3)
    std::optional<std::pair<std::vector<int>, std::vector<int>>> witness;
    NicenessMode mode = NicenessMode::exact;
};

// mu-niceness of a bipartite collection: every A in V1, B in V2 of size
// floor(n/2) has sum_c e_{G_c}(A,B) >= mu n^3.
MuNiceVerdict collection_mu_nice(const BipartiteCollection& bc, const Ratio& mu,
                                 const NicenessOptions& opts = {});

// ---------------------------------------------------------------------------
// Bipartite stability (crossing and verdicts over bipartite records)
// ---------------------------------------------------------------------------

// Characteristic partition of an extremal bipartite graph:
// (A1, B1, C1) partitions V1 and (A2, B2, C2) partitions V2.
struct BipartitePartition {
    std::vector<int> a1, b1, c1;
    std::vector<int> a2, b2, c2;
    Ratio eps;
};

using BipartiteRecords = std::vector<std::optional<BipartitePartition>>;

PartitionReport verify_bipartite_partition(const BipartiteCollection& bc, int color,
                                           const BipartitePartition& p);

// c-good vertices of the bipartite setting: extremal colors exclude the
// record's C-sets; non-extremal colors require degree >= (1/2 - eps^3)n.
Vset bipartite_good_vertices(const BipartiteCollection& bc, int color,
                             const BipartiteRecords& records, const Ratio& eps, int side);

CrossingResult is_crossing_bipartite(const BipartitePartition& rec_i,
                                     const BipartitePartition& rec_j, const Ratio& delta, int n);

std::vector<std::pair<int, int>> build_cross_graph_bipartite(const BipartiteCollection& bc,
                                                             const Ratio& delta,
                                                             const BipartiteRecords& records);

StabilityReport classify_stability_bipartite(const BipartiteCollection& bc, const Ratio& gamma,
                                             const Ratio& alpha, const Ratio& eps,
                                             const Ratio& delta, const BipartiteRecords& records,
                                             const StabilityOptions& opts = {});

// Witness-seeded record construction for one bipartite color; verified
// before returning.
std::optional<BipartitePartition> derive_bipartite_record(const BipartiteCollection& bc, int color,
                                                          const Ratio& eps,
                                                          std::uint64_t seed = 0);

// Planted extremal bipartite graph for tests: complete between A1<->A2 and
// B1<->B2 with a left/right part shift of `shift` vertices, C-sets joined to
// everything. Returns the planted record alongside.
std::pair<BipartiteCollection, BipartitePartition> gen_bipartite_extremal(int n, const Ratio& eps,
                                                                          int shift, int colors);

}  // namespace tdg
