#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "tdg/certificate.hpp"
#include "tdg/digraph.hpp"

namespace tdg {

struct SearchConfig {
    std::int64_t time_budget_ms = 60'000;
    std::int64_t node_budget = 200'000'000;
    bool parallel = false;
    std::uint64_t seed = 0;
    bool symmetry_break = true;

    void check() const {
        if (time_budget_ms <= 0 || node_budget <= 0)
            fail(ErrorKind::invalid_argument, "SearchConfig: budgets must be positive");
    }
};

enum class SolveStatus { found, none, timeout };

std::string solve_status_name(SolveStatus s);

struct SearchStats {
    std::int64_t nodes = 0;
    std::int64_t prunes = 0;
    double wall_ms = 0.0;
};

// status == found implies the certificate is present and validates;
// status == none is only reported after exhausting the search space.
struct SolveOutcome {
    SolveStatus status = SolveStatus::none;
    std::optional<RainbowCertificate> certificate;
    SearchStats stats;
    bool exhausted = false;
};

// Exact decision search for a transversal directed Hamilton cycle.
// Requires m == n (one color per cycle edge) and n >= 2.
SolveOutcome find_transversal_hamilton_cycle(const DigraphCollection& dc, const SearchConfig& cfg);

// Exact decision search for a transversal directed Hamilton path; m == n-1.
SolveOutcome find_transversal_hamilton_path(const DigraphCollection& dc, const SearchConfig& cfg);

// Exact decision search for a transversal perfect matching; m == n.
SolveOutcome find_transversal_perfect_matching(const BipartiteCollection& bc,
                                               const SearchConfig& cfg);

// Exact decision search for a spanning set of disjoint rainbow directed
// cycles using all n colors bijectively; m == n.
SolveOutcome rainbow_cycle_cover(const DigraphCollection& dc, const SearchConfig& cfg);

// Exact maximum rainbow matching size (branch and bound) with one witness.
struct MaxMatchingResult {
    int size = 0;
    RainbowCertificate certificate;
    SearchStats stats;
};
MaxMatchingResult max_rainbow_matching(const BipartiteCollection& bc, const SearchConfig& cfg);

// Brute-force oracle: enumerates all directed Hamilton cycles (cyclic orders
// anchored at vertex 0, both orientations included) and decides colorability
// of each by an exact edge<->color perfect-matching count. Refuses n above
// the budget bound.
struct OracleResult {
    bool exists = false;
    std::optional<RainbowCertificate> witness;
    std::int64_t pair_count = 0;  // number of (cycle, bijection) pairs
    std::int64_t cycles_checked = 0;
};
OracleResult oracle_transversal_hamilton_cycle(const DigraphCollection& dc, int bound = 9);

// Maximum matching (Kuhn) in a bipartite graph given as left-vertex
// adjacency sets over `right_universe` columns; used for solver bounds and
// by the oracle. Exposed for tests.
int max_bipartite_matching(const std::vector<Vset>& left_adj, int right_universe);

}  // namespace tdg
