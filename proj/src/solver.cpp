#include "tdg/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

namespace tdg {

std::string solve_status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::found: return "found";
        case SolveStatus::none: return "none";
        case SolveStatus::timeout: return "timeout";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

struct Budget {
    Clock::time_point start = Clock::now();
    std::int64_t deadline_ms = 0;
    std::int64_t node_budget = 0;
    std::int64_t nodes = 0;
    std::int64_t prunes = 0;
    bool aborted = false;
    std::atomic<bool>* stop = nullptr;  // shared early-exit flag (parallel mode)

    bool tick() {
        ++nodes;
        if (nodes > node_budget) {
            aborted = true;
            return false;
        }
        if ((nodes & 1023) == 0) {
            if (stop && stop->load(std::memory_order_relaxed)) {
                aborted = true;
                return false;
            }
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                Clock::now() - start)
                                .count();
            if (ms > deadline_ms) {
                aborted = true;
                return false;
            }
        }
        return true;
    }

    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    }
};

int kuhn_augment(const std::vector<std::vector<int>>& adj, int left, std::vector<int>& match_right,
                 std::vector<char>& seen) {
    for (int r : adj[left]) {
        if (seen[r]) continue;
        seen[r] = 1;
        if (match_right[r] < 0 || kuhn_augment(adj, match_right[r], match_right, seen)) {
            match_right[r] = left;
            return 1;
        }
    }
    return 0;
}

// Kuhn matching over explicit adjacency lists; returns matched size.
int kuhn_matching(const std::vector<std::vector<int>>& adj, int right_universe) {
    std::vector<int> match_right(right_universe, -1);
    int size = 0;
    std::vector<char> seen(right_universe);
    for (std::size_t l = 0; l < adj.size(); ++l) {
        std::fill(seen.begin(), seen.end(), 0);
        size += kuhn_augment(adj, static_cast<int>(l), match_right, seen);
    }
    return size;
}

// ---------------------------------------------------------------------------
// Transversal Hamilton cycle / path search
// ---------------------------------------------------------------------------

struct CycleSearch {
    const DigraphCollection& dc;
    int n;
    int m;
    int anchor = 0;
    Budget budget;
    std::vector<int> path;
    std::vector<int> path_colors;
    Vset visited;
    Vset used_colors;
    bool cycle_mode = true;  // false: hamilton path
    std::optional<RainbowCertificate> found;

    CycleSearch(const DigraphCollection& c, bool cycle)
        : dc(c), n(c.order()), m(c.colors()), visited(c.order()), used_colors(c.colors()),
          cycle_mode(cycle) {}

    // Union of unused colors' adjacency, recomputed per node; desk-scale n
    // keeps this cheap and stateless for the parallel root split.
    void union_out_in(std::vector<Vset>& uout, std::vector<Vset>& uin) const {
        uout.assign(n, Vset(n));
        uin.assign(n, Vset(n));
        for (int c = 0; c < m; ++c) {
            if (used_colors.test(c)) continue;
            const Digraph& d = dc.member(c);
            for (int v = 0; v < n; ++v) {
                uout[v] |= d.out_neighbors(v);
                uin[v] |= d.in_neighbors(v);
            }
        }
    }

    bool prune_here() {
        const int head = path.back();
        const int depth = static_cast<int>(path.size()) - 1;  // edges placed
        std::vector<Vset> uout, uin;
        union_out_in(uout, uin);

        Vset tails = visited;  // complement later
        Vset unvisited(n);
        unvisited.fill();
        unvisited.subtract(visited);

        Vset tail_set = unvisited;  // future edge tails
        tail_set.set(head);
        Vset head_set = unvisited;  // future edge heads
        if (cycle_mode) head_set.set(anchor);

        // Every unvisited vertex needs an available in-edge; in cycle mode it
        // also needs an out-edge (toward unvisited or the anchor). In path
        // mode at most one unvisited vertex may lack out-options (the future
        // endpoint).
        int out_violations = 0;
        bool dead = false;
        unvisited.for_each([&](int w) {
            if (dead) return;
            Vset in_src = tail_set;
            in_src.reset(w);
            if (!uin[w].intersects(in_src)) {
                dead = true;
                return;
            }
            Vset out_dst = head_set;
            out_dst.reset(w);
            if (!uout[w].intersects(out_dst)) {
                if (cycle_mode) dead = true;
                else ++out_violations;
            }
        });
        if (dead || out_violations > 1) {
            ++budget.prunes;
            return true;
        }

        // Reachability: the rest of the route visits every unvisited vertex,
        // so each must be reachable from the head (and must reach the anchor
        // in cycle mode) inside the union digraph.
        {
            Vset allowed = unvisited;
            if (cycle_mode) allowed.set(anchor);
            Vset reach(n);
            reach.set(head);
            Vset frontier = reach;
            while (!frontier.empty()) {
                Vset next(n);
                frontier.for_each([&](int v) { next |= uout[v]; });
                next &= allowed;
                next.subtract(reach);
                reach |= next;
                frontier = next;
            }
            Vset missing = unvisited;
            missing.subtract(reach);
            if (!missing.empty() || (cycle_mode && !reach.test(anchor))) {
                ++budget.prunes;
                return true;
            }
            if (cycle_mode) {
                Vset ballowed = unvisited;
                ballowed.set(head);
                Vset breach(n);
                breach.set(anchor);
                Vset bfrontier = breach;
                while (!bfrontier.empty()) {
                    Vset next(n);
                    bfrontier.for_each([&](int v) { next |= uin[v]; });
                    next &= ballowed;
                    next.subtract(breach);
                    breach |= next;
                    bfrontier = next;
                }
                Vset bmissing = unvisited;
                bmissing.subtract(breach);
                if (!bmissing.empty()) {
                    ++budget.prunes;
                    return true;
                }
            }
        }

        // Color liveness: every unused color must still contain a usable edge.
        const int slots_left = (cycle_mode ? n : n - 1) - depth;
        for (int c = 0; c < m; ++c) {
            if (used_colors.test(c)) continue;
            const Digraph& d = dc.member(c);
            bool live = false;
            for (int u = tail_set.first(); u >= 0 && !live; u = tail_set.next(u)) {
                Vset dst = d.out_neighbors(u) & head_set;
                dst.reset(u);
                if (cycle_mode && slots_left > 1 && u == head) dst.reset(anchor);
                if (!dst.empty()) live = true;
            }
            if (!live) {
                ++budget.prunes;
                return true;
            }
        }

        // Exact color<->edge-slot feasibility in the deep half of the tree:
        // a matching must assign each unused color its own usable edge.
        if (depth >= n - (n + 1) / 2) {
            std::vector<std::vector<int>> adj;
            std::vector<int> unused;
            for (int c = 0; c < m; ++c)
                if (!used_colors.test(c)) unused.push_back(c);
            adj.reserve(unused.size());
            for (int c : unused) {
                const Digraph& d = dc.member(c);
                std::vector<int> ids;
                for (int u = tail_set.first(); u >= 0; u = tail_set.next(u)) {
                    Vset dst = d.out_neighbors(u) & head_set;
                    dst.reset(u);
                    if (cycle_mode && slots_left > 1 && u == head) dst.reset(anchor);
                    dst.for_each([&](int v) { ids.push_back(u * n + v); });
                }
                adj.push_back(std::move(ids));
            }
            if (kuhn_matching(adj, n * n) < static_cast<int>(unused.size())) {
                ++budget.prunes;
                return true;
            }
        }
        return false;
    }

    bool dfs() {
        if (!budget.tick()) return false;
        const int head = path.back();
        const int depth = static_cast<int>(path.size()) - 1;

        if (cycle_mode && depth == n - 1) {
            for (int c = 0; c < m; ++c) {
                if (used_colors.test(c)) continue;
                if (dc.has_edge(c, head, anchor)) {
                    path_colors.push_back(c);
                    found = RainbowCertificate::from_cycle(CertKind::hamilton_cycle, path,
                                                           path_colors);
                    return true;
                }
            }
            return false;
        }
        if (!cycle_mode && depth == n - 1) {
            RainbowCertificate cert;
            cert.kind = CertKind::hamilton_path;
            for (int k = 0; k + 1 < n; ++k) cert.edges.emplace_back(path[k], path[k + 1]);
            cert.colors = path_colors;
            found = cert;
            return true;
        }

        if (prune_here()) return false;

        // Fail-first: try successor vertices with the fewest live colors.
        struct Cand {
            int options;
            int w;
        };
        std::vector<Cand> cands;
        for (int w = 0; w < n; ++w) {
            if (visited.test(w)) continue;
            int options = 0;
            for (int c = 0; c < m; ++c)
                if (!used_colors.test(c) && dc.has_edge(c, head, w)) ++options;
            if (options > 0) cands.push_back({options, w});
        }
        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            return a.options != b.options ? a.options < b.options : a.w < b.w;
        });

        for (const Cand& cand : cands) {
            for (int c = 0; c < m; ++c) {
                if (used_colors.test(c) || !dc.has_edge(c, head, cand.w)) continue;
                path.push_back(cand.w);
                path_colors.push_back(c);
                visited.set(cand.w);
                used_colors.set(c);
                if (dfs()) return true;
                used_colors.reset(c);
                visited.reset(cand.w);
                path_colors.pop_back();
                path.pop_back();
                if (budget.aborted) return false;
            }
        }
        return false;
    }
};

SolveOutcome run_cycle_like(const DigraphCollection& dc, const SearchConfig& cfg, bool cycle_mode) {
    cfg.check();
    SolveOutcome out;

    std::vector<int> starts;
    if (cycle_mode) {
        if (cfg.symmetry_break) starts = {0};
        else for (int v = 0; v < dc.order(); ++v) starts.push_back(v);
    } else {
        for (int v = 0; v < dc.order(); ++v) starts.push_back(v);
    }

    auto run_single = [&](Budget& budget) -> std::optional<RainbowCertificate> {
        for (int s : starts) {
            CycleSearch search(dc, cycle_mode);
            search.budget = budget;
            search.budget.nodes = budget.nodes;
            search.anchor = s;
            search.path = {s};
            search.visited.set(s);
            const bool ok = search.dfs();
            budget.nodes = search.budget.nodes;
            budget.prunes = search.budget.prunes;
            budget.aborted = search.budget.aborted;
            if (ok) return search.found;
            if (budget.aborted) return std::nullopt;
        }
        return std::nullopt;
    };

    if (!cfg.parallel) {
        Budget budget;
        budget.deadline_ms = cfg.time_budget_ms;
        budget.node_budget = cfg.node_budget;
        auto cert = run_single(budget);
        out.stats.nodes = budget.nodes;
        out.stats.prunes = budget.prunes;
        out.stats.wall_ms = budget.elapsed_ms();
        if (cert) {
            out.status = SolveStatus::found;
            out.certificate = std::move(cert);
        } else if (budget.aborted) {
            out.status = SolveStatus::timeout;
        } else {
            out.status = SolveStatus::none;
            out.exhausted = true;
        }
        return out;
    }

    // Root-level parallelism over the first (vertex, color) branch. Existence
    // is deterministic; the witness is first-found-wins.
    struct RootBranch {
        int start, w, c;
    };
    std::vector<RootBranch> roots;
    for (int s : starts) {
        for (int w = 0; w < dc.order(); ++w) {
            if (w == s) continue;
            for (int c = 0; c < dc.colors(); ++c)
                if (dc.has_edge(c, s, w)) roots.push_back({s, w, c});
        }
    }
    std::atomic<bool> stop{false};
    std::atomic<std::size_t> next{0};
    std::atomic<bool> any_abort{false};
    std::atomic<std::int64_t> total_nodes{0}, total_prunes{0};
    std::mutex result_mutex;
    std::optional<RainbowCertificate> result;
    const unsigned workers = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    Budget shared_clock;  // for a common deadline reference

    auto worker_fn = [&]() {
        while (true) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= roots.size() || stop.load()) break;
            const RootBranch& rb = roots[idx];
            CycleSearch search(dc, cycle_mode);
            search.budget.start = shared_clock.start;
            search.budget.deadline_ms = cfg.time_budget_ms;
            search.budget.node_budget = cfg.node_budget;
            search.budget.stop = &stop;
            search.anchor = rb.start;
            search.path = {rb.start, rb.w};
            search.path_colors = {rb.c};
            search.visited.set(rb.start);
            search.visited.set(rb.w);
            search.used_colors.set(rb.c);
            const bool ok = search.dfs();
            total_nodes += search.budget.nodes;
            total_prunes += search.budget.prunes;
            if (search.budget.aborted && !stop.load()) any_abort = true;
            if (ok) {
                std::lock_guard<std::mutex> lock(result_mutex);
                if (!result) result = search.found;
                stop = true;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker_fn);
    for (auto& t : pool) t.join();

    out.stats.nodes = total_nodes.load();
    out.stats.prunes = total_prunes.load();
    out.stats.wall_ms = shared_clock.elapsed_ms();
    if (result) {
        out.status = SolveStatus::found;
        out.certificate = std::move(result);
    } else if (any_abort.load()) {
        out.status = SolveStatus::timeout;
    } else {
        out.status = SolveStatus::none;
        out.exhausted = true;
    }
    return out;
}

}  // namespace

SolveOutcome find_transversal_hamilton_cycle(const DigraphCollection& dc, const SearchConfig& cfg) {
    if (dc.order() < 2) fail(ErrorKind::invalid_argument, "hamilton cycle needs n >= 2");
    if (dc.colors() != dc.order())
        fail(ErrorKind::shape, "transversal hamilton cycle needs m == n (got m=" +
                                   std::to_string(dc.colors()) + ", n=" +
                                   std::to_string(dc.order()) + ")");
    return run_cycle_like(dc, cfg, true);
}

SolveOutcome find_transversal_hamilton_path(const DigraphCollection& dc, const SearchConfig& cfg) {
    if (dc.order() < 2) fail(ErrorKind::invalid_argument, "hamilton path needs n >= 2");
    if (dc.colors() != dc.order() - 1)
        fail(ErrorKind::shape, "transversal hamilton path needs m == n-1");
    return run_cycle_like(dc, cfg, false);
}

// ---------------------------------------------------------------------------
// Transversal perfect matching
// ---------------------------------------------------------------------------

namespace {

struct MatchingSearch {
    const BipartiteCollection& bc;
    int n, m;
    Budget budget;
    Vset free_left, free_right, unused_colors;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> edge_colors;
    std::optional<RainbowCertificate> found;

    explicit MatchingSearch(const BipartiteCollection& b)
        : bc(b), n(b.part_size()), m(b.colors()), free_left(b.part_size()),
          free_right(b.part_size()), unused_colors(b.colors()) {
        free_left.fill();
        free_right.fill();
        unused_colors.fill();
    }

    bool prune_here() {
        // Union graph over unused colors restricted to free vertices must
        // saturate every free left vertex.
        std::vector<std::vector<int>> adj;
        std::vector<int> lefts = free_left.to_vector();
        adj.reserve(lefts.size());
        for (int l : lefts) {
            Vset reach(n);
            for (int c = unused_colors.first(); c >= 0; c = unused_colors.next(c))
                reach |= bc.right_neighbors(c, l);
            reach &= free_right;
            adj.push_back(reach.to_vector());
        }
        if (kuhn_matching(adj, n) < static_cast<int>(lefts.size())) {
            ++budget.prunes;
            return true;
        }
        // Each free right vertex needs an available partner.
        for (int r = free_right.first(); r >= 0; r = free_right.next(r)) {
            bool live = false;
            for (int c = unused_colors.first(); c >= 0 && !live; c = unused_colors.next(c))
                if (bc.left_neighbors(c, r).intersects(free_left)) live = true;
            if (!live) {
                ++budget.prunes;
                return true;
            }
        }
        // Each unused color needs a usable edge.
        for (int c = unused_colors.first(); c >= 0; c = unused_colors.next(c)) {
            bool live = false;
            for (int l = free_left.first(); l >= 0 && !live; l = free_left.next(l))
                if (bc.right_neighbors(c, l).intersects(free_right)) live = true;
            if (!live) {
                ++budget.prunes;
                return true;
            }
        }
        return false;
    }

    bool dfs() {
        if (!budget.tick()) return false;
        if (free_left.empty()) {
            RainbowCertificate cert;
            cert.kind = CertKind::matching;
            cert.edges = edges;
            cert.colors = edge_colors;
            found = cert;
            return true;
        }
        if (prune_here()) return false;

        // Fail-first: the free left vertex with the fewest (right, color)
        // options.
        int best_l = -1;
        std::int64_t best_options = -1;
        for (int l = free_left.first(); l >= 0; l = free_left.next(l)) {
            std::int64_t options = 0;
            for (int c = unused_colors.first(); c >= 0; c = unused_colors.next(c))
                options += bc.right_neighbors(c, l).count_and(free_right);
            if (best_options < 0 || options < best_options) {
                best_options = options;
                best_l = l;
            }
        }
        if (best_options == 0) {
            ++budget.prunes;
            return false;
        }

        for (int r = free_right.first(); r >= 0; r = free_right.next(r)) {
            for (int c = unused_colors.first(); c >= 0; c = unused_colors.next(c)) {
                if (!bc.has_edge(c, best_l, r)) continue;
                free_left.reset(best_l);
                free_right.reset(r);
                unused_colors.reset(c);
                edges.emplace_back(best_l, r);
                edge_colors.push_back(c);
                if (dfs()) return true;
                edge_colors.pop_back();
                edges.pop_back();
                unused_colors.set(c);
                free_right.set(r);
                free_left.set(best_l);
                if (budget.aborted) return false;
            }
        }
        return false;
    }
};

}  // namespace

SolveOutcome find_transversal_perfect_matching(const BipartiteCollection& bc,
                                               const SearchConfig& cfg) {
    cfg.check();
    if (bc.colors() != bc.part_size())
        fail(ErrorKind::shape, "transversal perfect matching needs m == n");
    MatchingSearch search(bc);
    search.budget.deadline_ms = cfg.time_budget_ms;
    search.budget.node_budget = cfg.node_budget;
    const bool ok = search.dfs();
    SolveOutcome out;
    out.stats.nodes = search.budget.nodes;
    out.stats.prunes = search.budget.prunes;
    out.stats.wall_ms = search.budget.elapsed_ms();
    if (ok) {
        out.status = SolveStatus::found;
        out.certificate = search.found;
    } else if (search.budget.aborted) {
        out.status = SolveStatus::timeout;
    } else {
        out.status = SolveStatus::none;
        out.exhausted = true;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rainbow cycle cover (independent of the matching reduction; the
// equivalence with the transversal PM on the characteristic bipartite
// collection is a tested contract, not an implementation shortcut)
// ---------------------------------------------------------------------------

namespace {

struct CoverSearch {
    const DigraphCollection& dc;
    int n, m;
    Budget budget;
    std::vector<int> successor;   // -1 when unassigned
    std::vector<int> succ_color;
    Vset tails_left, targets_left, unused_colors;
    std::optional<RainbowCertificate> found;

    explicit CoverSearch(const DigraphCollection& c)
        : dc(c), n(c.order()), m(c.colors()), successor(c.order(), -1),
          succ_color(c.order(), -1), tails_left(c.order()), targets_left(c.order()),
          unused_colors(c.colors()) {
        tails_left.fill();
        targets_left.fill();
        unused_colors.fill();
    }

    bool prune_here() {
        std::vector<std::vector<int>> adj;
        std::vector<int> tails = tails_left.to_vector();
        for (int v : tails) {
            Vset reach(n);
            for (int c = unused_colors.first(); c >= 0; c = unused_colors.next(c))
                reach |= dc.member(c).out_neighbors(v);
            reach &= targets_left;
            reach.reset(v);  // no fixed points
            adj.push_back(reach.to_vector());
        }
        if (kuhn_matching(adj, n) < static_cast<int>(tails.size())) {
            ++budget.prunes;
            return true;
        }
        for (int c = unused_colors.first(); c >= 0; c = unused_colors.next(c)) {
            bool live = false;
            const Digraph& d = dc.member(c);
            for (int v = tails_left.first(); v >= 0 && !live; v = tails_left.next(v)) {
                Vset dst = d.out_neighbors(v) & targets_left;
                dst.reset(v);
                if (!dst.empty()) live = true;
            }
            if (!live) {
                ++budget.prunes;
                return true;
            }
        }
        return false;
    }

    bool dfs() {
        if (!budget.tick()) return false;
        if (tails_left.empty()) {
            RainbowCertificate cert;
            cert.kind = CertKind::cycle_cover;
            for (int v = 0; v < n; ++v) {
                cert.edges.emplace_back(v, successor[v]);
                cert.colors.push_back(succ_color[v]);
            }
            found = cert;
            return true;
        }
        if (prune_here()) return false;

        int best_v = -1;
        std::int64_t best_options = -1;
        for (int v = tails_left.first(); v >= 0; v = tails_left.next(v)) {
            std::int64_t options = 0;
            for (int c = unused_colors.first(); c >= 0; c = unused_colors.next(c)) {
                Vset dst = dc.member(c).out_neighbors(v) & targets_left;
                dst.reset(v);
                options += dst.count();
            }
            if (best_options < 0 || options < best_options) {
                best_options = options;
                best_v = v;
            }
        }
        if (best_options == 0) {
            ++budget.prunes;
            return false;
        }

        for (int t = targets_left.first(); t >= 0; t = targets_left.next(t)) {
            if (t == best_v) continue;
            for (int c = unused_colors.first(); c >= 0; c = unused_colors.next(c)) {
                if (!dc.has_edge(c, best_v, t)) continue;
                successor[best_v] = t;
                succ_color[best_v] = c;
                tails_left.reset(best_v);
                targets_left.reset(t);
                unused_colors.reset(c);
                if (dfs()) return true;
                unused_colors.set(c);
                targets_left.set(t);
                tails_left.set(best_v);
                successor[best_v] = -1;
                succ_color[best_v] = -1;
                if (budget.aborted) return false;
            }
        }
        return false;
    }
};

}  // namespace

SolveOutcome rainbow_cycle_cover(const DigraphCollection& dc, const SearchConfig& cfg) {
    cfg.check();
    if (dc.colors() != dc.order()) fail(ErrorKind::shape, "rainbow cycle cover needs m == n");
    CoverSearch search(dc);
    search.budget.deadline_ms = cfg.time_budget_ms;
    search.budget.node_budget = cfg.node_budget;
    const bool ok = search.dfs();
    SolveOutcome out;
    out.stats.nodes = search.budget.nodes;
    out.stats.prunes = search.budget.prunes;
    out.stats.wall_ms = search.budget.elapsed_ms();
    if (ok) {
        out.status = SolveStatus::found;
        out.certificate = search.found;
    } else if (search.budget.aborted) {
        out.status = SolveStatus::timeout;
    } else {
        out.status = SolveStatus::none;
        out.exhausted = true;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Maximum rainbow matching (branch and bound)
// ---------------------------------------------------------------------------

namespace {

struct MaxRainbowSearch {
    const BipartiteCollection& bc;
    int n, m;
    Budget budget;
    Vset free_left, free_right;
    std::vector<char> color_state;  // 0 = open, 1 = used, 2 = skipped
    std::vector<std::pair<int, int>> edges;
    std::vector<int> edge_colors;
    int best_size = 0;
    std::vector<std::pair<int, int>> best_edges;
    std::vector<int> best_colors;

    explicit MaxRainbowSearch(const BipartiteCollection& b)
        : bc(b), n(b.part_size()), m(b.colors()), free_left(b.part_size()),
          free_right(b.part_size()), color_state(b.colors(), 0) {
        free_left.fill();
        free_right.fill();
    }

    int upper_bound() {
        // Bound 1: ordinary maximum matching in the union of open colors.
        std::vector<std::vector<int>> adj;
        int open_with_edge = 0;
        std::vector<Vset> union_adj(static_cast<std::size_t>(free_left.count()));
        std::vector<int> lefts = free_left.to_vector();
        for (std::size_t i = 0; i < lefts.size(); ++i) union_adj[i] = Vset(n);
        for (int c = 0; c < m; ++c) {
            if (color_state[c] != 0) continue;
            bool has_edge = false;
            for (std::size_t i = 0; i < lefts.size(); ++i) {
                Vset r = bc.right_neighbors(c, lefts[i]) & free_right;
                if (!r.empty()) has_edge = true;
                union_adj[i] |= r;
            }
            if (has_edge) ++open_with_edge;
        }
        adj.reserve(lefts.size());
        for (auto& s : union_adj) adj.push_back(s.to_vector());
        const int vertex_bound = kuhn_matching(adj, n);
        return static_cast<int>(edges.size()) + std::min(vertex_bound, open_with_edge);
    }

    void dfs() {
        budget.tick();
        if (static_cast<int>(edges.size()) > best_size) {
            best_size = static_cast<int>(edges.size());
            best_edges = edges;
            best_colors = edge_colors;
        }
        if (upper_bound() <= best_size) {
            ++budget.prunes;
            return;
        }
        // Branch on the open color with the fewest usable edges.
        int best_c = -1;
        int best_count = -1;
        for (int c = 0; c < m; ++c) {
            if (color_state[c] != 0) continue;
            int count = 0;
            for (int l = free_left.first(); l >= 0; l = free_left.next(l))
                count += bc.right_neighbors(c, l).count_and(free_right);
            if (count == 0) continue;
            if (best_count < 0 || count < best_count) {
                best_count = count;
                best_c = c;
            }
        }
        if (best_c < 0) return;  // no extendable color

        for (int l = free_left.first(); l >= 0; l = free_left.next(l)) {
            Vset rs = bc.right_neighbors(best_c, l) & free_right;
            for (int r = rs.first(); r >= 0; r = rs.next(r)) {
                free_left.reset(l);
                free_right.reset(r);
                color_state[best_c] = 1;
                edges.emplace_back(l, r);
                edge_colors.push_back(best_c);
                dfs();
                edge_colors.pop_back();
                edges.pop_back();
                color_state[best_c] = 0;
                free_right.set(r);
                free_left.set(l);
            }
        }
        color_state[best_c] = 2;  // or never use this color
        dfs();
        color_state[best_c] = 0;
    }
};

}  // namespace

MaxMatchingResult max_rainbow_matching(const BipartiteCollection& bc, const SearchConfig& cfg) {
    cfg.check();
    MaxRainbowSearch search(bc);
    search.budget.deadline_ms = cfg.time_budget_ms;
    search.budget.node_budget = cfg.node_budget;
    search.dfs();
    MaxMatchingResult res;
    res.size = search.best_size;
    res.certificate.kind = CertKind::matching;
    res.certificate.edges = search.best_edges;
    res.certificate.colors = search.best_colors;
    res.stats.nodes = search.budget.nodes;
    res.stats.prunes = search.budget.prunes;
    res.stats.wall_ms = search.budget.elapsed_ms();
    return res;
}

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------

int max_bipartite_matching(const std::vector<Vset>& left_adj, int right_universe) {
    std::vector<std::vector<int>> adj;
    adj.reserve(left_adj.size());
    for (const auto& s : left_adj) adj.push_back(s.to_vector());
    return kuhn_matching(adj, right_universe);
}

namespace {

// Permanent of a 0/1 slot-by-color matrix via Ryser's formula; rows as color
// bitmasks. n <= 20 is safe for the int64 counts at oracle scale.
std::int64_t permanent(const std::vector<std::uint32_t>& rows) {
    const int n = static_cast<int>(rows.size());
    std::int64_t total = 0;
    const std::uint32_t full = n >= 32 ? 0xffffffffu : ((1u << n) - 1);
    for (std::uint32_t subset = 1; subset <= full; ++subset) {
        std::int64_t prod = 1;
        for (int k = 0; k < n && prod; ++k)
            prod *= std::popcount(rows[k] & subset);
        if (prod == 0) continue;
        const int sign = ((n - std::popcount(subset)) & 1) ? -1 : 1;
        total += sign * prod;
    }
    return total;
}

}  // namespace

OracleResult oracle_transversal_hamilton_cycle(const DigraphCollection& dc, int bound) {
    const int n = dc.order();
    if (n < 2) fail(ErrorKind::invalid_argument, "oracle needs n >= 2");
    if (dc.colors() != n) fail(ErrorKind::shape, "oracle needs m == n");
    if (n > bound)
        fail(ErrorKind::budget, "oracle refuses n=" + std::to_string(n) + " above bound " +
                                    std::to_string(bound));

    OracleResult res;
    std::vector<int> perm;
    for (int v = 1; v < n; ++v) perm.push_back(v);

    std::vector<std::uint32_t> rows(n);
    do {
        // cycle 0 -> perm[0] -> ... -> perm[n-2] -> 0
        bool all_present = true;
        for (int k = 0; k < n && all_present; ++k) {
            const int u = k == 0 ? 0 : perm[k - 1];
            const int v = k == n - 1 ? 0 : perm[k];
            std::uint32_t mask = 0;
            for (int c = 0; c < n; ++c)
                if (dc.has_edge(c, u, v)) mask |= (1u << c);
            if (!mask) all_present = false;
            rows[k] = mask;
        }
        if (!all_present) continue;
        ++res.cycles_checked;
        const std::int64_t count = permanent(rows);
        if (count > 0) {
            res.pair_count += count;
            if (!res.exists) {
                res.exists = true;
                // Extract one bijection with a Kuhn matching over the rows.
                std::vector<std::vector<int>> adj(n);
                for (int k = 0; k < n; ++k)
                    for (int c = 0; c < n; ++c)
                        if (rows[k] & (1u << c)) adj[k].push_back(c);
                std::vector<int> match_right(n, -1);
                std::vector<char> seen(n);
                for (int k = 0; k < n; ++k) {
                    std::fill(seen.begin(), seen.end(), 0);
                    kuhn_augment(adj, k, match_right, seen);
                }
                std::vector<int> slot_color(n, -1);
                for (int c = 0; c < n; ++c)
                    if (match_right[c] >= 0) slot_color[match_right[c]] = c;
                std::vector<int> cycle = {0};
                for (int v : perm) cycle.push_back(v);
                res.witness =
                    RainbowCertificate::from_cycle(CertKind::hamilton_cycle, cycle, slot_color);
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return res;
}

}  // namespace tdg
