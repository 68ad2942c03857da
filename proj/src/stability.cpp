#include "tdg/stability.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace tdg {

std::string stability_verdict_name(StabilityVerdict v) {
    switch (v) {
        case StabilityVerdict::strongly_stable: return "strongly-stable";
        case StabilityVerdict::weakly_stable: return "weakly-stable";
        case StabilityVerdict::none: return "none";
    }
    return "?";
}

Vset good_vertices(const DigraphCollection& dc, int color, const PartitionRecords& records) {
    Vset all(dc.order());
    all.fill();
    if (color < 0 || color >= dc.colors())
        fail(ErrorKind::invalid_argument, "good_vertices: color out of range");
    if (color >= static_cast<int>(records.size()) || !records[color]) return all;
    all.subtract(records[color]->set_l(dc.order()));
    return all;
}

namespace {

bool ge_delta(int count, const Ratio& delta, int n) {
    return count_at_least(count, delta, n);
}

// Source set against the other record's (A_j, B_j) pair; crossing clauses
// are evaluated over every label choice so the predicate is invariant under
// the records' A<->B (and EC3 rotation) symmetries and under record order.
bool a1_source(const Vset& src, const CharacteristicPartition& target, const Ratio& delta,
               int n) {
    return ge_delta(src.symdiff_count(target.set_a(n)), delta, n) &&
           ge_delta(src.symdiff_count(target.set_b(n)), delta, n);
}

// W-family disjunct: source W-set against the target's odd or even family.
bool w_family(const Vset& src, const CharacteristicPartition& target, const Ratio& delta, int n,
              int family) {  // family 1 -> {W^1, W^3}, 2 -> {W^2, W^4}
    return ge_delta(src.symdiff_count(target.w_set(family, n)), delta, n) &&
           ge_delta(src.symdiff_count(target.w_set(family + 2, n)), delta, n);
}

}  // namespace

CrossingResult is_crossing(const CharacteristicPartition& rec_i,
                           const CharacteristicPartition& rec_j, const Ratio& delta, int n) {
    CrossingResult res;
    const bool i3 = rec_i.is_ec3(), j3 = rec_j.is_ec3();
    if (!i3 && !j3) {
        res.clause = "A1";
        const struct {
            const CharacteristicPartition* from;
            const CharacteristicPartition* to;
            char name;
            bool use_b;
        } sources[] = {{&rec_i, &rec_j, 'i', false},
                       {&rec_i, &rec_j, 'i', true},
                       {&rec_j, &rec_i, 'j', false},
                       {&rec_j, &rec_i, 'j', true}};
        for (const auto& s : sources) {
            const Vset src = s.use_b ? s.from->set_b(n) : s.from->set_a(n);
            if (a1_source(src, *s.to, delta, n)) {
                res.crossing = true;
                res.disjunct = std::string("A1[") + (s.use_b ? "B_" : "A_") + s.name + "]";
                return res;
            }
        }
        return res;
    }
    if (i3 && j3) {
        res.clause = "A2";
        for (const auto& [from, to, name] :
             {std::tuple{&rec_i, &rec_j, 'i'}, std::tuple{&rec_j, &rec_i, 'j'}}) {
            for (int x = 1; x <= 4; ++x) {
                const int family = (x % 2 == 1) ? 1 : 2;
                if (w_family(from->w_set(x, n), *to, delta, n, family)) {
                    res.crossing = true;
                    res.family = family;
                    res.disjunct = "A2[W_" + std::string(1, name) + "^" + std::to_string(x) + "]";
                    return res;
                }
            }
        }
        return res;
    }
    // Mixed pair: roles are forced by kind.
    const CharacteristicPartition& r12 = i3 ? rec_j : rec_i;
    const CharacteristicPartition& r3 = i3 ? rec_i : rec_j;
    res.clause = "A3";
    for (const bool use_b : {false, true}) {
        const Vset src = use_b ? r12.set_b(n) : r12.set_a(n);
        for (int family : {1, 2}) {
            if (w_family(src, r3, delta, n, family)) {
                res.crossing = true;
                res.family = family;
                res.disjunct = std::string("A3[") + (use_b ? "B" : "A") + ",W^" +
                               std::to_string(family) + "]";
                return res;
            }
        }
    }
    return res;
}

ObservationReport observation_check(const CharacteristicPartition& rec_i,
                                    const CharacteristicPartition& rec_j, const Ratio& delta,
                                    int n) {
    ObservationReport report;
    const CrossingResult cr = is_crossing(rec_i, rec_j, delta, n);
    if (!cr.crossing) return report;
    report.applicable = true;
    const Ratio quarter = delta / Ratio(4, 1);
    const std::int64_t bound = quarter.ceil_scaled(n);

    auto check = [&](const std::string& name, const Vset& x, const Vset& y) {
        ObservationCheck c;
        c.intersection = name;
        c.size = x.count_and(y);
        c.bound = bound;
        c.pass = count_at_least(static_cast<int>(c.size), quarter, n);
        if (!c.pass) report.pass = false;
        report.checks.push_back(c);
    };

    if (cr.clause == "A1") {
        check("A_i&A_j", rec_i.set_a(n), rec_j.set_a(n));
        check("A_i&B_j", rec_i.set_a(n), rec_j.set_b(n));
        check("B_i&A_j", rec_i.set_b(n), rec_j.set_a(n));
        check("B_i&B_j", rec_i.set_b(n), rec_j.set_b(n));
    } else if (cr.clause == "A2") {
        const int base = cr.family == 1 ? 1 : 2;
        for (int x : {base, base + 2})
            for (int y : {base, base + 2})
                check("W_i^" + std::to_string(x) + "&W_j^" + std::to_string(y), rec_i.w_set(x, n),
                      rec_j.w_set(y, n));
    } else {
        const CharacteristicPartition& r12 = rec_i.is_ec3() ? rec_j : rec_i;
        const CharacteristicPartition& r3 = rec_i.is_ec3() ? rec_i : rec_j;
        const int base = cr.family == 1 ? 1 : 2;
        for (const char* xname : {"A", "B"}) {
            const Vset x = xname[0] == 'A' ? r12.set_a(n) : r12.set_b(n);
            for (int y : {base, base + 2})
                check(std::string(xname) + "_i&W_j^" + std::to_string(y), x, r3.w_set(y, n));
        }
    }
    return report;
}

CrossGraphs build_cross_graph(const DigraphCollection& dc, const Ratio& delta,
                              const PartitionRecords& records) {
    CrossGraphs out;
    const int m = dc.colors();
    const int n = dc.order();
    for (int i = 0; i < m; ++i) {
        if (i >= static_cast<int>(records.size()) || !records[i]) continue;
        for (int j = i + 1; j < m; ++j) {
            if (j >= static_cast<int>(records.size()) || !records[j]) continue;
            const CrossingResult cr = is_crossing(*records[i], *records[j], delta, n);
            if (!cr.crossing) continue;
            const int mode = cr.clause == "A1" ? 0 : cr.clause == "A2" ? 1 : 2;
            out.edges[mode].emplace_back(i, j);
            out.disjunct_counts[mode].push_back(cr.family == 0 ? 1 : cr.family);
        }
    }
    return out;
}

StabilityReport classify_stability(const DigraphCollection& dc, const Ratio& gamma,
                                   const Ratio& alpha, const Ratio& eps, const Ratio& delta,
                                   const PartitionRecords& records, const StabilityOptions& opts) {
    StabilityReport report;
    report.gamma = gamma;
    report.alpha = alpha;
    report.eps = eps;
    report.delta = delta;
    const int m = dc.colors();

    for (int c = 0; c < m; ++c) {
        NicenessOptions nopts = opts.niceness;
        nopts.seed = Rng::derive(opts.niceness.seed, static_cast<std::uint64_t>(c));
        NicenessVerdict v;
        try {
            nopts.mode = NicenessMode::exact;
            v = is_eps_nice(dc.member(c), alpha, nopts);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::budget) throw;
            nopts.mode = NicenessMode::sampled;
            v = is_eps_nice(dc.member(c), alpha, nopts);
        }
        if (v.nice) {
            report.nice_colors.push_back(c);
            if (!v.certified) report.uncertified_nice_colors.push_back(c);
        } else if (c >= static_cast<int>(records.size()) || !records[c]) {
            report.unrecorded_extremal_colors.push_back(c);
        }
    }
    if (!report.uncertified_nice_colors.empty())
        report.flags.push_back("niceness sampled (uncertified) for " +
                               std::to_string(report.uncertified_nice_colors.size()) + " colors");
    if (!report.unrecorded_extremal_colors.empty())
        report.flags.push_back("no partition record for " +
                               std::to_string(report.unrecorded_extremal_colors.size()) +
                               " non-nice colors");

    report.cross = build_cross_graph(dc, delta, records);

    if (count_at_least(static_cast<std::int64_t>(report.nice_colors.size()), gamma, m)) {
        report.verdict = StabilityVerdict::strongly_stable;
        return report;
    }
    const std::int64_t m2 = static_cast<std::int64_t>(m) * m;
    for (int k = 0; k < 3; ++k) {
        if (count_at_least(static_cast<std::int64_t>(report.cross.edges[k].size()), delta, m2)) {
            report.verdict = StabilityVerdict::weakly_stable;
            report.weakly_mode = k + 1;
            return report;
        }
    }
    report.verdict = StabilityVerdict::none;
    return report;
}

// ---------------------------------------------------------------------------
// mu-niceness of a bipartite collection
// ---------------------------------------------------------------------------

MuNiceVerdict collection_mu_nice(const BipartiteCollection& bc, const Ratio& mu,
                                 const NicenessOptions& opts) {
    if (!(mu > Ratio(0, 1))) fail(ErrorKind::invalid_argument, "collection_mu_nice: mu must be > 0");
    const int n = bc.part_size();
    const int k = n / 2;
    if (k < 1) fail(ErrorKind::invalid_argument, "collection_mu_nice: n too small");
    MuNiceVerdict verdict;
    verdict.mode = opts.mode;
    verdict.threshold = mu.ceil_scaled(static_cast<std::int64_t>(n) * n * n);

    // Weight of (l, r) = number of colors carrying the edge; the minimizing B
    // for a fixed A takes the k lightest columns.
    std::vector<std::vector<int>> weight(n, std::vector<int>(n, 0));
    for (int c = 0; c < bc.colors(); ++c)
        for (int l = 0; l < n; ++l)
            bc.right_neighbors(c, l).for_each([&](int r) { ++weight[l][r]; });

    auto min_for_a = [&](const std::vector<int>& a, std::vector<int>* b_out) {
        std::vector<std::pair<std::int64_t, int>> cols(n);
        for (int r = 0; r < n; ++r) {
            std::int64_t w = 0;
            for (int l : a) w += weight[l][r];
            cols[r] = {w, r};
        }
        std::sort(cols.begin(), cols.end());
        std::int64_t total = 0;
        if (b_out) b_out->clear();
        for (int i = 0; i < k; ++i) {
            total += cols[i].first;
            if (b_out) b_out->push_back(cols[i].second);
        }
        return total;
    };

    std::int64_t best = -1;
    std::vector<int> best_a, best_b, cur_b;
    if (opts.mode == NicenessMode::exact) {
        const std::int64_t c1 = [&] {
            __int128 r = 1;
            for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
            return r > opts.exact_budget ? opts.exact_budget + 1 : static_cast<std::int64_t>(r);
        }();
        if (c1 > opts.exact_budget / std::max<std::int64_t>(1, c1) || n > 63)
            fail(ErrorKind::budget, "collection_mu_nice: exact mode above budget");
        std::vector<int> a(k);
        std::iota(a.begin(), a.end(), 0);
        while (true) {
            const std::int64_t val = min_for_a(a, &cur_b);
            if (best < 0 || val < best) {
                best = val;
                best_a = a;
                best_b = cur_b;
            }
            int i = k - 1;
            while (i >= 0 && a[i] == n - k + i) --i;
            if (i < 0) break;
            ++a[i];
            for (int j = i + 1; j < k; ++j) a[j] = a[j - 1] + 1;
        }
    } else {
        Rng rng(opts.seed);
        for (int restart = 0; restart < opts.restarts; ++restart) {
            std::vector<int> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            rng.shuffle(perm);
            std::vector<int> a(perm.begin(), perm.begin() + k);
            std::sort(a.begin(), a.end());
            // Hill descent on A; B is re-picked optimally each step.
            std::int64_t value = min_for_a(a, &cur_b);
            for (int step = 0; step < 50 * n; ++step) {
                std::int64_t best_delta = 0;
                int swap_pos = -1, swap_in = -1;
                for (int pos = 0; pos < k; ++pos) {
                    for (int in = 0; in < n; ++in) {
                        if (std::find(a.begin(), a.end(), in) != a.end()) continue;
                        std::vector<int> trial = a;
                        trial[pos] = in;
                        const std::int64_t tv = min_for_a(trial, nullptr);
                        if (tv - value < best_delta) {
                            best_delta = tv - value;
                            swap_pos = pos;
                            swap_in = in;
                        }
                    }
                }
                if (swap_pos < 0) break;
                a[swap_pos] = swap_in;
                value += best_delta;
            }
            value = min_for_a(a, &cur_b);
            if (best < 0 || value < best) {
                best = value;
                best_a = a;
                best_b = cur_b;
            }
            if (best < verdict.threshold) break;
        }
    }
    verdict.min_value = best;
    verdict.nice = best >= verdict.threshold;
    verdict.certified = opts.mode == NicenessMode::exact || !verdict.nice;
    if (!verdict.nice) {
        std::sort(best_a.begin(), best_a.end());
        std::sort(best_b.begin(), best_b.end());
        verdict.witness = std::make_pair(best_a, best_b);
    }
    return verdict;
}

// ---------------------------------------------------------------------------
// Bipartite records
// ---------------------------------------------------------------------------

PartitionReport verify_bipartite_partition(const BipartiteCollection& bc, int color,
                                           const BipartitePartition& p) {
    const int n = bc.part_size();
    PartitionReport report;
    {
        std::vector<char> seen1(n, 0), seen2(n, 0);
        auto absorb = [&](const std::vector<int>& s, std::vector<char>& seen) {
            for (int v : s) {
                if (v < 0 || v >= n || seen[v])
                    fail(ErrorKind::invalid_argument,
                         "verify_bipartite_partition: sets do not partition a part");
                seen[v] = 1;
            }
        };
        absorb(p.a1, seen1);
        absorb(p.b1, seen1);
        absorb(p.c1, seen1);
        absorb(p.a2, seen2);
        absorb(p.b2, seen2);
        absorb(p.c2, seen2);
        for (int v = 0; v < n; ++v)
            if (!seen1[v] || !seen2[v])
                fail(ErrorKind::invalid_argument,
                     "verify_bipartite_partition: vertex unassigned");
    }

    const int k = static_cast<int>((Ratio(1, 2) - p.eps).ceil_scaled(n));
    report.add("size",
               static_cast<int>(p.a1.size()) == k && static_cast<int>(p.b1.size()) == k &&
                   static_cast<int>(p.a2.size()) == k && static_cast<int>(p.b2.size()) == k,
               "|A_i|=|B_i| expected " + std::to_string(k));

    const Ratio half2 = Ratio(1, 2) - p.eps * Ratio(2, 1);
    const Vset a1 = Vset::from(n, p.a1), b1 = Vset::from(n, p.b1);
    const Vset a2 = Vset::from(n, p.a2), b2 = Vset::from(n, p.b2);
    bool deg_ok = true;
    // d_G(v, X_i) >= (1/2-2eps)n for v in X_{3-i}: X_1 lives in V1 (left),
    // X_2 in V2 (right).
    for (int v : p.a2)
        if (!count_at_least(bc.left_neighbors(color, v).count_and(a1), half2, n)) {
            deg_ok = false;
            report.add("degree", false, "right vertex " + std::to_string(v) + ": d(v,A1) low");
        }
    for (int v : p.b2)
        if (!count_at_least(bc.left_neighbors(color, v).count_and(b1), half2, n)) {
            deg_ok = false;
            report.add("degree", false, "right vertex " + std::to_string(v) + ": d(v,B1) low");
        }
    for (int v : p.a1)
        if (!count_at_least(bc.right_neighbors(color, v).count_and(a2), half2, n)) {
            deg_ok = false;
            report.add("degree", false, "left vertex " + std::to_string(v) + ": d(v,A2) low");
        }
    for (int v : p.b1)
        if (!count_at_least(bc.right_neighbors(color, v).count_and(b2), half2, n)) {
            deg_ok = false;
            report.add("degree", false, "left vertex " + std::to_string(v) + ": d(v,B2) low");
        }
    if (deg_ok) report.add("degree", true, "all vertex degree bounds hold");

    const std::int64_t n2 = static_cast<std::int64_t>(n) * n;
    const std::int64_t e_a1b2 = bc.edges_between(color, a1, b2);
    std::int64_t e_a2b1 = 0;
    b1.for_each([&](int l) { e_a2b1 += bc.right_neighbors(color, l).count_and(a2); });
    report.add("cap", count_at_most(e_a1b2, p.eps, n2) || count_at_most(e_a2b1, p.eps, n2),
               "e(A1,B2)=" + std::to_string(e_a1b2) + ", e(A2,B1)=" + std::to_string(e_a2b1));
    return report;
}

Vset bipartite_good_vertices(const BipartiteCollection& bc, int color,
                             const BipartiteRecords& records, const Ratio& eps, int side) {
    const int n = bc.part_size();
    Vset out(n);
    const bool has_record =
        color < static_cast<int>(records.size()) && records[color].has_value();
    if (has_record) {
        out.fill();
        const auto& rec = *records[color];
        for (int v : (side == 1 ? rec.c1 : rec.c2)) out.reset(v);
        return out;
    }
    const Ratio bound = Ratio(1, 2) - eps * eps * eps;
    for (int v = 0; v < n; ++v) {
        const int deg = side == 1 ? bc.left_degree(color, v) : bc.right_degree(color, v);
        if (count_at_least(deg, bound, n)) out.set(v);
    }
    return out;
}

CrossingResult is_crossing_bipartite(const BipartitePartition& rec_i,
                                     const BipartitePartition& rec_j, const Ratio& delta, int n) {
    CrossingResult res;
    res.clause = "A1";
    const Vset ai = Vset::from(n, rec_i.a1), aj = Vset::from(n, rec_j.a1);
    const Vset bi = Vset::from(n, rec_i.b1), bj = Vset::from(n, rec_j.b1);
    const struct {
        const Vset* src;
        const Vset* ta;
        const Vset* tb;
        const char* name;
    } sources[] = {{&ai, &aj, &bj, "A1_i"},
                   {&bi, &aj, &bj, "B1_i"},
                   {&aj, &ai, &bi, "A1_j"},
                   {&bj, &ai, &bi, "B1_j"}};
    for (const auto& s : sources) {
        if (ge_delta(s.src->symdiff_count(*s.ta), delta, n) &&
            ge_delta(s.src->symdiff_count(*s.tb), delta, n)) {
            res.crossing = true;
            res.disjunct = std::string("A1[") + s.name + "]";
            return res;
        }
    }
    return res;
}

std::vector<std::pair<int, int>> build_cross_graph_bipartite(const BipartiteCollection& bc,
                                                             const Ratio& delta,
                                                             const BipartiteRecords& records) {
    std::vector<std::pair<int, int>> edges;
    const int m = bc.colors();
    for (int i = 0; i < m; ++i) {
        if (i >= static_cast<int>(records.size()) || !records[i]) continue;
        for (int j = i + 1; j < m; ++j) {
            if (j >= static_cast<int>(records.size()) || !records[j]) continue;
            if (is_crossing_bipartite(*records[i], *records[j], delta, bc.part_size()).crossing)
                edges.emplace_back(i, j);
        }
    }
    return edges;
}

StabilityReport classify_stability_bipartite(const BipartiteCollection& bc, const Ratio& gamma,
                                             const Ratio& alpha, const Ratio& eps,
                                             const Ratio& delta, const BipartiteRecords& records,
                                             const StabilityOptions& opts) {
    StabilityReport report;
    report.gamma = gamma;
    report.alpha = alpha;
    report.eps = eps;
    report.delta = delta;
    const int m = bc.colors();
    for (int c = 0; c < m; ++c) {
        NicenessOptions nopts = opts.niceness;
        nopts.seed = Rng::derive(opts.niceness.seed, static_cast<std::uint64_t>(c));
        NicenessVerdict v;
        try {
            nopts.mode = NicenessMode::exact;
            v = is_eps_nice_bipartite(bc, c, alpha, nopts);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::budget) throw;
            nopts.mode = NicenessMode::sampled;
            v = is_eps_nice_bipartite(bc, c, alpha, nopts);
        }
        if (v.nice) {
            report.nice_colors.push_back(c);
            if (!v.certified) report.uncertified_nice_colors.push_back(c);
        } else if (c >= static_cast<int>(records.size()) || !records[c]) {
            report.unrecorded_extremal_colors.push_back(c);
        }
    }
    if (!report.uncertified_nice_colors.empty())
        report.flags.push_back("niceness sampled (uncertified) for " +
                               std::to_string(report.uncertified_nice_colors.size()) + " colors");
    report.cross.edges[0] = build_cross_graph_bipartite(bc, delta, records);

    if (count_at_least(static_cast<std::int64_t>(report.nice_colors.size()), gamma, m)) {
        report.verdict = StabilityVerdict::strongly_stable;
        return report;
    }
    const std::int64_t m2 = static_cast<std::int64_t>(m) * m;
    if (count_at_least(static_cast<std::int64_t>(report.cross.edges[0].size()), delta, m2)) {
        report.verdict = StabilityVerdict::weakly_stable;
        report.weakly_mode = 1;
        return report;
    }
    report.verdict = StabilityVerdict::none;
    return report;
}

std::optional<BipartitePartition> derive_bipartite_record(const BipartiteCollection& bc, int color,
                                                          const Ratio& eps, std::uint64_t seed) {
    const int n = bc.part_size();
    const int k = static_cast<int>((Ratio(1, 2) - eps).ceil_scaled(n));
    if (2 * k > n) return std::nullopt;
    NicenessOptions nopts;
    nopts.seed = seed;
    NicenessVerdict v;
    try {
        nopts.mode = NicenessMode::exact;
        v = is_eps_nice_bipartite(bc, color, eps, nopts);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::budget) throw;
        nopts.mode = NicenessMode::sampled;
        v = is_eps_nice_bipartite(bc, color, eps, nopts);
    }
    if (v.nice || !v.witness) return std::nullopt;
    const auto& [wa, wb] = *v.witness;  // e(wa in V1, wb in V2) is small

    // Template: A1 := wa, B2 := wb, then B1/A2 greedily by degree into the
    // opposite fixed set (the record's degree clauses), C-sets take the rest.
    auto top_k = [&](int side, const Vset& target, const Vset& exclude) {
        std::vector<std::pair<std::int64_t, int>> scored;
        for (int v2 = 0; v2 < n; ++v2) {
            if (exclude.test(v2)) continue;
            const std::int64_t deg = side == 1 ? bc.right_neighbors(color, v2).count_and(target)
                                               : bc.left_neighbors(color, v2).count_and(target);
            scored.emplace_back(-deg, v2);
        }
        std::sort(scored.begin(), scored.end());
        std::vector<int> out;
        for (int i = 0; i < k && i < static_cast<int>(scored.size()); ++i)
            out.push_back(scored[i].second);
        std::sort(out.begin(), out.end());
        return out;
    };

    BipartitePartition p;
    p.eps = eps;
    p.a1.assign(wa.begin(), wa.begin() + std::min<std::size_t>(wa.size(), k));
    std::sort(p.a1.begin(), p.a1.end());
    p.b2.assign(wb.begin(), wb.begin() + std::min<std::size_t>(wb.size(), k));
    std::sort(p.b2.begin(), p.b2.end());
    const Vset a1 = Vset::from(n, p.a1), b2 = Vset::from(n, p.b2);
    p.a2 = top_k(2, a1, b2);       // A2: right vertices seeing A1
    const Vset a2 = Vset::from(n, p.a2);
    p.b1 = top_k(1, b2, a1);       // B1: left vertices seeing B2
    const Vset b1 = Vset::from(n, p.b1);
    for (int v = 0; v < n; ++v) {
        if (!a1.test(v) && !b1.test(v)) p.c1.push_back(v);
        if (!a2.test(v) && !b2.test(v)) p.c2.push_back(v);
    }
    if (verify_bipartite_partition(bc, color, p).pass) return p;
    // One more try with the roles of the witness sides swapped.
    BipartitePartition q;
    q.eps = eps;
    q.b1 = p.a1;
    q.a2 = p.b2;
    const Vset qb1 = Vset::from(n, q.b1), qa2 = Vset::from(n, q.a2);
    q.a1 = top_k(1, qa2, qb1);
    q.b2 = top_k(2, qb1, qa2);
    const Vset qa1 = Vset::from(n, q.a1), qb2 = Vset::from(n, q.b2);
    for (int v = 0; v < n; ++v) {
        if (!qa1.test(v) && !qb1.test(v)) q.c1.push_back(v);
        if (!qa2.test(v) && !qb2.test(v)) q.c2.push_back(v);
    }
    if (verify_bipartite_partition(bc, color, q).pass) return q;
    return std::nullopt;
}

std::pair<BipartiteCollection, BipartitePartition> gen_bipartite_extremal(int n, const Ratio& eps,
                                                                          int shift, int colors) {
    if (n < 4) fail(ErrorKind::invalid_argument, "gen_bipartite_extremal: n too small");
    const int k = static_cast<int>((Ratio(1, 2) - eps).ceil_scaled(n));
    if (2 * k > n || k < 1) fail(ErrorKind::invalid_argument, "gen_bipartite_extremal: bad sizes");
    BipartitePartition p;
    p.eps = eps;
    for (int i = 0; i < k; ++i) p.a1.push_back((i + shift) % n);
    for (int i = k; i < 2 * k; ++i) p.b1.push_back((i + shift) % n);
    std::sort(p.a1.begin(), p.a1.end());
    std::sort(p.b1.begin(), p.b1.end());
    const Vset a1 = Vset::from(n, p.a1), b1 = Vset::from(n, p.b1);
    for (int v = 0; v < n; ++v)
        if (!a1.test(v) && !b1.test(v)) p.c1.push_back(v);
    for (int i = 0; i < k; ++i) p.a2.push_back(i);
    for (int i = k; i < 2 * k; ++i) p.b2.push_back(i);
    for (int i = 2 * k; i < n; ++i) p.c2.push_back(i);

    const Vset a2 = Vset::from(n, p.a2), b2 = Vset::from(n, p.b2);
    BipartiteCollection bc(n, colors);
    for (int c = 0; c < colors; ++c) {
        for (int l : p.a1) a2.for_each([&](int r) { bc.add_edge(c, l, r); });
        for (int l : p.b1) b2.for_each([&](int r) { bc.add_edge(c, l, r); });
        for (int l : p.c1)
            for (int r = 0; r < n; ++r) bc.add_edge(c, l, r);
        for (int r : p.c2)
            for (int l = 0; l < n; ++l) bc.add_edge(c, l, r);
    }
    if (!verify_bipartite_partition(bc, 0, p).pass)
        fail(ErrorKind::internal, "gen_bipartite_extremal: planted record fails verification");
    return {bc, p};
}

}  // namespace tdg
