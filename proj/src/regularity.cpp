#include "tdg/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tdg/rng.hpp"

namespace tdg {

void CollectionSlice::check() const {
    if (!parent) fail(ErrorKind::invalid_argument, "slice: missing parent collection");
    if (v1.empty() || v2.empty() || colors.empty())
        fail(ErrorKind::invalid_argument, "slice: parts and colors must be nonempty");
    std::vector<char> seen(parent->order(), 0);
    for (int v : v1) {
        if (v < 0 || v >= parent->order() || seen[v])
            fail(ErrorKind::invalid_argument, "slice: bad V1");
        seen[v] = 1;
    }
    for (int v : v2) {
        if (v < 0 || v >= parent->order() || seen[v])
            fail(ErrorKind::invalid_argument, "slice: V1 and V2 must be disjoint");
        seen[v] = 1;
    }
    for (int c : colors)
        if (c < 0 || c >= parent->colors()) fail(ErrorKind::invalid_argument, "slice: bad color");
}

namespace {

// Local adjacency masks: bit j of out_local[c][i] set iff parent has edge
// v1[i] -> v2[j] in color c.
std::vector<std::vector<std::uint64_t>> local_masks(const CollectionSlice& s) {
    if (s.v2.size() > 64) fail(ErrorKind::budget, "slice: V2 larger than 64 not supported");
    std::vector<std::vector<std::uint64_t>> out(s.colors.size(),
                                                std::vector<std::uint64_t>(s.v1.size(), 0));
    for (std::size_t ci = 0; ci < s.colors.size(); ++ci) {
        const Digraph& d = s.parent->member(s.colors[ci]);
        for (std::size_t i = 0; i < s.v1.size(); ++i)
            for (std::size_t j = 0; j < s.v2.size(); ++j)
                if (d.has_edge(s.v1[i], s.v2[j])) out[ci][i] |= (1ULL << j);
    }
    return out;
}

std::int64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    __int128 r = 1;
    k = std::min(k, n - k);
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r > (static_cast<__int128>(1) << 62) ? (1LL << 62) : static_cast<std::int64_t>(r);
}

std::int64_t subsets_of_size_at_least(int n, int lo) {
    std::int64_t total = 0;
    for (int k = std::max(0, lo); k <= n; ++k) {
        total += binom(n, k);
        if (total > (1LL << 62) / 4) return 1LL << 62;
    }
    return total;
}

// |a/b - c/e| < eps exactly (all denominators positive).
bool density_within(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t e,
                    const Ratio& eps) {
    const __int128 lhs = (static_cast<__int128>(a) * e - static_cast<__int128>(c) * b);
    const __int128 abs_lhs = lhs < 0 ? -lhs : lhs;
    return abs_lhs * eps.den < static_cast<__int128>(eps.num) * b * e;
}

}  // namespace

Ratio slice_density(const CollectionSlice& s, const std::vector<int>& v1_sub,
                    const std::vector<int>& v2_sub, const std::vector<int>& color_sub) {
    s.check();
    if (v1_sub.empty() || v2_sub.empty() || color_sub.empty())
        fail(ErrorKind::invalid_argument, "slice_density: empty subset");
    std::int64_t edges = 0;
    Vset b(s.parent->order());
    for (int v : v2_sub) b.set(v);
    for (int c : color_sub) {
        const Digraph& d = s.parent->member(c);
        for (int v : v1_sub) edges += d.out_neighbors(v).count_and(b);
    }
    const std::int64_t denom = static_cast<std::int64_t>(color_sub.size()) * v1_sub.size() *
                               v2_sub.size();
    return Ratio(edges, denom);
}

RegularityVerdict check_regular_slice(const CollectionSlice& s, const Ratio& eps, const Ratio& d,
                                      const RegCheckOptions& opts) {
    s.check();
    RegularityVerdict verdict;
    verdict.mode = opts.mode;
    const int n1 = static_cast<int>(s.v1.size());
    const int n2 = static_cast<int>(s.v2.size());
    const int nc = static_cast<int>(s.colors.size());

    const auto masks = local_masks(s);
    std::int64_t global_edges = 0;
    for (int c = 0; c < nc; ++c)
        for (int i = 0; i < n1; ++i) global_edges += std::popcount(masks[c][i]);
    const std::int64_t global_denom = static_cast<std::int64_t>(nc) * n1 * n2;
    verdict.global_density = Ratio(global_edges, global_denom);

    // Global density clause (always exact): sum e >= d * |C||V1||V2|.
    verdict.density_clause = count_at_least(global_edges, d, global_denom);
    if (!verdict.density_clause) verdict.regular = false;

    const int lo1 = static_cast<int>(eps.ceil_scaled(n1));
    const int lo2 = static_cast<int>(eps.ceil_scaled(n2));
    const int loc = static_cast<int>(eps.ceil_scaled(nc));

    auto sub_edges = [&](std::uint64_t m1, std::uint64_t m2, std::uint64_t mc) {
        std::int64_t e = 0;
        for (int c = 0; c < nc; ++c) {
            if (!(mc & (1ULL << c))) continue;
            for (int i = 0; i < n1; ++i)
                if (m1 & (1ULL << i)) e += std::popcount(masks[c][i] & m2);
        }
        return e;
    };
    auto record_witness = [&](std::uint64_t m1, std::uint64_t m2, std::uint64_t mc,
                              std::int64_t e, std::int64_t denom) {
        RegularityWitness w;
        for (int i = 0; i < n1; ++i)
            if (m1 & (1ULL << i)) w.v1_sub.push_back(s.v1[i]);
        for (int j = 0; j < n2; ++j)
            if (m2 & (1ULL << j)) w.v2_sub.push_back(s.v2[j]);
        for (int c = 0; c < nc; ++c)
            if (mc & (1ULL << c)) w.color_sub.push_back(s.colors[c]);
        w.sub_density = Ratio(e, denom);
        w.global_density = verdict.global_density;
        verdict.witness = w;
        verdict.regular = false;
    };

    if (opts.mode == RegMode::exact) {
        if (n1 > 62 || n2 > 62 || nc > 62)
            fail(ErrorKind::budget, "exact regularity check: slice too large");
        const std::int64_t q1 = subsets_of_size_at_least(n1, lo1);
        const std::int64_t q2 = subsets_of_size_at_least(n2, lo2);
        const std::int64_t qc = subsets_of_size_at_least(nc, loc);
        if (q1 > opts.exact_budget || q2 > opts.exact_budget || qc > opts.exact_budget ||
            q1 * q2 > opts.exact_budget / std::max<std::int64_t>(1, qc))
            fail(ErrorKind::budget, "exact regularity check refused: too many subset triples");

        for (std::uint64_t m1 = 1; m1 < (1ULL << n1); ++m1) {
            if (std::popcount(m1) < lo1) continue;
            for (std::uint64_t m2 = 1; m2 < (1ULL << n2); ++m2) {
                if (std::popcount(m2) < lo2) continue;
                // per-color counts for this vertex pair, then all color sets
                std::vector<std::int64_t> per_color(nc, 0);
                for (int c = 0; c < nc; ++c)
                    for (int i = 0; i < n1; ++i)
                        if (m1 & (1ULL << i)) per_color[c] += std::popcount(masks[c][i] & m2);
                const std::int64_t base =
                    static_cast<std::int64_t>(std::popcount(m1)) * std::popcount(m2);
                for (std::uint64_t mc = 1; mc < (1ULL << nc); ++mc) {
                    if (std::popcount(mc) < loc) continue;
                    std::int64_t e = 0;
                    for (int c = 0; c < nc; ++c)
                        if (mc & (1ULL << c)) e += per_color[c];
                    ++verdict.triples_checked;
                    const std::int64_t denom = base * std::popcount(mc);
                    if (!density_within(e, denom, global_edges, global_denom, eps)) {
                        record_witness(m1, m2, mc, e, denom);
                        return verdict;
                    }
                }
            }
        }
        verdict.certified = true;
        return verdict;
    }

    // Sampled: uniform size from the qualifying range, uniform subset of
    // that size. Irregular verdicts always carry an exactly recomputable
    // witness; regular verdicts are best-effort.
    Rng rng(opts.seed);
    auto random_mask = [&](int n, int lo) {
        const int size = lo >= n ? n : lo + static_cast<int>(rng.next_below(n - lo + 1));
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        rng.shuffle(idx);
        std::uint64_t mask = 0;
        for (int i = 0; i < size; ++i) mask |= (1ULL << idx[i]);
        return mask;
    };
    for (int trial = 0; trial < opts.samples; ++trial) {
        const std::uint64_t m1 = random_mask(n1, std::max(1, lo1));
        const std::uint64_t m2 = random_mask(n2, std::max(1, lo2));
        const std::uint64_t mc = random_mask(nc, std::max(1, loc));
        const std::int64_t e = sub_edges(m1, m2, mc);
        const std::int64_t denom = static_cast<std::int64_t>(std::popcount(m1)) *
                                   std::popcount(m2) * std::popcount(mc);
        ++verdict.triples_checked;
        if (!density_within(e, denom, global_edges, global_denom, eps)) {
            record_witness(m1, m2, mc, e, denom);
            return verdict;
        }
    }
    verdict.certified = false;  // no witness found, not a proof
    return verdict;
}

ReducedCollection build_reduced(const DigraphCollection& dc,
                                const std::vector<std::vector<int>>& vertex_partition,
                                const std::vector<std::vector<int>>& color_partition,
                                const Ratio& eps, const Ratio& d, const RegCheckOptions& opts) {
    if (vertex_partition.size() < 2 || color_partition.size() < 2)
        fail(ErrorKind::invalid_argument,
             "build_reduced: need exceptional set plus at least one cluster");
    // validate partitions
    {
        std::vector<char> seen(dc.order(), 0);
        for (const auto& cluster : vertex_partition)
            for (int v : cluster) {
                if (v < 0 || v >= dc.order() || seen[v])
                    fail(ErrorKind::invalid_argument, "build_reduced: malformed vertex partition");
                seen[v] = 1;
            }
        for (int v = 0; v < dc.order(); ++v)
            if (!seen[v]) fail(ErrorKind::invalid_argument,
                               "build_reduced: vertex partition does not cover V");
        std::vector<char> seenc(dc.colors(), 0);
        for (const auto& cluster : color_partition)
            for (int c : cluster) {
                if (c < 0 || c >= dc.colors() || seenc[c])
                    fail(ErrorKind::invalid_argument, "build_reduced: malformed color partition");
                seenc[c] = 1;
            }
        for (int c = 0; c < dc.colors(); ++c)
            if (!seenc[c]) fail(ErrorKind::invalid_argument,
                                "build_reduced: color partition does not cover colors");
    }

    ReducedCollection rc;
    rc.cluster_count = static_cast<int>(vertex_partition.size()) - 1;
    rc.color_cluster_count = static_cast<int>(color_partition.size()) - 1;
    rc.eps = eps;
    rc.d = d;
    rc.mode = opts.mode;
    rc.vertex_clusters = vertex_partition;
    rc.color_clusters = color_partition;

    const std::size_t cluster_size = vertex_partition[1].size();
    for (std::size_t i = 1; i < vertex_partition.size(); ++i)
        if (vertex_partition[i].size() != cluster_size)
            rc.warnings.push_back("vertex clusters are not equal-sized");
    if (!color_partition.empty()) {
        const std::size_t csize = color_partition[1].size();
        for (std::size_t i = 1; i < color_partition.size(); ++i)
            if (color_partition[i].size() != csize)
                rc.warnings.push_back("color clusters are not equal-sized");
    }
    if (!rc.warnings.empty()) {
        std::sort(rc.warnings.begin(), rc.warnings.end());
        rc.warnings.erase(std::unique(rc.warnings.begin(), rc.warnings.end()), rc.warnings.end());
    }

    rc.members.assign(rc.color_cluster_count, Digraph(std::max(1, rc.cluster_count)));
    for (int j = 1; j <= rc.color_cluster_count; ++j) {
        if (color_partition[j].empty()) continue;
        for (int h = 1; h <= rc.cluster_count; ++h) {
            for (int i = 1; i <= rc.cluster_count; ++i) {
                if (h == i || vertex_partition[h].empty() || vertex_partition[i].empty()) continue;
                CollectionSlice s{&dc, vertex_partition[h], vertex_partition[i],
                                  color_partition[j]};
                RegCheckOptions slice_opts = opts;
                slice_opts.seed = Rng::derive(opts.seed, static_cast<std::uint64_t>(j),
                                              static_cast<std::uint64_t>(h * 1024 + i));
                const RegularityVerdict v = check_regular_slice(s, eps, d, slice_opts);
                if (v.regular) rc.members[j - 1].add_edge(h - 1, i - 1);
            }
        }
    }
    return rc;
}

DegreeInheritanceReport degree_inheritance_report(const ReducedCollection& rc, const Ratio& p,
                                                  const Ratio& gamma) {
    DegreeInheritanceReport report;
    const int L = rc.cluster_count;
    const int M = rc.color_cluster_count;
    const Ratio bound_ratio = p + gamma / Ratio(2, 1);
    report.bound = static_cast<int>(bound_ratio.ceil_scaled(L));
    report.target_fraction = 1.0 - std::pow(rc.d.to_double(), 0.25);

    std::vector<std::vector<char>> ok(M, std::vector<char>(L, 0));
    for (int j = 0; j < M; ++j)
        for (int i = 0; i < L; ++i)
            ok[j][i] = count_at_least(rc.members[j].out_degree(i), bound_ratio, L) &&
                       count_at_least(rc.members[j].in_degree(i), bound_ratio, L);

    report.per_vertex_fraction.resize(L, 0.0);
    for (int i = 0; i < L; ++i) {
        int count = 0;
        for (int j = 0; j < M; ++j) count += ok[j][i];
        report.per_vertex_fraction[i] = M ? static_cast<double>(count) / M : 0.0;
    }
    report.per_color_fraction.resize(M, 0.0);
    for (int j = 0; j < M; ++j) {
        int count = 0;
        for (int i = 0; i < L; ++i) count += ok[j][i];
        report.per_color_fraction[j] = L ? static_cast<double>(count) / L : 0.0;
    }
    return report;
}

Auxiliary4Graph build_auxiliary_4graph(const DigraphCollection& dc) {
    Auxiliary4Graph h;
    h.n = dc.order();
    h.m = dc.colors();
    for (int c = 0; c < h.m; ++c) {
        for (const auto& [i, j] : dc.member(c).edges()) {
            for (int x = 0; x < h.n; ++x) {
                const int xid = i < j ? h.s1_id(x) : h.s2_id(x);
                h.edges.push_back({i, j, h.color_id(c), xid});
            }
        }
    }
    return h;
}

std::int64_t Auxiliary4Graph::degree(int vertex_id) const {
    std::int64_t deg = 0;
    for (const auto& e : edges)
        for (int v : e)
            if (v == vertex_id) ++deg;
    return deg;
}

}  // namespace tdg
