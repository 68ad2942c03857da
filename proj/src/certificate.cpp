#include "tdg/certificate.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tdg {

std::string cert_kind_name(CertKind k) {
    switch (k) {
        case CertKind::hamilton_cycle: return "hamilton-cycle";
        case CertKind::hamilton_path: return "hamilton-path";
        case CertKind::matching: return "matching";
        case CertKind::cycle_cover: return "cycle-cover";
        case CertKind::cycle: return "cycle";
    }
    return "?";
}

CertKind cert_kind_from_name(const std::string& s) {
    if (s == "hamilton-cycle") return CertKind::hamilton_cycle;
    if (s == "hamilton-path") return CertKind::hamilton_path;
    if (s == "matching") return CertKind::matching;
    if (s == "cycle-cover") return CertKind::cycle_cover;
    if (s == "cycle") return CertKind::cycle;
    fail(ErrorKind::invalid_argument, "unknown certificate kind: " + s);
}

std::vector<int> RainbowCertificate::vertex_list() const {
    std::vector<int> out;
    std::set<int> seen;
    for (const auto& [u, v] : edges) {
        if (seen.insert(u).second) out.push_back(u);
        if (seen.insert(v).second) out.push_back(v);
    }
    return out;
}

Vset RainbowCertificate::vertex_set(int universe) const {
    Vset s(universe);
    for (const auto& [u, v] : edges) {
        s.set(u);
        s.set(v);
    }
    return s;
}

std::vector<int> RainbowCertificate::color_set() const {
    std::vector<int> out = colors;
    std::sort(out.begin(), out.end());
    return out;
}

RainbowCertificate RainbowCertificate::from_cycle(CertKind kind, const std::vector<int>& cycle,
                                                  const std::vector<int>& colors) {
    RainbowCertificate cert;
    cert.kind = kind;
    cert.colors = colors;
    const std::size_t len = cycle.size();
    for (std::size_t k = 0; k < len; ++k)
        cert.edges.emplace_back(cycle[k], cycle[(k + 1) % len]);
    return cert;
}

std::vector<int> RainbowCertificate::cycle_order() const {
    if (edges.empty()) fail(ErrorKind::invalid_argument, "cycle_order: empty certificate");
    std::map<int, int> succ;
    for (const auto& [u, v] : edges) {
        if (!succ.emplace(u, v).second)
            fail(ErrorKind::invalid_argument, "cycle_order: repeated tail vertex");
    }
    std::vector<int> order;
    int start = edges.front().first;
    int cur = start;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        order.push_back(cur);
        auto it = succ.find(cur);
        if (it == succ.end()) fail(ErrorKind::invalid_argument, "cycle_order: not a cycle");
        cur = it->second;
    }
    if (cur != start) fail(ErrorKind::invalid_argument, "cycle_order: does not close");
    return order;
}

namespace {

// Shape check shared by the directed kinds; fills `report`.
void check_directed_shape(const DigraphCollection& dc, const RainbowCertificate& cert,
                          ValidationReport& report) {
    const int n = dc.order();
    for (const auto& [u, v] : cert.edges) {
        if (u < 0 || u >= n || v < 0 || v >= n) {
            report.add("range", "edge endpoint out of range");
            return;
        }
        if (u == v) {
            report.add("shape", "loop edge " + std::to_string(u));
            return;
        }
    }

    // successor / predecessor multiplicities
    std::map<int, int> out_deg, in_deg;
    std::set<std::pair<int, int>> edge_set;
    for (const auto& e : cert.edges) {
        if (!edge_set.insert(e).second)
            report.add("shape", "repeated edge (" + std::to_string(e.first) + "," +
                                    std::to_string(e.second) + ")");
        out_deg[e.first]++;
        in_deg[e.second]++;
    }

    auto degrees_all_one = [&](bool spanning) {
        for (int v = 0; v < n; ++v) {
            const int od = out_deg.count(v) ? out_deg[v] : 0;
            const int id = in_deg.count(v) ? in_deg[v] : 0;
            if (spanning && (od != 1 || id != 1)) {
                report.add("shape", "vertex " + std::to_string(v) + " has out/in degree " +
                                        std::to_string(od) + "/" + std::to_string(id) +
                                        ", expected 1/1");
                return false;
            }
            if (!spanning && (od > 1 || id > 1)) {
                report.add("shape", "vertex " + std::to_string(v) + " repeated");
                return false;
            }
        }
        return true;
    };

    auto count_cycles = [&]() -> int {
        // Assumes every touched vertex has out/in degree exactly 1.
        std::map<int, int> succ;
        for (const auto& [u, v] : cert.edges) succ[u] = v;
        std::set<int> seen;
        int cycles = 0;
        for (const auto& [u, v] : succ) {
            (void)v;
            if (seen.count(u)) continue;
            int cur = u;
            ++cycles;
            while (!seen.count(cur)) {
                seen.insert(cur);
                auto it = succ.find(cur);
                if (it == succ.end()) return -1;  // open path: not a cycle union
                cur = it->second;
            }
            if (cur != u && seen.count(cur) && succ.count(cur) == 0) return -1;
        }
        return cycles;
    };

    switch (cert.kind) {
        case CertKind::hamilton_cycle: {
            if (static_cast<int>(cert.edges.size()) != n) {
                report.add("shape", "hamilton cycle on " + std::to_string(n) + " vertices needs " +
                                        std::to_string(n) + " edges, got " +
                                        std::to_string(cert.edges.size()));
                return;
            }
            if (!degrees_all_one(true)) return;
            if (count_cycles() != 1) report.add("shape", "edges do not form a single cycle");
            break;
        }
        case CertKind::cycle_cover: {
            if (static_cast<int>(cert.edges.size()) != n) {
                report.add("shape", "cycle cover must have exactly n edges");
                return;
            }
            if (!degrees_all_one(true)) return;
            if (count_cycles() < 1) report.add("shape", "edges do not decompose into cycles");
            break;
        }
        case CertKind::cycle: {
            if (cert.edges.size() < 2) {
                report.add("shape", "cycle needs at least 2 edges");
                return;
            }
            if (!degrees_all_one(false)) return;
            // every touched vertex must have both degrees 1 and form one cycle
            for (const auto& [v, d] : out_deg)
                if (!in_deg.count(v) || in_deg[v] != 1 || d != 1) {
                    report.add("shape", "vertex " + std::to_string(v) + " does not close a cycle");
                    return;
                }
            for (const auto& [v, d] : in_deg) {
                (void)d;
                if (!out_deg.count(v)) {
                    report.add("shape", "vertex " + std::to_string(v) + " does not close a cycle");
                    return;
                }
            }
            if (count_cycles() != 1) report.add("shape", "edges do not form a single cycle");
            break;
        }
        case CertKind::hamilton_path: {
            if (static_cast<int>(cert.edges.size()) != n - 1) {
                report.add("shape", "hamilton path on " + std::to_string(n) +
                                        " vertices needs n-1 edges");
                return;
            }
            if (!degrees_all_one(false)) return;
            // exactly one start (in-degree 0) and one end (out-degree 0), connected chain
            std::map<int, int> succ;
            for (const auto& [u, v] : cert.edges) succ[u] = v;
            int start = -1;
            for (int v = 0; v < n; ++v)
                if (!in_deg.count(v)) {
                    if (out_deg.count(v) || n == 1) {
                        if (start != -1) {
                            report.add("shape", "multiple path starts");
                            return;
                        }
                        start = v;
                    }
                }
            if (start == -1 && n > 1) {
                report.add("shape", "no path start");
                return;
            }
            std::set<int> seen;
            int cur = start;
            seen.insert(cur);
            while (succ.count(cur)) {
                cur = succ[cur];
                if (!seen.insert(cur).second) {
                    report.add("shape", "path revisits vertex " + std::to_string(cur));
                    return;
                }
            }
            if (static_cast<int>(seen.size()) != n)
                report.add("shape", "path does not visit every vertex");
            break;
        }
        case CertKind::matching: {
            std::set<int> touched;
            for (const auto& [u, v] : cert.edges) {
                if (!touched.insert(u).second || !touched.insert(v).second) {
                    report.add("shape", "matching edges share a vertex");
                    return;
                }
            }
            break;
        }
    }
}

void check_colors(int m, const RainbowCertificate& cert, ValidationReport& report) {
    if (cert.colors.size() != cert.edges.size()) {
        report.add("shape", "colors/edges length mismatch");
        return;
    }
    std::set<int> seen;
    for (int c : cert.colors) {
        if (c < 0 || c >= m) {
            report.add("range", "color " + std::to_string(c + 1) + " out of range");
            continue;
        }
        if (!seen.insert(c).second)
            report.add("injectivity", "color " + std::to_string(c + 1) + " used twice");
    }
}

}  // namespace

ValidationReport validate_certificate(const DigraphCollection& dc, const RainbowCertificate& cert) {
    ValidationReport report;
    check_colors(dc.colors(), cert, report);
    check_directed_shape(dc, cert, report);
    if (cert.kind == CertKind::hamilton_cycle &&
        static_cast<int>(cert.edges.size()) != dc.colors())
        report.add("size", "hamilton cycle must use every color exactly once (|edges| == m)");
    if (cert.colors.size() == cert.edges.size()) {
        for (std::size_t k = 0; k < cert.edges.size(); ++k) {
            const auto& [u, v] = cert.edges[k];
            const int c = cert.colors[k];
            if (c < 0 || c >= dc.colors()) continue;
            if (u < 0 || u >= dc.order() || v < 0 || v >= dc.order() || u == v) continue;
            if (!dc.has_edge(c, u, v))
                report.add("membership", "edge (" + std::to_string(u) + "," + std::to_string(v) +
                                             ") not in color " + std::to_string(c + 1));
        }
    }
    return report;
}

ValidationReport validate_certificate(const BipartiteCollection& bc, const RainbowCertificate& cert) {
    ValidationReport report;
    check_colors(bc.colors(), cert, report);
    if (cert.kind != CertKind::matching) {
        report.add("shape", "bipartite certificates must be matchings");
        return report;
    }
    const int n = bc.part_size();
    std::set<int> lefts, rights;
    for (const auto& [l, r] : cert.edges) {
        if (l < 0 || l >= n || r < 0 || r >= n) {
            report.add("range", "matching endpoint out of range");
            continue;
        }
        if (!lefts.insert(l).second) report.add("shape", "left vertex " + std::to_string(l) + " matched twice");
        if (!rights.insert(r).second) report.add("shape", "right vertex " + std::to_string(r) + " matched twice");
    }
    if (cert.colors.size() == cert.edges.size()) {
        for (std::size_t k = 0; k < cert.edges.size(); ++k) {
            const auto& [l, r] = cert.edges[k];
            const int c = cert.colors[k];
            if (c < 0 || c >= bc.colors() || l < 0 || l >= n || r < 0 || r >= n) continue;
            if (!bc.has_edge(c, l, r))
                report.add("membership", "edge (" + std::to_string(l) + "," + std::to_string(r) +
                                             ") not in color " + std::to_string(c + 1));
        }
    }
    return report;
}

}  // namespace tdg
