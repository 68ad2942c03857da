#include <algorithm>

#include "tdg/digraph.hpp"
#include "tdg/ratio.hpp"

namespace tdg {

Ratio parse_ratio(const std::string& text) {
    if (text.empty()) fail(ErrorKind::invalid_argument, "empty ratio");
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const std::int64_t num = std::stoll(text.substr(0, slash));
        const std::int64_t den = std::stoll(text.substr(slash + 1));
        return Ratio(num, den);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Ratio(std::stoll(text), 1);
    const bool neg = text[0] == '-';
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    if (neg) digits = digits.substr(1);
    const std::size_t frac_len = text.size() - dot - 1;
    if (frac_len > 12) fail(ErrorKind::invalid_argument, "ratio literal too precise: " + text);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    std::int64_t num = digits.empty() ? 0 : std::stoll(digits);
    return Ratio(neg ? -num : num, den);
}

int semi_degree(const Digraph& d) {
    int best = d.order();  // upper bound n-1 would do; n=1 handled below
    for (int v = 0; v < d.order(); ++v)
        best = std::min(best, std::min(d.out_degree(v), d.in_degree(v)));
    return best;
}

int collection_semi_degree(const DigraphCollection& dc) {
    int best = dc.order();
    for (int c = 0; c < dc.colors(); ++c) best = std::min(best, semi_degree(dc.member(c)));
    return best;
}

ColorList color_list(const DigraphCollection& dc, int x, int y) {
    if (x == y) fail(ErrorKind::invalid_argument, "color_list: x and y must be distinct");
    if (x < 0 || y < 0 || x >= dc.order() || y >= dc.order())
        fail(ErrorKind::invalid_argument, "color_list: vertex out of range");
    ColorList out{x, y, {}};
    for (int c = 0; c < dc.colors(); ++c)
        if (dc.has_edge(c, x, y)) out.colors.push_back(c);
    return out;
}

RestrictedCollection restricted_collection(const DigraphCollection& dc,
                                           const std::vector<int>& vertices,
                                           const std::vector<int>& colors) {
    if (vertices.empty()) fail(ErrorKind::invalid_argument, "restricted_collection: empty vertex set");
    if (colors.empty()) fail(ErrorKind::invalid_argument, "restricted_collection: empty color set");
    std::vector<int> vs = vertices;
    std::vector<int> cs = colors;
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    for (int v : vs)
        if (v < 0 || v >= dc.order())
            fail(ErrorKind::invalid_argument, "restricted_collection: vertex out of range");
    for (int c : cs)
        if (c < 0 || c >= dc.colors())
            fail(ErrorKind::invalid_argument, "restricted_collection: color out of range");

    std::vector<Digraph> members;
    members.reserve(cs.size());
    for (int c : cs) members.push_back(dc.member(c).induced(vs));
    return RestrictedCollection{DigraphCollection(std::move(members)), vs, cs};
}

BipartiteCollection characteristic_bipartite(const DigraphCollection& dc) {
    BipartiteCollection bc(dc.order(), dc.colors());
    for (int c = 0; c < dc.colors(); ++c)
        for (const auto& [u, v] : dc.member(c).edges()) bc.add_edge(c, u, v);
    return bc;
}

BipartiteCollection characteristic_bipartite(const Digraph& d) {
    BipartiteCollection bc(d.order(), 1);
    for (const auto& [u, v] : d.edges()) bc.add_edge(0, u, v);
    return bc;
}

}  // namespace tdg
