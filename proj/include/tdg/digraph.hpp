#pragma once

#include <utility>
#include <vector>

#include "tdg/bitset.hpp"
#include "tdg/error.hpp"

namespace tdg {

// Loop-free digraph on vertices 0..n-1 with at most one edge per ordered
// pair. Out- and in-adjacency are kept consistent (in = transpose of out).
class Digraph {
  public:
    Digraph() = default;
    explicit Digraph(int n) : n_(n), out_(n, Vset(n)), in_(n, Vset(n)) {
        if (n < 1) fail(ErrorKind::invalid_argument, "Digraph: vertex count must be >= 1");
    }

    int order() const { return n_; }

    bool has_edge(int u, int v) const { return out_[u].test(v); }
    void add_edge(int u, int v) {
        if (u == v) fail(ErrorKind::invalid_argument, "Digraph: loops are not allowed");
        out_[u].set(v);
        in_[v].set(u);
    }
    void remove_edge(int u, int v) {
        out_[u].reset(v);
        in_[v].reset(u);
    }

    const Vset& out_neighbors(int v) const { return out_[v]; }
    const Vset& in_neighbors(int v) const { return in_[v]; }

    int out_degree(int v) const { return out_[v].count(); }
    int in_degree(int v) const { return in_[v].count(); }
    int out_degree_in(int v, const Vset& s) const { return out_[v].count_and(s); }
    int in_degree_in(int v, const Vset& s) const { return in_[v].count_and(s); }

    std::int64_t edge_count() const {
        std::int64_t e = 0;
        for (int v = 0; v < n_; ++v) e += out_degree(v);
        return e;
    }

    // e_D(A,B): ordered pairs (a,b), a in A, b in B, with edge a->b. A and B
    // may overlap.
    std::int64_t edges_between(const Vset& a, const Vset& b) const {
        std::int64_t e = 0;
        a.for_each([&](int v) { e += out_[v].count_and(b); });
        return e;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u) out_[u].for_each([&](int v) { out.emplace_back(u, v); });
        return out;
    }

    bool operator==(const Digraph& o) const { return n_ == o.n_ && out_ == o.out_; }

    static Digraph complete(int n) {
        Digraph d(n);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v) d.add_edge(u, v);
        return d;
    }

    Digraph induced(const std::vector<int>& vertices) const {
        Digraph d(static_cast<int>(vertices.size()));
        for (std::size_t i = 0; i < vertices.size(); ++i)
            for (std::size_t j = 0; j < vertices.size(); ++j)
                if (i != j && has_edge(vertices[i], vertices[j]))
                    d.add_edge(static_cast<int>(i), static_cast<int>(j));
        return d;
    }

    Digraph transpose() const {
        Digraph d(n_);
        d.out_ = in_;
        d.in_ = out_;
        return d;
    }

  private:
    int n_ = 0;
    std::vector<Vset> out_;
    std::vector<Vset> in_;
};

// Minimum semi-degree: min over v of min(d+(v), d-(v)).
int semi_degree(const Digraph& d);

// Ordered family of digraphs on one vertex set; list index = color
// (0-based internally, 1-based in human-facing output).
class DigraphCollection {
  public:
    DigraphCollection() = default;
    DigraphCollection(int n, int m) : n_(n), members_(m, Digraph(n)) {
        if (m < 1) fail(ErrorKind::invalid_argument, "DigraphCollection: need at least one color");
    }
    explicit DigraphCollection(std::vector<Digraph> members) : members_(std::move(members)) {
        if (members_.empty())
            fail(ErrorKind::invalid_argument, "DigraphCollection: need at least one color");
        n_ = members_[0].order();
        for (const auto& d : members_)
            if (d.order() != n_)
                fail(ErrorKind::invalid_argument, "DigraphCollection: mismatched vertex counts");
    }

    int order() const { return n_; }
    int colors() const { return static_cast<int>(members_.size()); }

    const Digraph& member(int c) const { return members_[c]; }
    Digraph& member(int c) { return members_[c]; }

    bool has_edge(int c, int u, int v) const { return members_[c].has_edge(u, v); }

    bool operator==(const DigraphCollection& o) const {
        return n_ == o.n_ && members_ == o.members_;
    }

  private:
    int n_ = 0;
    std::vector<Digraph> members_;
};

int collection_semi_degree(const DigraphCollection& dc);

// L(xy): the set of colors whose digraph contains the directed edge x->y.
struct ColorList {
    int x = 0;
    int y = 0;
    std::vector<int> colors;
};

ColorList color_list(const DigraphCollection& dc, int x, int y);

// Collection of bipartite graphs on parts V1, V2 of common size n, stored as
// per-left-vertex neighbor sets.
class BipartiteCollection {
  public:
    BipartiteCollection() = default;
    BipartiteCollection(int n, int m) : n_(n), adj_(m, std::vector<Vset>(n, Vset(n))) {
        if (n < 1) fail(ErrorKind::invalid_argument, "BipartiteCollection: part size must be >= 1");
        if (m < 1) fail(ErrorKind::invalid_argument, "BipartiteCollection: need at least one color");
    }

    int part_size() const { return n_; }
    int colors() const { return static_cast<int>(adj_.size()); }

    bool has_edge(int c, int left, int right) const { return adj_[c][left].test(right); }
    void add_edge(int c, int left, int right) { adj_[c][left].set(right); }
    void remove_edge(int c, int left, int right) { adj_[c][left].reset(right); }

    const Vset& right_neighbors(int c, int left) const { return adj_[c][left]; }
    Vset left_neighbors(int c, int right) const {
        Vset s(n_);
        for (int l = 0; l < n_; ++l)
            if (adj_[c][l].test(right)) s.set(l);
        return s;
    }

    int left_degree(int c, int left) const { return adj_[c][left].count(); }
    int right_degree(int c, int right) const {
        int d = 0;
        for (int l = 0; l < n_; ++l) d += adj_[c][l].test(right) ? 1 : 0;
        return d;
    }

    std::int64_t edge_count(int c) const {
        std::int64_t e = 0;
        for (int l = 0; l < n_; ++l) e += adj_[c][l].count();
        return e;
    }

    // e_{G_c}(A,B) for A a set of left vertices, B a set of right vertices.
    std::int64_t edges_between(int c, const Vset& a, const Vset& b) const {
        std::int64_t e = 0;
        a.for_each([&](int l) { e += adj_[c][l].count_and(b); });
        return e;
    }

    bool operator==(const BipartiteCollection& o) const { return n_ == o.n_ && adj_ == o.adj_; }

  private:
    int n_ = 0;
    std::vector<std::vector<Vset>> adj_;  // adj_[color][left] = set of right neighbors
};

// Induced sub-collection, vertices and colors relabeled in increasing order.
struct RestrictedCollection {
    DigraphCollection collection;
    std::vector<int> vertex_map;  // new index -> original vertex
    std::vector<int> color_map;   // new index -> original color
};

RestrictedCollection restricted_collection(const DigraphCollection& dc,
                                           const std::vector<int>& vertices,
                                           const std::vector<int>& colors);

// Characteristic bipartite collection: left u ~ right v iff u->v in D_c.
BipartiteCollection characteristic_bipartite(const DigraphCollection& dc);
BipartiteCollection characteristic_bipartite(const Digraph& d);

}  // namespace tdg
