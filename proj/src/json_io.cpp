#include "tdg/json_io.hpp"

#include <fstream>
#include <map>

namespace tdg {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) fail(ErrorKind::invalid_argument, "instance: " + msg);
}

}  // namespace

Json collection_to_json(const DigraphCollection& dc, const Json& meta) {
    Json j;
    j["schema"] = 1;
    j["n"] = dc.order();
    j["m"] = dc.colors();
    Json members = Json::array();
    for (int c = 0; c < dc.colors(); ++c) {
        Json edges = Json::array();
        for (const auto& [u, v] : dc.member(c).edges()) edges.push_back(Json::array({u, v}));
        members.push_back(Json{{"edges", edges}});
    }
    j["digraphs"] = members;
    if (!meta.empty()) j["meta"] = meta;
    return j;
}

DigraphCollection collection_from_json(const Json& j) {
    require(j.is_object(), "top level must be an object");
    require(j.contains("schema") && j["schema"].is_number_integer() && j["schema"] == 1,
            "unsupported schema");
    require(j.contains("n") && j["n"].is_number_integer(), "missing n");
    require(j.contains("m") && j["m"].is_number_integer(), "missing m");
    const int n = j["n"].get<int>();
    const int m = j["m"].get<int>();
    require(n >= 1, "n must be >= 1");
    require(m >= 1, "m must be >= 1");
    require(j.contains("digraphs") && j["digraphs"].is_array(), "missing digraphs array");
    require(static_cast<int>(j["digraphs"].size()) == m, "digraphs array length != m");
    DigraphCollection dc(n, m);
    for (int c = 0; c < m; ++c) {
        const Json& member = j["digraphs"][c];
        require(member.is_object() && member.contains("edges") && member["edges"].is_array(),
                "digraph " + std::to_string(c) + " missing edges");
        for (const Json& e : member["edges"]) {
            require(e.is_array() && e.size() == 2 && e[0].is_number_integer() &&
                        e[1].is_number_integer(),
                    "edge entries must be [u,v] integer pairs");
            const int u = e[0].get<int>();
            const int v = e[1].get<int>();
            require(u >= 0 && u < n && v >= 0 && v < n, "edge endpoint out of range");
            require(u != v, "loops are not allowed");
            dc.member(c).add_edge(u, v);
        }
    }
    return dc;
}

Json bipartite_to_json(const BipartiteCollection& bc, const Json& meta) {
    Json j;
    j["schema"] = 1;
    j["kind"] = "bipartite";
    j["n"] = bc.part_size();
    j["m"] = bc.colors();
    Json members = Json::array();
    for (int c = 0; c < bc.colors(); ++c) {
        Json edges = Json::array();
        for (int l = 0; l < bc.part_size(); ++l)
            bc.right_neighbors(c, l).for_each(
                [&](int r) { edges.push_back(Json::array({l, r})); });
        members.push_back(Json{{"edges", edges}});
    }
    j["graphs"] = members;
    if (!meta.empty()) j["meta"] = meta;
    return j;
}

BipartiteCollection bipartite_from_json(const Json& j) {
    require(j.is_object(), "top level must be an object");
    require(j.contains("schema") && j["schema"] == 1, "unsupported schema");
    require(j.contains("kind") && j["kind"] == "bipartite", "expected bipartite instance");
    const int n = j.value("n", 0);
    const int m = j.value("m", 0);
    require(n >= 1 && m >= 1, "bad n/m");
    require(j.contains("graphs") && j["graphs"].is_array() &&
                static_cast<int>(j["graphs"].size()) == m,
            "graphs array length != m");
    BipartiteCollection bc(n, m);
    for (int c = 0; c < m; ++c) {
        const Json& member = j["graphs"][c];
        require(member.is_object() && member.contains("edges") && member["edges"].is_array(),
                "graph " + std::to_string(c) + " missing edges");
        for (const Json& e : member["edges"]) {
            require(e.is_array() && e.size() == 2, "edge entries must be [left,right] pairs");
            const int l = e[0].get<int>();
            const int r = e[1].get<int>();
            require(l >= 0 && l < n && r >= 0 && r < n, "edge endpoint out of range");
            bc.add_edge(c, l, r);
        }
    }
    return bc;
}

bool json_is_bipartite_instance(const Json& j) {
    return j.is_object() && j.contains("kind") && j["kind"] == "bipartite";
}

Json certificate_to_json(const RainbowCertificate& cert) {
    Json j;
    j["kind"] = cert_kind_name(cert.kind);
    Json colors = Json::array();
    if (cert.kind == CertKind::hamilton_cycle || cert.kind == CertKind::cycle) {
        const std::vector<int> order = cert.cycle_order();
        // colors[k] belongs to edge (cycle[k], cycle[k+1 mod len]); the edge
        // list may start anywhere, so realign colors to the cyclic order.
        std::map<std::pair<int, int>, int> color_of;
        for (std::size_t k = 0; k < cert.edges.size(); ++k) color_of[cert.edges[k]] = cert.colors[k];
        Json cycle = Json::array();
        for (int v : order) cycle.push_back(v);
        for (std::size_t k = 0; k < order.size(); ++k) {
            const auto key = std::make_pair(order[k], order[(k + 1) % order.size()]);
            colors.push_back(color_of.at(key) + 1);
        }
        j["cycle"] = cycle;
    } else {
        Json edges = Json::array();
        for (const auto& [u, v] : cert.edges) edges.push_back(Json::array({u, v}));
        for (int c : cert.colors) colors.push_back(c + 1);
        j["edges"] = edges;
    }
    j["colors"] = colors;
    return j;
}

RainbowCertificate certificate_from_json(const Json& j) {
    require(j.is_object() && j.contains("kind"), "certificate: missing kind");
    RainbowCertificate cert;
    cert.kind = cert_kind_from_name(j["kind"].get<std::string>());
    require(j.contains("colors") && j["colors"].is_array(), "certificate: missing colors");
    std::vector<int> colors;
    for (const Json& c : j["colors"]) colors.push_back(c.get<int>() - 1);
    if (cert.kind == CertKind::hamilton_cycle || cert.kind == CertKind::cycle) {
        require(j.contains("cycle") && j["cycle"].is_array(), "certificate: missing cycle");
        std::vector<int> cycle;
        for (const Json& v : j["cycle"]) cycle.push_back(v.get<int>());
        require(cycle.size() == colors.size(), "certificate: colors/cycle length mismatch");
        cert = RainbowCertificate::from_cycle(cert.kind, cycle, colors);
    } else {
        require(j.contains("edges") && j["edges"].is_array(), "certificate: missing edges");
        for (const Json& e : j["edges"]) {
            require(e.is_array() && e.size() == 2, "certificate: bad edge entry");
            cert.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        cert.colors = colors;
        require(cert.edges.size() == cert.colors.size(),
                "certificate: colors/edges length mismatch");
    }
    return cert;
}

Json outcome_to_json(const SolveOutcome& outcome) {
    Json j;
    j["status"] = solve_status_name(outcome.status);
    if (outcome.certificate) j["certificate"] = certificate_to_json(*outcome.certificate);
    j["stats"] = Json{{"nodes", outcome.stats.nodes},
                      {"prunes", outcome.stats.prunes},
                      {"wall_ms", outcome.stats.wall_ms}};
    j["exhausted"] = outcome.exhausted;
    return j;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::invalid_argument, "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        // e.what() carries the byte position of the syntax error.
        fail(ErrorKind::invalid_argument, std::string("parse error in ") + path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::invalid_argument, "cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace tdg
