#include "tdg.h"

#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include "tdg/absorption.hpp"
#include "tdg/experiments.hpp"
#include "tdg/extremal.hpp"
#include "tdg/json_io.hpp"
#include "tdg/regularity.hpp"
#include "tdg/solver.hpp"
#include "tdg/stability.hpp"

using namespace tdg;

struct tdg_collection {
    std::variant<DigraphCollection, BipartiteCollection> data;
    Json meta = Json::object();

    bool bipartite() const { return data.index() == 1; }
    const DigraphCollection& digraphs() const {
        if (bipartite()) fail(ErrorKind::invalid_argument, "operation needs a digraph instance");
        return std::get<0>(data);
    }
    const BipartiteCollection& graphs() const {
        if (!bipartite()) fail(ErrorKind::invalid_argument, "operation needs a bipartite instance");
        return std::get<1>(data);
    }
};

struct tdg_result {
    std::string text;
};

namespace {

thread_local std::string g_last_error;

tdg_status to_status(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::budget: return TDG_ERR_BUDGET;
        case ErrorKind::internal: return TDG_ERR_INTERNAL;
        default: return TDG_ERR_INVALID;
    }
}

template <typename F>
tdg_status wrap(F&& fn) {
    try {
        fn();
        return TDG_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return to_status(e);
    } catch (const Json::exception& e) {
        g_last_error = e.what();
        return TDG_ERR_INVALID;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return TDG_ERR_INTERNAL;
    }
}

tdg_result* make_result(const Json& j) { return new tdg_result{j.dump(2)}; }

Json parse_text(const char* text, const char* what) {
    if (!text) fail(ErrorKind::invalid_argument, std::string(what) + ": null JSON text");
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail(ErrorKind::invalid_argument, std::string(what) + ": " + e.what());
    }
}

std::vector<int> parse_int_csv(const char* text, const char* what) {
    if (!text) fail(ErrorKind::invalid_argument, std::string(what) + ": null list");
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

Ratio parse_ratio_arg(const char* text, const char* what) {
    if (!text) fail(ErrorKind::invalid_argument, std::string(what) + ": missing ratio");
    return parse_ratio(text);
}

SearchConfig parse_search_config(const char* config_json) {
    SearchConfig cfg;
    if (!config_json || !*config_json) return cfg;
    const Json j = parse_text(config_json, "search config");
    cfg.time_budget_ms = j.value("time_budget_ms", cfg.time_budget_ms);
    cfg.node_budget = j.value("node_budget", cfg.node_budget);
    cfg.parallel = j.value("parallel", cfg.parallel);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.symmetry_break = j.value("symmetry_break", cfg.symmetry_break);
    return cfg;
}

Json partition_to_json(const CharacteristicPartition& p) {
    Json j;
    j["kind"] = extremal_kind_name(p.kind);
    j["eps"] = p.eps.str();
    if (p.is_ec3()) {
        j["zeta"] = p.zeta.str();
        j["c1"] = p.c1;
        j["c2"] = p.c2;
        j["c3"] = p.c3;
        j["c4"] = p.c4;
    } else {
        j["a"] = p.a;
        j["b"] = p.b;
    }
    j["l"] = p.l;
    j["rounding"] = p.rounding;
    return j;
}

CharacteristicPartition partition_from_json(const Json& j) {
    CharacteristicPartition p;
    p.kind = extremal_kind_from_name(j.at("kind").get<std::string>());
    p.eps = parse_ratio(j.at("eps").get<std::string>());
    if (p.is_ec3()) {
        p.zeta = parse_ratio(j.at("zeta").get<std::string>());
        p.c1 = j.at("c1").get<std::vector<int>>();
        p.c2 = j.at("c2").get<std::vector<int>>();
        p.c3 = j.at("c3").get<std::vector<int>>();
        p.c4 = j.at("c4").get<std::vector<int>>();
    } else {
        p.a = j.at("a").get<std::vector<int>>();
        p.b = j.at("b").get<std::vector<int>>();
    }
    p.l = j.at("l").get<std::vector<int>>();
    return p;
}

Json niceness_to_json(const NicenessVerdict& v) {
    Json j;
    j["nice"] = v.nice;
    j["certified"] = v.certified;
    j["mode"] = v.mode == NicenessMode::exact ? "exact" : "sampled";
    j["min_value"] = v.min_value;
    j["threshold"] = v.threshold;
    if (v.witness) j["witness"] = Json{{"a", v.witness->first}, {"b", v.witness->second}};
    return j;
}

CampaignConfig parse_campaign_config(const char* config_json) {
    CampaignConfig cfg;
    const Json j = parse_text(config_json, "campaign config");
    cfg.n_min = j.value("n_min", cfg.n_min);
    cfg.n_max = j.value("n_max", cfg.n_max);
    cfg.trials = j.value("trials", cfg.trials);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.workers = j.value("workers", cfg.workers);
    cfg.time_budget_ms = j.value("time_budget_ms", cfg.time_budget_ms);
    cfg.node_budget = j.value("node_budget", cfg.node_budget);
    cfg.oracle_bound = j.value("oracle_bound", cfg.oracle_bound);
    cfg.artifact_dir = j.value("artifact_dir", cfg.artifact_dir);
    if (cfg.n_min < 2 || cfg.n_max < cfg.n_min || cfg.trials < 0)
        fail(ErrorKind::invalid_argument, "campaign config: bad n range or trials");
    return cfg;
}

const Digraph& member_of(const tdg_collection* c, int color) {
    const DigraphCollection& dc = c->digraphs();
    if (color < 0 || color >= dc.colors())
        fail(ErrorKind::invalid_argument, "color out of range");
    return dc.member(color);
}

}  // namespace

extern "C" {

const char* tdg_version(void) { return "1.0.0"; }

const char* tdg_last_error(void) { return g_last_error.c_str(); }

const char* tdg_result_json(const tdg_result* r) { return r ? r->text.c_str() : ""; }

void tdg_result_free(tdg_result* r) { delete r; }

tdg_status tdg_collection_from_json(const char* json_text, tdg_collection** out) {
    return wrap([&] {
        const Json j = parse_text(json_text, "instance");
        auto* c = new tdg_collection;
        if (json_is_bipartite_instance(j)) c->data = bipartite_from_json(j);
        else c->data = collection_from_json(j);
        if (j.is_object() && j.contains("meta")) c->meta = j["meta"];
        // Planted partitions stored in meta must still verify against the
        // instance (guards hand-edited fixtures).
        if (!c->bipartite() && c->meta.contains("planted") && c->digraphs().colors() == 1) {
            const CharacteristicPartition planted = partition_from_json(c->meta["planted"]);
            if (!verify_partition(c->digraphs().member(0), planted).pass) {
                delete c;
                fail(ErrorKind::invalid_argument,
                     "instance: planted partition metadata does not verify");
            }
        }
        *out = c;
    });
}

tdg_status tdg_collection_to_json(const tdg_collection* c, tdg_result** out) {
    return wrap([&] {
        const Json j = c->bipartite() ? bipartite_to_json(c->graphs(), c->meta)
                                      : collection_to_json(c->digraphs(), c->meta);
        *out = make_result(j);
    });
}

void tdg_collection_free(tdg_collection* c) { delete c; }

int tdg_collection_order(const tdg_collection* c) {
    return c->bipartite() ? c->graphs().part_size() : c->digraphs().order();
}

int tdg_collection_colors(const tdg_collection* c) {
    return c->bipartite() ? c->graphs().colors() : c->digraphs().colors();
}

int tdg_collection_is_bipartite(const tdg_collection* c) { return c->bipartite() ? 1 : 0; }

tdg_status tdg_collection_semi_degree(const tdg_collection* c, int* out) {
    return wrap([&] { *out = collection_semi_degree(c->digraphs()); });
}

tdg_status tdg_gen_random(int n, int m, double p, int min_semidegree, uint64_t seed,
                          tdg_collection** out) {
    return wrap([&] {
        const auto result = gen_random_collection(
            n, m, p, min_semidegree < 0 ? std::nullopt : std::optional<int>(min_semidegree),
            seed);
        auto* c = new tdg_collection;
        c->data = result.collection;
        c->meta = Json{{"generator", "random"},
                       {"p", p},
                       {"seed", seed},
                       {"repair_edges", result.repair_edges.size()}};
        *out = c;
    });
}

tdg_status tdg_gen_bradshaw(int n, int m, double p, uint64_t seed, tdg_collection** out) {
    return wrap([&] {
        auto* c = new tdg_collection;
        c->data = gen_random_bradshaw(n, m, p, seed);
        c->meta = Json{{"generator", "bradshaw"}, {"p", p}, {"seed", seed}};
        *out = c;
    });
}

tdg_status tdg_gen_tight_witness(int n, tdg_collection** out) {
    return wrap([&] {
        auto* c = new tdg_collection;
        c->data = gen_tight_witness(n);
        c->meta = Json{{"generator", "tight-witness"}};
        *out = c;
    });
}

tdg_status tdg_gen_extremal(const char* kind, int n, const char* eps, const char* zeta,
                            const char* defect, uint64_t seed, tdg_collection** out) {
    return wrap([&] {
        if (!kind) fail(ErrorKind::invalid_argument, "gen_extremal: missing kind");
        const ExtremalKind k = extremal_kind_from_name(kind);
        const GenExtremalResult g =
            gen_extremal(k, n, parse_ratio_arg(eps, "eps"),
                         zeta ? std::optional<Ratio>(parse_ratio(zeta)) : std::nullopt,
                         defect ? parse_ratio(defect) : Ratio(0, 1), seed);
        auto* c = new tdg_collection;
        // A single planted digraph is wrapped as a one-color collection; the
        // planted partition rides along in meta.
        c->data = DigraphCollection({g.digraph});
        c->meta = Json{{"generator", "extremal"},
                       {"planted", partition_to_json(g.partition)},
                       {"defect_edges", g.defect_edges_applied},
                       {"seed", seed}};
        *out = c;
    });
}

tdg_status tdg_solve(const tdg_collection* c, const char* problem, const char* config_json,
                     tdg_result** out) {
    return wrap([&] {
        if (!problem) fail(ErrorKind::invalid_argument, "solve: missing problem name");
        const std::string p = problem;
        const SearchConfig cfg = parse_search_config(config_json);
        if (p == "thc") {
            *out = make_result(outcome_to_json(find_transversal_hamilton_cycle(c->digraphs(), cfg)));
        } else if (p == "thp") {
            *out = make_result(outcome_to_json(find_transversal_hamilton_path(c->digraphs(), cfg)));
        } else if (p == "cover") {
            *out = make_result(outcome_to_json(rainbow_cycle_cover(c->digraphs(), cfg)));
        } else if (p == "tpm") {
            const BipartiteCollection& bc =
                c->bipartite() ? c->graphs() : characteristic_bipartite(c->digraphs());
            *out = make_result(outcome_to_json(find_transversal_perfect_matching(bc, cfg)));
        } else if (p == "maxrm") {
            const BipartiteCollection& bc =
                c->bipartite() ? c->graphs() : characteristic_bipartite(c->digraphs());
            const MaxMatchingResult r = max_rainbow_matching(bc, cfg);
            Json j;
            j["size"] = r.size;
            j["certificate"] = certificate_to_json(r.certificate);
            j["stats"] = Json{{"nodes", r.stats.nodes},
                              {"prunes", r.stats.prunes},
                              {"wall_ms", r.stats.wall_ms}};
            *out = make_result(j);
        } else {
            fail(ErrorKind::invalid_argument, "solve: unknown problem '" + p + "'");
        }
    });
}

tdg_status tdg_oracle_thc(const tdg_collection* c, int bound, tdg_result** out) {
    return wrap([&] {
        const OracleResult r = oracle_transversal_hamilton_cycle(c->digraphs(), bound);
        Json j;
        j["exists"] = r.exists;
        j["pair_count"] = r.pair_count;
        j["cycles_checked"] = r.cycles_checked;
        if (r.witness) j["witness"] = certificate_to_json(*r.witness);
        *out = make_result(j);
    });
}

tdg_status tdg_validate_certificate(const tdg_collection* c, const char* certificate_json,
                                    tdg_result** out) {
    return wrap([&] {
        const RainbowCertificate cert =
            certificate_from_json(parse_text(certificate_json, "certificate"));
        const ValidationReport rep = c->bipartite()
                                         ? validate_certificate(c->graphs(), cert)
                                         : validate_certificate(c->digraphs(), cert);
        Json j;
        j["pass"] = rep.pass;
        Json issues = Json::array();
        for (const auto& issue : rep.issues)
            issues.push_back(Json{{"clause", issue.clause}, {"detail", issue.detail}});
        j["issues"] = issues;
        *out = make_result(j);
    });
}

tdg_status tdg_is_eps_nice(const tdg_collection* c, int color, const char* eps, const char* mode,
                           uint64_t seed, tdg_result** out) {
    return wrap([&] {
        NicenessOptions opts;
        opts.seed = seed;
        if (mode && std::string(mode) == "sampled") opts.mode = NicenessMode::sampled;
        const Ratio e = parse_ratio_arg(eps, "eps");
        const NicenessVerdict v = c->bipartite()
                                      ? is_eps_nice_bipartite(c->graphs(), color, e, opts)
                                      : is_eps_nice(member_of(c, color), e, opts);
        *out = make_result(niceness_to_json(v));
    });
}

tdg_status tdg_classify_extremal(const tdg_collection* c, int color, const char* eps,
                                 const char* zeta_grid_csv, uint64_t seed, tdg_result** out) {
    return wrap([&] {
        ClassifyOptions opts;
        opts.seed = seed;
        if (zeta_grid_csv && *zeta_grid_csv) {
            std::stringstream ss(zeta_grid_csv);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) opts.zeta_grid.push_back(parse_ratio(item));
        }
        const auto found =
            classify_extremal(member_of(c, color), parse_ratio_arg(eps, "eps"), opts);
        Json j;
        j["found"] = found.has_value();
        j["heuristic"] = opts.heuristic_flagged;
        Json kinds = Json::array();
        for (ExtremalKind k : opts.verified_kinds) kinds.push_back(extremal_kind_name(k));
        j["verified_kinds"] = kinds;  // >1 entry records a template overlap
        if (found) j["partition"] = partition_to_json(*found);
        *out = make_result(j);
    });
}

tdg_status tdg_classify_stability(const tdg_collection* c, const char* gamma, const char* alpha,
                                  const char* eps, const char* delta, const char* records_json,
                                  uint64_t seed, tdg_result** out) {
    return wrap([&] {
        const Ratio g = parse_ratio_arg(gamma, "gamma");
        const Ratio a = parse_ratio_arg(alpha, "alpha");
        const Ratio e = parse_ratio_arg(eps, "eps");
        const Ratio d = parse_ratio_arg(delta, "delta");
        if (c->bipartite()) {
            const BipartiteCollection& bc = c->graphs();
            BipartiteRecords records(bc.colors());
            for (int i = 0; i < bc.colors(); ++i)
                records[i] =
                    derive_bipartite_record(bc, i, e, Rng::derive(seed, static_cast<std::uint64_t>(i)));
            StabilityOptions sopts;
            sopts.niceness.seed = seed;
            const StabilityReport rep = classify_stability_bipartite(bc, g, a, e, d, records, sopts);
            Json j;
            j["verdict"] = stability_verdict_name(rep.verdict);
            j["weakly_mode"] = rep.weakly_mode;
            j["nice_colors"] = rep.nice_colors;
            Json edges = Json::array();
            for (const auto& [x, y] : rep.cross.edges[0]) edges.push_back(Json::array({x, y}));
            j["cross_graphs"] = Json::array({Json{{"mode", 1}, {"edges", edges}}});
            j["flags"] = rep.flags;
            j["records_derived"] = true;
            *out = make_result(j);
            return;
        }
        const DigraphCollection& dc = c->digraphs();
        PartitionRecords records(dc.colors());
        bool derived = false;
        if (records_json && *records_json) {
            const Json rj = parse_text(records_json, "records");
            if (!rj.is_array() || static_cast<int>(rj.size()) != dc.colors())
                fail(ErrorKind::invalid_argument, "records: need one entry (or null) per color");
            for (int i = 0; i < dc.colors(); ++i)
                if (!rj[i].is_null()) records[i] = partition_from_json(rj[i]);
        } else {
            derived = true;
            for (int i = 0; i < dc.colors(); ++i) {
                ClassifyOptions copts;
                copts.seed = Rng::derive(seed, static_cast<std::uint64_t>(i));
                records[i] = classify_extremal(dc.member(i), e, copts);
            }
        }
        StabilityOptions sopts;
        sopts.niceness.seed = seed;
        const StabilityReport rep = classify_stability(dc, g, a, e, d, records, sopts);
        Json j;
        j["verdict"] = stability_verdict_name(rep.verdict);
        j["weakly_mode"] = rep.weakly_mode;
        j["nice_colors"] = rep.nice_colors;
        j["uncertified_nice_colors"] = rep.uncertified_nice_colors;
        j["unrecorded_extremal_colors"] = rep.unrecorded_extremal_colors;
        Json cross = Json::array();
        for (int k = 0; k < 3; ++k) {
            Json edges = Json::array();
            for (const auto& [x, y] : rep.cross.edges[k]) edges.push_back(Json::array({x, y}));
            cross.push_back(Json{{"mode", k + 1},
                                 {"edges", edges},
                                 {"disjunct_tallies", rep.cross.disjunct_counts[k]}});
        }
        j["cross_graphs"] = cross;
        j["flags"] = rep.flags;
        j["records_derived"] = derived;
        if (derived) {
            Json recs = Json::array();
            for (const auto& r : records)
                recs.push_back(r ? partition_to_json(*r) : Json(nullptr));
            j["records"] = recs;
        }
        *out = make_result(j);
    });
}

namespace {

AbsorberWitness witness_from_json(const Json& j) {
    AbsorberWitness w;
    w.kind = absorber_kind_from_name(j.at("kind").get<std::string>());
    w.segment = j.at("segment").get<std::vector<int>>();
    for (int c : j.at("segment_colors").get<std::vector<int>>()) w.segment_colors.push_back(c - 1);
    w.color = j.at("color").get<int>() - 1;
    w.v = j.at("v").get<int>();
    w.u = j.at("u").get<int>();
    return w;
}

Json witness_to_json(const AbsorberWitness& w) {
    Json j;
    j["kind"] = absorber_kind_name(w.kind);
    j["segment"] = w.segment;
    Json cols = Json::array();
    for (int c : w.segment_colors) cols.push_back(c + 1);
    j["segment_colors"] = cols;
    j["color"] = w.color + 1;
    j["v"] = w.v;
    j["u"] = w.u;
    return j;
}

}  // namespace

tdg_status tdg_enumerate_absorbers(const tdg_collection* c, const char* cycle_json, int color,
                                   int v, int u, const char* kind, tdg_result** out) {
    return wrap([&] {
        const RainbowCertificate cycle = certificate_from_json(parse_text(cycle_json, "cycle"));
        const AbsorberScan scan = enumerate_absorbers(
            c->digraphs(), cycle, color, v, u,
            kind ? absorber_kind_from_name(kind) : AbsorberKind::type_I);
        Json j;
        Json ws = Json::array();
        for (const AbsorberWitness& w : scan.witnesses) ws.push_back(witness_to_json(w));
        j["witnesses"] = ws;
        j["max_disjoint"] = scan.max_disjoint;
        *out = make_result(j);
    });
}

tdg_status tdg_absorb(const tdg_collection* c, const char* cycle_json, const char* witness_json,
                      const char* payload_json, tdg_result** out) {
    return wrap([&] {
        const RainbowCertificate cycle = certificate_from_json(parse_text(cycle_json, "cycle"));
        const AbsorberWitness w = witness_from_json(parse_text(witness_json, "witness"));
        Payload payload;
        const Json pj = parse_text(payload_json, "payload");
        payload.vertices = pj.at("vertices").get<std::vector<int>>();
        if (pj.contains("colors"))
            for (int col : pj["colors"].get<std::vector<int>>()) payload.colors.push_back(col - 1);
        if (w.kind == AbsorberKind::bip_edge) {
            const RainbowCertificate grown = absorb_edge(c->graphs(), cycle, w);
            *out = make_result(certificate_to_json(grown));
        } else {
            const RainbowCertificate grown = absorb(c->digraphs(), cycle, w, payload);
            *out = make_result(certificate_to_json(grown));
        }
    });
}

tdg_status tdg_verify_absorbing_cycle(const tdg_collection* c, const char* cycle_json,
                                      const char* colors_csv, const char* params_csv,
                                      const char* kind, tdg_result** out) {
    return wrap([&] {
        const RainbowCertificate cycle = certificate_from_json(parse_text(cycle_json, "cycle"));
        const std::vector<int> cset = parse_int_csv(colors_csv, "colors");
        std::vector<Ratio> params;
        {
            std::stringstream ss(params_csv ? params_csv : "");
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) params.push_back(parse_ratio(item));
        }
        if (params.size() != 4)
            fail(ErrorKind::invalid_argument,
                 "params must be delta,delta_prime,gamma,gamma_prime");
        const AbsorbingCycleParams acp{params[0], params[1], params[2], params[3]};
        // Without supplied partition records every vertex is good.
        const DigraphCollection& dc = c->digraphs();
        std::vector<Vset> good(dc.colors());
        for (int i = 0; i < dc.colors(); ++i) {
            good[i] = Vset(dc.order());
            good[i].fill();
        }
        const AbsorbReport rep = verify_absorbing_cycle(
            dc, cycle, cset, acp, good,
            kind ? absorber_kind_from_name(kind) : AbsorberKind::type_I);
        Json j;
        j["pass"] = rep.pass;
        Json checks = Json::array();
        for (const auto& chk : rep.checks)
            checks.push_back(
                Json{{"clause", chk.clause}, {"pass", chk.pass}, {"detail", chk.detail}});
        j["checks"] = checks;
        *out = make_result(j);
    });
}

tdg_status tdg_slice_density(const tdg_collection* c, const char* v1_csv, const char* v2_csv,
                             const char* colors_csv, tdg_result** out) {
    return wrap([&] {
        const CollectionSlice s{&c->digraphs(), parse_int_csv(v1_csv, "v1"),
                                parse_int_csv(v2_csv, "v2"), parse_int_csv(colors_csv, "colors")};
        const Ratio d = slice_density(s, s.v1, s.v2, s.colors);
        *out = make_result(Json{{"density", d.str()}, {"value", d.to_double()}});
    });
}

tdg_status tdg_check_regular_slice(const tdg_collection* c, const char* v1_csv,
                                   const char* v2_csv, const char* colors_csv, const char* eps,
                                   const char* d, const char* mode, uint64_t seed,
                                   tdg_result** out) {
    return wrap([&] {
        const CollectionSlice s{&c->digraphs(), parse_int_csv(v1_csv, "v1"),
                                parse_int_csv(v2_csv, "v2"), parse_int_csv(colors_csv, "colors")};
        RegCheckOptions opts;
        opts.seed = seed;
        if (mode && std::string(mode) == "sampled") opts.mode = RegMode::sampled;
        const RegularityVerdict v = check_regular_slice(s, parse_ratio_arg(eps, "eps"),
                                                        parse_ratio_arg(d, "d"), opts);
        Json j;
        j["regular"] = v.regular;
        j["certified"] = v.certified;
        j["density_clause"] = v.density_clause;
        j["global_density"] = v.global_density.str();
        j["triples_checked"] = v.triples_checked;
        if (v.witness)
            j["witness"] = Json{{"v1", v.witness->v1_sub},
                                {"v2", v.witness->v2_sub},
                                {"colors", v.witness->color_sub},
                                {"sub_density", v.witness->sub_density.str()}};
        *out = make_result(j);
    });
}

tdg_status tdg_build_reduced(const tdg_collection* c, const char* vparts_json,
                             const char* cparts_json, const char* eps, const char* d,
                             const char* mode, uint64_t seed, tdg_result** out) {
    return wrap([&] {
        const Json vp = parse_text(vparts_json, "vertex partition");
        const Json cp = parse_text(cparts_json, "color partition");
        std::vector<std::vector<int>> vparts, cparts;
        for (const Json& cluster : vp) vparts.push_back(cluster.get<std::vector<int>>());
        for (const Json& cluster : cp) cparts.push_back(cluster.get<std::vector<int>>());
        RegCheckOptions opts;
        opts.seed = seed;
        if (mode && std::string(mode) == "sampled") opts.mode = RegMode::sampled;
        const ReducedCollection rc =
            build_reduced(c->digraphs(), vparts, cparts, parse_ratio_arg(eps, "eps"),
                          parse_ratio_arg(d, "d"), opts);
        Json j;
        j["L"] = rc.cluster_count;
        j["M"] = rc.color_cluster_count;
        Json members = Json::array();
        for (const Digraph& r : rc.members) {
            Json edges = Json::array();
            for (const auto& [u, v] : r.edges()) edges.push_back(Json::array({u, v}));
            members.push_back(Json{{"edges", edges}});
        }
        j["members"] = members;
        j["warnings"] = rc.warnings;
        j["provenance"] = Json{{"eps", rc.eps.str()},
                               {"d", rc.d.str()},
                               {"mode", rc.mode == RegMode::exact ? "exact" : "sampled"},
                               {"cleaned", rc.cleaned}};
        *out = make_result(j);
    });
}

tdg_status tdg_aux4_stats(const tdg_collection* c, tdg_result** out) {
    return wrap([&] {
        const DigraphCollection& dc = c->digraphs();
        const Auxiliary4Graph h = build_auxiliary_4graph(dc);
        Json j;
        j["n"] = h.n;
        j["m"] = h.m;
        j["edge_count"] = h.edges.size();
        Json cd = Json::array(), vd = Json::array();
        for (int color = 0; color < h.m; ++color) cd.push_back(h.degree(h.color_id(color)));
        for (int v = 0; v < h.n; ++v) vd.push_back(h.degree(v));
        j["color_degrees"] = cd;
        j["vertex_degrees"] = vd;
        *out = make_result(j);
    });
}

tdg_status tdg_collection_mu_nice(const tdg_collection* c, const char* mu, const char* mode,
                                  uint64_t seed, tdg_result** out) {
    return wrap([&] {
        NicenessOptions opts;
        opts.seed = seed;
        if (mode && std::string(mode) == "sampled") opts.mode = NicenessMode::sampled;
        const MuNiceVerdict v = collection_mu_nice(c->graphs(), parse_ratio_arg(mu, "mu"), opts);
        Json j;
        j["nice"] = v.nice;
        j["certified"] = v.certified;
        j["min_value"] = v.min_value;
        j["threshold"] = v.threshold;
        j["mode"] = v.mode == NicenessMode::exact ? "exact" : "sampled";
        if (v.witness) j["witness"] = Json{{"a", v.witness->first}, {"b", v.witness->second}};
        *out = make_result(j);
    });
}

tdg_status tdg_sweep_threshold(const char* config_json, tdg_result** out) {
    return wrap([&] { *out = make_result(sweep_threshold(parse_campaign_config(config_json))); });
}

tdg_status tdg_sweep_bradshaw(const char* config_json, tdg_result** out) {
    return wrap([&] { *out = make_result(sweep_bradshaw(parse_campaign_config(config_json))); });
}

tdg_status tdg_oracle_corpus(uint64_t seed, int random_trials, int workers, tdg_result** out) {
    return wrap([&] { *out = make_result(run_oracle_corpus(seed, random_trials, workers)); });
}

}  // extern "C"
