// Command-line front end for the transversal-digraph toolkit. Talks to the
// core exclusively through the C API in tdg.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tdg.h"

namespace {

int fail_with(tdg_status status) {
    std::cerr << "error: " << tdg_last_error() << "\n";
    return static_cast<int>(status);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open " << path << "\n";
        std::exit(2);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// RAII wrappers around the opaque handles.
struct Collection {
    tdg_collection* handle = nullptr;
    ~Collection() { tdg_collection_free(handle); }
};

struct Result {
    tdg_result* handle = nullptr;
    ~Result() { tdg_result_free(handle); }
    std::string str() const { return handle ? tdg_result_json(handle) : ""; }
};

int emit(const Result& result, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << result.str() << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 2;
        }
        out << result.str() << "\n";
    }
    return 0;
}

int load_instance(const std::string& path, Collection& c) {
    const std::string text = read_file(path);
    const tdg_status st = tdg_collection_from_json(text.c_str(), &c.handle);
    if (st != TDG_OK) return fail_with(st);
    return 0;
}

std::string campaign_config(int n_min, int n_max, int trials, std::uint64_t seed, int workers,
                            std::int64_t time_budget, std::int64_t node_budget, int oracle_bound,
                            const std::string& artifact_dir) {
    std::ostringstream ss;
    ss << "{\"n_min\":" << n_min << ",\"n_max\":" << n_max << ",\"trials\":" << trials
       << ",\"seed\":" << seed << ",\"workers\":" << workers
       << ",\"time_budget_ms\":" << time_budget << ",\"node_budget\":" << node_budget
       << ",\"oracle_bound\":" << oracle_bound;
    if (!artifact_dir.empty()) ss << ",\"artifact_dir\":\"" << artifact_dir << "\"";
    ss << "}";
    return ss.str();
}

std::string search_config(std::int64_t time_budget, std::int64_t node_budget, int threads,
                          std::uint64_t seed) {
    std::ostringstream ss;
    ss << "{\"time_budget_ms\":" << time_budget << ",\"node_budget\":" << node_budget
       << ",\"parallel\":" << (threads > 1 ? "true" : "false") << ",\"seed\":" << seed << "}";
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"transversal digraph toolkit"};
    app.require_subcommand(1);

    std::string out_path;
    std::uint64_t seed = 1;
    std::int64_t time_budget = 60'000;
    std::int64_t node_budget = 200'000'000;
    int threads = 1;
    std::string mode = "exact";

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate instances");
    gen->require_subcommand(1);
    int gen_n = 6, gen_m = -1, gen_min_semi = -1;
    double gen_p = 0.5;
    std::string gen_kind = "EC1", gen_eps = "1/8", gen_zeta, gen_defect = "0";

    auto* gen_random = gen->add_subcommand("random", "random collection with optional repair");
    gen_random->add_option("--n", gen_n)->required();
    gen_random->add_option("--m", gen_m, "colors (default n)");
    gen_random->add_option("--p", gen_p);
    gen_random->add_option("--min-semidegree", gen_min_semi);
    gen_random->add_option("--seed", seed);
    gen_random->add_option("--out", out_path);

    auto* gen_bradshaw = gen->add_subcommand("bradshaw", "bipartite instance with the degree hypotheses");
    gen_bradshaw->add_option("--n", gen_n)->required();
    gen_bradshaw->add_option("--m", gen_m);
    gen_bradshaw->add_option("--p", gen_p);
    gen_bradshaw->add_option("--seed", seed);
    gen_bradshaw->add_option("--out", out_path);

    auto* gen_tight = gen->add_subcommand("tight", "sharpness witness at semi-degree ceil(n/2)-1");
    gen_tight->add_option("--n", gen_n)->required();
    gen_tight->add_option("--out", out_path);

    auto* gen_ext = gen->add_subcommand("extremal", "planted EC1/EC2/EC3 digraph");
    gen_ext->add_option("--kind", gen_kind);
    gen_ext->add_option("--n", gen_n)->required();
    gen_ext->add_option("--eps", gen_eps);
    gen_ext->add_option("--zeta", gen_zeta);
    gen_ext->add_option("--defect", gen_defect);
    gen_ext->add_option("--seed", seed);
    gen_ext->add_option("--out", out_path);

    // ---- solve ----
    auto* solve = app.add_subcommand("solve", "run an exact solver");
    std::string solve_problem, solve_instance;
    solve->add_option("problem", solve_problem, "thc|thp|tpm|cover|maxrm")->required();
    solve->add_option("instance", solve_instance)->required();
    solve->add_option("--seed", seed);
    solve->add_option("--time-budget", time_budget, "milliseconds");
    solve->add_option("--node-budget", node_budget);
    solve->add_option("--threads", threads);
    solve->add_option("--out", out_path);

    // ---- oracle ----
    auto* oracle = app.add_subcommand("oracle", "brute-force oracle");
    std::string oracle_problem, oracle_instance;
    int oracle_bound = 9;
    oracle->add_option("problem", oracle_problem, "thc")->required();
    oracle->add_option("instance", oracle_instance)->required();
    oracle->add_option("--bound", oracle_bound);
    oracle->add_option("--out", out_path);

    // ---- validate ----
    auto* validate = app.add_subcommand("validate", "check a certificate against an instance");
    std::string val_instance, val_cert;
    validate->add_option("instance", val_instance)->required();
    validate->add_option("certificate", val_cert)->required();
    validate->add_option("--out", out_path);

    // ---- classify ----
    auto* classify = app.add_subcommand("classify", "niceness / extremal classification");
    std::string cls_instance, cls_eps = "1/8", cls_zeta_grid;
    int cls_color = 0;
    bool cls_nice_only = false;
    classify->add_option("instance", cls_instance)->required();
    classify->add_option("--color", cls_color, "0-based color index");
    classify->add_option("--eps", cls_eps);
    classify->add_option("--zeta-grid", cls_zeta_grid, "comma-separated ratios");
    classify->add_option("--seed", seed);
    classify->add_option("--mode", mode, "exact|sampled (niceness only)");
    classify->add_flag("--nice-only", cls_nice_only, "report eps-niceness instead of a partition");
    classify->add_option("--out", out_path);

    // ---- stability ----
    auto* stability = app.add_subcommand("stability", "collection stability verdict");
    std::string stab_instance, stab_gamma = "1/2", stab_alpha = "1/10", stab_eps = "1/8",
                stab_delta = "1/10", stab_records;
    stability->add_option("instance", stab_instance)->required();
    stability->add_option("--gamma", stab_gamma);
    stability->add_option("--alpha", stab_alpha);
    stability->add_option("--eps", stab_eps);
    stability->add_option("--delta", stab_delta);
    stability->add_option("--records", stab_records, "JSON file with per-color partitions");
    stability->add_option("--seed", seed);
    stability->add_option("--out", out_path);

    // ---- absorb ----
    auto* absorb = app.add_subcommand("absorb", "absorbing-path machinery");
    absorb->require_subcommand(1);
    std::string abs_instance, abs_cycle, abs_witness, abs_payload, abs_kind = "type-I",
                abs_colors, abs_params;
    int abs_color = 0, abs_v = 0, abs_u = 0;

    auto* abs_enum = absorb->add_subcommand("enumerate", "scan cycle segments for absorbers");
    abs_enum->add_option("instance", abs_instance)->required();
    abs_enum->add_option("--cycle", abs_cycle, "certificate file")->required();
    abs_enum->add_option("--color", abs_color, "0-based absorbed color")->required();
    abs_enum->add_option("--v", abs_v)->required();
    abs_enum->add_option("--u", abs_u)->required();
    abs_enum->add_option("--kind", abs_kind, "type-I|type-II");
    abs_enum->add_option("--out", out_path);

    auto* abs_apply = absorb->add_subcommand("apply", "rewrite the cycle through a witness");
    abs_apply->add_option("instance", abs_instance)->required();
    abs_apply->add_option("--cycle", abs_cycle)->required();
    abs_apply->add_option("--witness", abs_witness)->required();
    abs_apply->add_option("--payload", abs_payload)->required();
    abs_apply->add_option("--out", out_path);

    auto* abs_verify = absorb->add_subcommand("verify", "absorbing-cycle parameter check");
    abs_verify->add_option("instance", abs_instance)->required();
    abs_verify->add_option("--cycle", abs_cycle)->required();
    abs_verify->add_option("--colors", abs_colors, "comma-separated 0-based color set")->required();
    abs_verify->add_option("--params", abs_params, "delta,delta',gamma,gamma'")->required();
    abs_verify->add_option("--kind", abs_kind);
    abs_verify->add_option("--out", out_path);

    // ---- regcheck ----
    auto* regcheck = app.add_subcommand("regcheck", "density / regularity tooling");
    regcheck->require_subcommand(1);
    std::string reg_instance, reg_v1, reg_v2, reg_colors, reg_eps = "1/4", reg_d = "1/4",
                reg_vparts, reg_cparts;

    auto* reg_density = regcheck->add_subcommand("density", "exact slice density");
    reg_density->add_option("instance", reg_instance)->required();
    reg_density->add_option("--v1", reg_v1)->required();
    reg_density->add_option("--v2", reg_v2)->required();
    reg_density->add_option("--colors", reg_colors)->required();
    reg_density->add_option("--out", out_path);

    auto* reg_regular = regcheck->add_subcommand("regular", "(eps,d)-regularity check");
    reg_regular->add_option("instance", reg_instance)->required();
    reg_regular->add_option("--v1", reg_v1)->required();
    reg_regular->add_option("--v2", reg_v2)->required();
    reg_regular->add_option("--colors", reg_colors)->required();
    reg_regular->add_option("--eps", reg_eps);
    reg_regular->add_option("--d", reg_d);
    reg_regular->add_option("--mode", mode, "exact|sampled");
    reg_regular->add_option("--seed", seed);
    reg_regular->add_option("--out", out_path);

    auto* reg_reduced = regcheck->add_subcommand("reduced", "build the reduced collection");
    reg_reduced->add_option("instance", reg_instance)->required();
    reg_reduced->add_option("--vparts", reg_vparts, "JSON file: array of clusters, [0]=V0")
        ->required();
    reg_reduced->add_option("--cparts", reg_cparts)->required();
    reg_reduced->add_option("--eps", reg_eps);
    reg_reduced->add_option("--d", reg_d);
    reg_reduced->add_option("--mode", mode);
    reg_reduced->add_option("--seed", seed);
    reg_reduced->add_option("--out", out_path);

    auto* reg_aux4 = regcheck->add_subcommand("aux4", "auxiliary 4-graph degree stats");
    reg_aux4->add_option("instance", reg_instance)->required();
    reg_aux4->add_option("--out", out_path);

    // ---- sweep ----
    auto* sweep = app.add_subcommand("sweep", "experiment campaigns");
    sweep->require_subcommand(1);
    int sw_nmin = 4, sw_nmax = 6, sw_trials = 100;
    std::string sw_artifacts;

    auto* sw_thresh = sweep->add_subcommand("threshold", "semi-degree threshold sweep");
    sw_thresh->add_option("--n-min", sw_nmin);
    sw_thresh->add_option("--n-max", sw_nmax);
    sw_thresh->add_option("--trials", sw_trials);
    sw_thresh->add_option("--seed", seed);
    sw_thresh->add_option("--threads", threads);
    sw_thresh->add_option("--time-budget", time_budget);
    sw_thresh->add_option("--node-budget", node_budget);
    sw_thresh->add_option("--oracle-bound", oracle_bound);
    sw_thresh->add_option("--artifact-dir", sw_artifacts);
    sw_thresh->add_option("--out", out_path);

    auto* sw_brad = sweep->add_subcommand("bradshaw", "transversal-PM hard gate sweep");
    sw_brad->add_option("--n-min", sw_nmin);
    sw_brad->add_option("--n-max", sw_nmax);
    sw_brad->add_option("--trials", sw_trials);
    sw_brad->add_option("--seed", seed);
    sw_brad->add_option("--threads", threads);
    sw_brad->add_option("--out", out_path);

    auto* sw_corpus = sweep->add_subcommand("oracle-corpus", "solver-vs-oracle corpus run");
    int sw_random = 200;
    sw_corpus->add_option("--random-trials", sw_random);
    sw_corpus->add_option("--seed", seed);
    sw_corpus->add_option("--threads", threads);
    sw_corpus->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    tdg_status st = TDG_OK;
    Result result;

    if (gen_random->parsed() || gen_bradshaw->parsed() || gen_tight->parsed() ||
        gen_ext->parsed()) {
        Collection c;
        if (gen_m < 0) gen_m = gen_n;
        if (gen_random->parsed())
            st = tdg_gen_random(gen_n, gen_m, gen_p, gen_min_semi, seed, &c.handle);
        else if (gen_bradshaw->parsed())
            st = tdg_gen_bradshaw(gen_n, gen_m, gen_p, seed, &c.handle);
        else if (gen_tight->parsed())
            st = tdg_gen_tight_witness(gen_n, &c.handle);
        else
            st = tdg_gen_extremal(gen_kind.c_str(), gen_n, gen_eps.c_str(),
                                  gen_zeta.empty() ? nullptr : gen_zeta.c_str(),
                                  gen_defect.c_str(), seed, &c.handle);
        if (st != TDG_OK) return fail_with(st);
        st = tdg_collection_to_json(c.handle, &result.handle);
        if (st != TDG_OK) return fail_with(st);
        return emit(result, out_path);
    }

    if (solve->parsed()) {
        Collection c;
        if (const int rc = load_instance(solve_instance, c)) return rc;
        const std::string cfg = search_config(time_budget, node_budget, threads, seed);
        st = tdg_solve(c.handle, solve_problem.c_str(), cfg.c_str(), &result.handle);
        if (st != TDG_OK) return fail_with(st);
        const int rc = emit(result, out_path);
        if (rc) return rc;
        // a timeout is reported in-band but maps to the budget exit code
        return result.str().find("\"status\": \"timeout\"") != std::string::npos ? 3 : 0;
    }

    if (oracle->parsed()) {
        if (oracle_problem != "thc") {
            std::cerr << "error: oracle supports problem 'thc'\n";
            return 2;
        }
        Collection c;
        if (const int rc = load_instance(oracle_instance, c)) return rc;
        st = tdg_oracle_thc(c.handle, oracle_bound, &result.handle);
        if (st != TDG_OK) return fail_with(st);
        return emit(result, out_path);
    }

    if (validate->parsed()) {
        Collection c;
        if (const int rc = load_instance(val_instance, c)) return rc;
        const std::string cert = read_file(val_cert);
        st = tdg_validate_certificate(c.handle, cert.c_str(), &result.handle);
        if (st != TDG_OK) return fail_with(st);
        return emit(result, out_path);
    }

    if (classify->parsed()) {
        Collection c;
        if (const int rc = load_instance(cls_instance, c)) return rc;
        if (cls_nice_only)
            st = tdg_is_eps_nice(c.handle, cls_color, cls_eps.c_str(), mode.c_str(), seed,
                                 &result.handle);
        else
            st = tdg_classify_extremal(c.handle, cls_color, cls_eps.c_str(),
                                       cls_zeta_grid.empty() ? nullptr : cls_zeta_grid.c_str(),
                                       seed, &result.handle);
        if (st != TDG_OK) return fail_with(st);
        return emit(result, out_path);
    }

    if (stability->parsed()) {
        Collection c;
        if (const int rc = load_instance(stab_instance, c)) return rc;
        std::string records;
        if (!stab_records.empty()) records = read_file(stab_records);
        st = tdg_classify_stability(c.handle, stab_gamma.c_str(), stab_alpha.c_str(),
                                    stab_eps.c_str(), stab_delta.c_str(),
                                    records.empty() ? nullptr : records.c_str(), seed,
                                    &result.handle);
        if (st != TDG_OK) return fail_with(st);
        return emit(result, out_path);
    }

    if (abs_enum->parsed() || abs_apply->parsed() || abs_verify->parsed()) {
        Collection c;
        if (const int rc = load_instance(abs_instance, c)) return rc;
        const std::string cycle = read_file(abs_cycle);
        if (abs_enum->parsed()) {
            st = tdg_enumerate_absorbers(c.handle, cycle.c_str(), abs_color, abs_v, abs_u,
                                         abs_kind.c_str(), &result.handle);
        } else if (abs_apply->parsed()) {
            const std::string witness = read_file(abs_witness);
            const std::string payload = read_file(abs_payload);
            st = tdg_absorb(c.handle, cycle.c_str(), witness.c_str(), payload.c_str(),
                            &result.handle);
        } else {
            st = tdg_verify_absorbing_cycle(c.handle, cycle.c_str(), abs_colors.c_str(),
                                            abs_params.c_str(), abs_kind.c_str(),
                                            &result.handle);
        }
        if (st != TDG_OK) return fail_with(st);
        return emit(result, out_path);
    }

    if (reg_density->parsed() || reg_regular->parsed() || reg_reduced->parsed() ||
        reg_aux4->parsed()) {
        Collection c;
        if (const int rc = load_instance(reg_instance, c)) return rc;
        if (reg_density->parsed()) {
            st = tdg_slice_density(c.handle, reg_v1.c_str(), reg_v2.c_str(), reg_colors.c_str(),
                                   &result.handle);
        } else if (reg_regular->parsed()) {
            st = tdg_check_regular_slice(c.handle, reg_v1.c_str(), reg_v2.c_str(),
                                         reg_colors.c_str(), reg_eps.c_str(), reg_d.c_str(),
                                         mode.c_str(), seed, &result.handle);
        } else if (reg_reduced->parsed()) {
            const std::string vparts = read_file(reg_vparts);
            const std::string cparts = read_file(reg_cparts);
            st = tdg_build_reduced(c.handle, vparts.c_str(), cparts.c_str(), reg_eps.c_str(),
                                   reg_d.c_str(), mode.c_str(), seed, &result.handle);
        } else {
            st = tdg_aux4_stats(c.handle, &result.handle);
        }
        if (st != TDG_OK) return fail_with(st);
        return emit(result, out_path);
    }

    if (sw_thresh->parsed() || sw_brad->parsed() || sw_corpus->parsed()) {
        if (sw_corpus->parsed()) {
            st = tdg_oracle_corpus(seed, sw_random, threads, &result.handle);
        } else {
            const std::string cfg = campaign_config(sw_nmin, sw_nmax, sw_trials, seed, threads,
                                                    time_budget, node_budget, oracle_bound,
                                                    sw_artifacts);
            st = sw_thresh->parsed() ? tdg_sweep_threshold(cfg.c_str(), &result.handle)
                                     : tdg_sweep_bradshaw(cfg.c_str(), &result.handle);
        }
        if (st != TDG_OK) return fail_with(st);
        return emit(result, out_path);
    }

    std::cerr << "error: no subcommand\n";
    return 2;
}
