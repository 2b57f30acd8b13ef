// Command-line front end: solve / wiener / gen / check over DIMACS-like files.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "madst/above_guarantee.hpp"
#include "madst/graph_io.hpp"
#include "madst/instance_gen.hpp"
#include "madst/modular.hpp"
#include "madst/oracle.hpp"
#include "madst/tree_decomposition.hpp"
#include "madst/treewidth_dp.hpp"
#include "madst/vertex_integrity.hpp"
#include "madst/wiener.hpp"

namespace {

using madst::Graph;
using madst::SpanningTree;

int oracle_vertex_limit() {
    if (const char* env = std::getenv("MADST_MAX_ORACLE_N")) {
        try {
            return std::stoi(env);
        } catch (...) {
            throw madst::Error("MADST_MAX_ORACLE_N is not a number");
        }
    }
    return madst::kDefaultOracleVertexLimit;
}

struct SolveOutcome {
    std::string algo;
    std::uint64_t wiener = 0;
    std::optional<bool> decision;
    std::optional<SpanningTree> witness;
};

/// Drives the above-guarantee decision procedure down to the optimum:
/// start from a greedy upper bound and tighten to the best witness.
SolveOutcome above_optimum(const Graph& g) {
    SpanningTree greedy = madst::bfs_spanning_tree(g, madst::median_vertices(g).front());
    std::uint64_t best = madst::wiener_tree(greedy);
    SpanningTree tree = greedy;
    while (best > 0) {
        auto r = madst::solve_above(g, best - 1);
        if (!r.yes) break;
        tree = *r.witness;
        best = madst::wiener_tree(tree);
    }
    return SolveOutcome{"above", best, std::nullopt, std::move(tree)};
}

SolveOutcome run_algo(const std::string& algo, const Graph& g, std::optional<std::uint64_t> budget,
                      const std::optional<madst::TreeDecomposition>& td, int threads,
                      int auto_max_k, int auto_max_width) {
    const std::uint64_t b = budget.value_or(UINT64_MAX);
    if (algo == "oracle") {
        auto r = madst::mad_tree_bruteforce(g, oracle_vertex_limit());
        SolveOutcome o{"oracle", r.wiener, std::nullopt, std::move(r.tree)};
        if (budget) o.decision = o.wiener <= *budget;
        return o;
    }
    if (algo == "modular") {
        madst::ModularOptions opt;
        opt.threads = threads;
        auto r = madst::solve_modular(g, b, opt);
        SolveOutcome o{"modular", r.wiener, std::nullopt, std::move(r.tree)};
        if (budget) o.decision = r.yes;
        return o;
    }
    if (algo == "treewidth") {
        auto r = madst::solve_treewidth(g, b, td);
        SolveOutcome o{"treewidth", r.wiener, std::nullopt, std::nullopt};
        if (budget) o.decision = r.yes;
        return o;
    }
    if (algo == "above") {
        if (!budget) return above_optimum(g);
        auto r = madst::solve_above(g, *budget);
        return SolveOutcome{"above", r.yes && r.witness ? madst::wiener_tree(*r.witness) : 0, r.yes,
                            std::move(r.witness)};
    }
    if (algo == "vi") {
        auto r = madst::solve_vertex_integrity(g, b);
        SolveOutcome o{"vi", r.wiener, std::nullopt, std::move(r.tree)};
        if (budget) o.decision = r.yes;
        return o;
    }
    if (algo == "auto") {
        // Pick by computed parameters; thresholds mirror the tractability map.
        try {
            auto p = madst::modular_partition(g);
            if (p.module_count() <= auto_max_k)
                return run_algo("modular", g, budget, td, threads, auto_max_k, auto_max_width);
        } catch (const madst::TooSmall&) {
        }
        auto dec = td ? *td : madst::heuristic_tree_decomposition(g);
        if (dec.width() <= auto_max_width)
            return run_algo("treewidth", g, budget, dec, threads, auto_max_k, auto_max_width);
        // Above-guarantee only stays feasible while the slack b - W(G) is small.
        const std::uint64_t w_graph = madst::wiener_graph(g);
        const std::uint64_t ub =
            budget ? *budget : madst::wiener_tree(madst::bfs_spanning_tree(g, madst::median_vertices(g).front()));
        if (ub >= w_graph && ub - w_graph <= 16) {
            if (budget) {
                auto r = madst::solve_above(g, *budget);
                return SolveOutcome{"above", r.yes && r.witness ? madst::wiener_tree(*r.witness) : 0, r.yes,
                                    std::move(r.witness)};
            }
            return above_optimum(g);
        }
        if (g.vertex_count() <= oracle_vertex_limit())
            return run_algo("oracle", g, budget, td, threads, auto_max_k, auto_max_width);
        throw madst::AlgorithmUnavailable("no solver fits this instance; supply --algo explicitly");
    }
    throw madst::Error("unknown algorithm: " + algo);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimum Wiener index spanning trees: solvers, oracle, generators"};
    app.require_subcommand(1);

    // ---- solve ----
    std::string solve_file, solve_algo = "auto", td_file, emit_tree;
    std::optional<std::uint64_t> budget;
    bool as_json = false;
    int threads = 1, auto_max_k = 8, auto_max_width = 4;
    auto* solve = app.add_subcommand("solve", "compute a minimum Wiener index spanning tree");
    solve->add_option("graph", solve_file, "graph file (DIMACS-like)")->required();
    solve->add_option("--algo", solve_algo, "oracle|modular|treewidth|above|vi|auto")
        ->check(CLI::IsMember({"oracle", "modular", "treewidth", "above", "vi", "auto"}));
    solve->add_option("--budget", budget, "decision budget b");
    solve->add_option("--td", td_file, "tree decomposition file (PACE-like)");
    solve->add_option("--emit-tree", emit_tree, "write the witness tree here");
    solve->add_flag("--json", as_json, "machine-readable report");
    solve->add_option("--threads", threads, "solver-internal parallelism (results identical)");
    solve->add_option("--auto-max-k", auto_max_k, "auto: modular solver cutoff");
    solve->add_option("--auto-max-width", auto_max_width, "auto: treewidth solver cutoff");

    // ---- wiener ----
    std::string wiener_file;
    auto* wiener = app.add_subcommand("wiener", "print the Wiener index of a graph or tree file");
    wiener->add_option("file", wiener_file)->required();

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "instance generators");
    gen->require_subcommand(1);
    std::uint64_t seed = 1;
    std::string out_file;
    int q = 1, s = 1;
    bool planted = false;
    std::string x3c_out;
    auto* gx = gen->add_subcommand("x3c", "X3C hardness reduction instance (split graph + budget)");
    gx->add_option("--q", q, "universe size is 3q")->required();
    gx->add_option("--s", s, "number of sets")->required();
    gx->add_flag("--planted", planted, "embed a disjoint exact cover");
    gx->add_option("--seed", seed);
    gx->add_option("--out", out_file, "output graph file (default stdout)");
    gx->add_option("--x3c-out", x3c_out, "also write the raw X3C instance");

    int gn = 8, gk = 2, removals = 0, n_clique = 3, n_ind = 3;
    double gp = 0.5;
    auto* gr = gen->add_subcommand("random", "random connected graph");
    gr->add_option("--n", gn)->required();
    gr->add_option("--p", gp);
    gr->add_option("--seed", seed);
    gr->add_option("--out", out_file);
    auto* gc = gen->add_subcommand("cograph", "random connected cograph");
    gc->add_option("--n", gn)->required();
    gc->add_option("--seed", seed);
    gc->add_option("--out", out_file);
    auto* gt = gen->add_subcommand("ktree", "random partial k-tree");
    gt->add_option("--n", gn)->required();
    gt->add_option("--k", gk)->required();
    gt->add_option("--removals", removals);
    gt->add_option("--seed", seed);
    gt->add_option("--out", out_file);
    auto* gs = gen->add_subcommand("split", "random connected split graph");
    gs->add_option("--clique", n_clique)->required();
    gs->add_option("--ind", n_ind)->required();
    gs->add_option("--p", gp);
    gs->add_option("--seed", seed);
    gs->add_option("--out", out_file);

    // ---- check ----
    std::string check_graph, check_tree, check_td;
    auto* check = app.add_subcommand("check", "validate a (graph, tree) or (graph, decomposition) pair");
    check->add_option("graph", check_graph)->required();
    check->add_option("--tree", check_tree, "spanning tree file");
    check->add_option("--td", check_td, "tree decomposition file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) {
            auto gf = madst::read_graph_file(solve_file);
            if (!madst::is_connected(gf.graph)) throw madst::DisconnectedGraph();
            std::optional<madst::TreeDecomposition> td;
            if (!td_file.empty()) td = madst::read_tree_decomposition_file(td_file);
            auto start = std::chrono::steady_clock::now();
            auto outcome = run_algo(solve_algo, gf.graph, budget, td, threads, auto_max_k, auto_max_width);
            auto millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
            if (!emit_tree.empty()) {
                if (!outcome.witness) throw madst::Error("algorithm `" + outcome.algo + "` provides no witness tree");
                madst::write_tree_file(emit_tree, *outcome.witness);
            }
            if (as_json) {
                nlohmann::json j;
                j["algo"] = outcome.algo;
                j["n"] = gf.graph.vertex_count();
                j["m"] = gf.graph.edge_count();
                j["W"] = outcome.wiener;
                if (outcome.decision) j["decision"] = *outcome.decision ? "yes" : "no";
                if (budget) j["budget"] = *budget;
                j["millis"] = millis;
                if (outcome.witness) {
                    nlohmann::json edges = nlohmann::json::array();
                    for (auto [u, v] : outcome.witness->edges()) edges.push_back({u, v});
                    j["witness_edges"] = edges;
                }
                std::cout << j.dump() << '\n';
            } else {
                if (outcome.decision && !*outcome.decision && !outcome.witness) {
                    std::cout << "no\n";
                } else {
                    std::cout << "W=" << outcome.wiener;
                    if (outcome.decision) std::cout << ' ' << (*outcome.decision ? "yes" : "no");
                    std::cout << '\n';
                }
            }
            if (outcome.decision && !*outcome.decision) return 1;
            return 0;
        }
        if (*wiener) {
            auto gf = madst::read_graph_file(wiener_file);
            const Graph& g = gf.graph;
            if (!madst::is_connected(g)) throw madst::DisconnectedGraph();
            std::uint64_t w = (g.edge_count() == g.vertex_count() - 1)
                                  ? madst::wiener_tree(SpanningTree(g.vertex_count(), g.edges()))
                                  : madst::wiener_graph(g);
            std::cout << w << '\n';
            return 0;
        }
        if (*gen) {
            Graph g;
            std::optional<std::uint64_t> budget_comment;
            if (*gx) {
                auto inst = madst::gen_x3c(q, s, seed, planted);
                auto reduced = madst::reduce_x3c(inst);
                g = reduced.graph;
                budget_comment = reduced.budget;
                if (!x3c_out.empty()) {
                    std::ofstream xf(x3c_out);
                    madst::write_x3c(xf, inst);
                }
            } else if (*gr) {
                g = madst::gen_random_connected(gn, gp, seed);
            } else if (*gc) {
                g = madst::gen_cograph(gn, seed).graph;
            } else if (*gt) {
                g = madst::gen_partial_ktree(gn, gk, removals, seed);
            } else if (*gs) {
                g = madst::gen_split(n_clique, n_ind, gp, seed);
            }
            if (out_file.empty()) {
                madst::write_graph(std::cout, g, budget_comment);
            } else {
                madst::write_graph_file(out_file, g, budget_comment);
            }
            return 0;
        }
        if (*check) {
            auto gf = madst::read_graph_file(check_graph);
            std::vector<std::string> violations;
            if (!check_tree.empty()) {
                auto tf = madst::read_graph_file(check_tree);
                if (tf.graph.vertex_count() != gf.graph.vertex_count())
                    violations.push_back("tree has a different vertex count");
                try {
                    SpanningTree t(tf.graph.vertex_count(), tf.graph.edges());
                    if (!madst::spans(gf.graph, t)) violations.push_back("tree uses edges outside the graph");
                } catch (const madst::InvalidTree& e) {
                    violations.push_back(std::string("not a tree: ") + e.what());
                }
            }
            if (!check_td.empty()) {
                auto td = madst::read_tree_decomposition_file(check_td);
                auto v = madst::decomposition_violations(gf.graph, td);
                violations.insert(violations.end(), v.begin(), v.end());
            }
            if (check_tree.empty() && check_td.empty())
                throw madst::Error("check needs --tree or --td");
            if (violations.empty()) {
                std::cout << "ok\n";
                return 0;
            }
            for (const auto& v : violations) std::cout << "violation: " << v << '\n';
            return 2;
        }
    } catch (const madst::DisconnectedGraph& e) {
        std::cerr << "error: disconnected input: " << e.what() << '\n';
        return 2;
    } catch (const madst::TooLarge& e) {
        std::cerr << "error: instance too large: " << e.what() << '\n';
        return 2;
    } catch (const madst::ParseError& e) {
        std::cerr << "error: parse: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
