// Command-line front end: graph invariants (alpha, theta), the exhaustive
// ratio search, representation verification, and the sequential-measurement
// simulation, with JSON/CSV/text reports.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "qcg/alpha.hpp"
#include "qcg/catalog.hpp"
#include "qcg/experiment.hpp"
#include "qcg/io.hpp"
#include "qcg/scenario.hpp"
#include "qcg/search.hpp"
#include "qcg/theta.hpp"

namespace {

struct GraphInput {
    std::string catalog_name;
    std::string graph6;
    std::string file;

    qcg::Graph resolve() const {
        int given = !catalog_name.empty() + !graph6.empty() + !file.empty();
        if (given != 1)
            throw std::invalid_argument("give exactly one of --catalog, --graph6, --file");
        if (!catalog_name.empty()) {
            auto entries = qcg::catalog();
            if (const qcg::Graph* g = qcg::catalog_find(entries, catalog_name)) return *g;
            throw std::invalid_argument("unknown catalog graph: " + catalog_name);
        }
        if (!graph6.empty()) return qcg::parse_graph6(graph6);
        return qcg::load_graph_json(file);
    }
};

void add_graph_options(CLI::App* cmd, GraphInput& in) {
    cmd->add_option("--catalog", in.catalog_name, "built-in graph name (see `qcg catalog`)");
    cmd->add_option("--graph6", in.graph6, "graph as a graph6 string");
    cmd->add_option("--file", in.file, "edge-list JSON file {\"n\":..., \"edges\":[[u,v],...]}");
}

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("QCG_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string set_to_string(std::uint32_t mask) {
    std::string s = "{";
    for (int v : qcg::set_to_vertices(mask)) {
        if (s.size() > 1) s += ",";
        s += std::to_string(v + 1);  // 1-based in reports
    }
    return s + "}";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph invariants of quantum contextuality: alpha, Lovasz theta, "
                 "ratio search, and the Fisher-9 sequential-measurement simulation"};
    app.require_subcommand(1);
    bool error_json = false;
    app.add_flag("--error-json", error_json, "report errors as JSON on stderr");

    GraphInput alpha_in, theta_in;
    bool alpha_all_sets = false;
    double gap_tol = 1e-8;

    auto* cmd_alpha = app.add_subcommand("alpha", "independence number (noncontextual bound)");
    add_graph_options(cmd_alpha, alpha_in);
    cmd_alpha->add_flag("--all-sets", alpha_all_sets, "also list every maximum independent set");

    auto* cmd_theta = app.add_subcommand("theta", "Lovasz number (quantum bound), certified interval");
    add_graph_options(cmd_theta, theta_in);
    cmd_theta->add_option("--gap-tol", gap_tol, "absolute gap tolerance")->check(CLI::PositiveNumber);

    int search_n = 5;
    bool no_prune = false;
    int threads_flag = 0;
    std::string search_stream, output_path;
    auto* cmd_search = app.add_subcommand("search", "maximize theta/alpha over connected n-vertex graphs");
    cmd_search->add_option("--n", search_n, "vertex count (3..10)");
    cmd_search->add_option("--gap-tol", gap_tol, "absolute SDP gap tolerance")->check(CLI::PositiveNumber);
    cmd_search->add_flag("--no-prune", no_prune, "disable the clique-cover pruning bound");
    cmd_search->add_option("--threads", threads_flag, "worker threads (default: QCG_THREADS or all cores)");
    cmd_search->add_option("--stream", search_stream, "read graph6 lines from this file instead of enumerating");
    cmd_search->add_option("-o,--output", output_path, "write the result JSON here (default stdout)");

    std::string verify_catalog = "f9", verify_file;
    auto* cmd_verify = app.add_subcommand("verify", "check an orthonormal representation and the basis cover");
    cmd_verify->add_option("--catalog", verify_catalog, "built-in scenario (f9 or kcbs)");
    cmd_verify->add_option("--file", verify_file, "representation JSON file to verify instead");

    std::string sim_catalog = "f9", sim_format = "text";
    long long shots = 1000000;
    std::uint64_t seed = 1;
    double mix = 0.0, dark = 0.0;
    auto* cmd_sim = app.add_subcommand("simulate", "Monte Carlo run of the two-point sequential protocol");
    cmd_sim->add_option("--catalog", sim_catalog, "scenario name (f9)");
    cmd_sim->add_option("--shots", shots, "shots per measurement setting")->check(CLI::PositiveNumber);
    cmd_sim->add_option("--seed", seed, "RNG seed");
    cmd_sim->add_option("--mix", mix, "white-noise mixing weight in [0,1]");
    cmd_sim->add_option("--dark", dark, "dark-count rate in [0,1]");
    cmd_sim->add_option("-o,--output", output_path, "write JSON/CSV here (default stdout)");
    cmd_sim->add_option("--format", sim_format, "json|csv|text")->check(CLI::IsMember({"json", "csv", "text"}));

    auto* cmd_catalog = app.add_subcommand("catalog", "list built-in graphs and scenarios");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_alpha->parsed()) {
            qcg::Graph g = alpha_in.resolve();
            auto res = qcg::independence_number(g, alpha_all_sets);
            std::cout << "alpha = " << res.alpha << "\n";
            std::cout << "witness = " << set_to_string(res.witness) << "\n";
            if (res.all_maximum_sets) {
                std::cout << "maximum independent sets (" << res.all_maximum_sets->size() << "):\n";
                for (auto s : *res.all_maximum_sets) std::cout << "  " << set_to_string(s) << "\n";
            }
        } else if (cmd_theta->parsed()) {
            qcg::Graph g = theta_in.resolve();
            auto res = qcg::lovasz_theta(g, gap_tol);
            std::ostringstream line;
            line.precision(9);
            line << std::fixed << "[" << res.lower << ", " << res.upper << "]";
            if (auto cf = qcg::recognize_algebraic(0.5 * (res.lower + res.upper)))
                line << " = " << cf->text;
            std::cout << "theta in " << line.str() << "  (" << res.iterations << " iterations)\n";
            if (!res.converged) {
                std::cerr << "warning: gap tolerance not reached\n";
                return 2;
            }
        } else if (cmd_search->parsed()) {
            int threads = resolve_threads(threads_flag);
            qcg::SearchResult res;
            if (!search_stream.empty()) {
                std::ifstream in(search_stream);
                if (!in) throw std::runtime_error("cannot open " + search_stream);
                res = qcg::max_ratio_search_stream(in, gap_tol, !no_prune, threads);
            } else {
                res = qcg::max_ratio_search(search_n, gap_tol, !no_prune, threads);
            }
            std::ostringstream row;
            row.precision(9);
            row << std::fixed << "n=" << res.n << "  max theta/alpha in [" << res.best_ratio_lower
                << ", " << res.best_ratio_upper << "]";
            if (auto cf = qcg::recognize_algebraic(res.best_ratio_lower, 1e-6))
                row << " = " << cf->text;
            row << "  argmax classes: " << res.argmax_graphs.size()
                << "  scanned: " << res.graphs_scanned << "  sdp solves: " << res.sdp_solves;
            std::cerr << row.str() << "\n";
            write_output(output_path, qcg::search_result_to_json(res).dump(2) + "\n");
            if (!res.all_converged) return 2;
        } else if (cmd_verify->parsed()) {
            qcg::OrthonormalRepresentation rep;
            if (!verify_file.empty()) {
                rep = qcg::load_representation_json(verify_file);
            } else if (verify_catalog == "f9") {
                rep = qcg::f9_scenario().representation;
            } else if (verify_catalog == "kcbs") {
                rep = qcg::kcbs_scenario().representation;
            } else {
                throw std::invalid_argument("unknown scenario: " + verify_catalog);
            }
            auto rpt = qcg::verify_representation(rep);
            for (const auto& chk : rpt.edge_checks)
                std::cout << "edge {" << chk.u + 1 << "," << chk.v + 1 << "} orthogonal: "
                          << (chk.orthogonal ? "pass" : "FAIL") << "\n";
            std::cout << "handle sum = ";
            if (rpt.exact) std::cout << rpt.handle_sum_exact.str() << " = ";
            std::cout << rpt.handle_sum << "\n";
            std::cout << "theta interval = [" << rpt.theta.lower << ", " << rpt.theta.upper << "]  "
                      << (rpt.handle_sum_in_theta_interval ? "contains handle sum" : "MISMATCH") << "\n";
            bool ok = rpt.all_edges_orthogonal && rpt.handle_sum_in_theta_interval;
            if (verify_file.empty() && verify_catalog == "f9") {
                auto cover = qcg::verify_basis_cover(qcg::extended_vectors(),
                                                     qcg::orthogonality_graph(qcg::extended_vectors()));
                std::cout << "basis cliques:";
                for (const auto& c : cover.basis_cliques) {
                    std::cout << " {";
                    for (std::size_t i = 0; i < c.size(); ++i)
                        std::cout << (i ? "," : "") << c[i] + 1;
                    std::cout << "}";
                }
                std::cout << "\nvertices 1..9 covered: " << (cover.all_first_nine_covered ? "pass" : "FAIL")
                          << "\nrestriction to 1..9 equals f9: "
                          << (cover.restriction_is_f9 ? "pass" : "FAIL") << "\n";
                ok = ok && cover.all_first_nine_covered && cover.restriction_is_f9;
            }
            std::cout << (ok ? "verification passed" : "verification FAILED") << "\n";
            if (!ok) return 1;
        } else if (cmd_sim->parsed()) {
            if (sim_catalog != "f9")
                throw std::invalid_argument("simulate supports the f9 scenario only");
            auto sc = qcg::f9_scenario();
            auto rec = qcg::run_protocol(sc, shots, qcg::NoiseModel{dark, mix}, seed);
            if (sim_format == "json") {
                write_output(output_path, qcg::experiment_record_to_json(rec).dump(2) + "\n");
            } else if (sim_format == "csv") {
                write_output(output_path, qcg::epsilon_table_csv(rec.epsilons));
            } else {
                std::ostringstream out;
                out.precision(6);
                out << std::fixed << "S = " << rec.s.p << " +- " << rec.s.sigma() << "\n"
                    << "noncontextual bound = " << rec.noncontextual_bound << "\n"
                    << "violation = " << rec.violation_sigmas << " standard deviations\n"
                    << "epsilon table (pair  eps_second_0 +- err  eps_second_1 +- err):\n";
                for (const auto& e : rec.epsilons)
                    out << "  " << qcg::pair_label(e.edge) << "  " << e.eps_second_0.p << " +- "
                        << e.eps_second_0.sigma() << "  " << e.eps_second_1.p << " +- "
                        << e.eps_second_1.sigma() << "\n";
                write_output(output_path, out.str());
            }
        } else if (cmd_catalog->parsed()) {
            for (const auto& e : qcg::catalog())
                std::cout << e.name << ": n=" << e.graph.n << ", edges=" << e.graph.edge_count()
                          << "  -- " << e.notes << "\n";
            std::cout << "scenarios: f9 (simulate, verify), kcbs (verify)\n";
        }
    } catch (const std::exception& ex) {
        if (error_json)
            std::cerr << qcg::json{{"error", ex.what()}}.dump() << "\n";
        else
            std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
