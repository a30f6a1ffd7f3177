// dress: DRESS / delta-k fingerprint toolkit
//
// Inputs are graph6 files or generator expressions ("gen:cycle:8",
// "gen:cfi:K5:twisted").  Exit codes: 0 success (including NOT-SEPARATED
// and INDISTINGUISHABLE), 2 input or parse error, 3 compute error
// (non-convergence, memory guard).

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dress/bench.hpp"
#include "dress/delta.hpp"
#include "dress/generators.hpp"
#include "dress/graph6.hpp"
#include "dress/kernels.hpp"
#include "dress/solver.hpp"
#include "dress/wl.hpp"

namespace {

using namespace dress;

bool is_gen_expr(const std::string& s) { return s.rfind("gen:", 0) == 0; }

Graph resolve_input(const std::string& spec, std::size_t index) {
    if (is_gen_expr(spec)) return generate(parse_generator_expr(spec));
    auto graphs = load_family(spec);
    if (graphs.empty()) throw std::invalid_argument(spec + ": no graphs in file");
    if (index == 0) {
        if (graphs.size() == 1) return graphs[0];
        throw std::invalid_argument(spec + ": holds " + std::to_string(graphs.size()) +
                                    " graphs; pick one with --index");
    }
    if (index > graphs.size())
        throw std::invalid_argument(spec + ": index " + std::to_string(index) +
                                    " out of range (1.." + std::to_string(graphs.size()) + ")");
    return graphs[index - 1];
}

std::vector<Graph> resolve_family(const std::string& spec, bool skip_bad) {
    if (is_gen_expr(spec)) return {generate(parse_generator_expr(spec))};
    std::size_t bad = 0;
    auto graphs = load_family(spec, skip_bad, &bad);
    if (bad > 0) std::cerr << spec << ": skipped " << bad << " malformed lines\n";
    return graphs;
}

std::string hex32(const Sha256::Digest& d) { return hex_digest(d); }

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
    out << text;
}

const StepKernel* pick_kernel(const std::string& name) {
    if (name.empty()) return nullptr;  // runtime preference
    const StepKernel* k = kernel_by_name(name);
    if (!k) {
        std::string have;
        for (const auto* a : available_kernels()) {
            if (!have.empty()) have += ", ";
            have += a->name;
        }
        throw std::invalid_argument("unknown kernel '" + name + "' (available: " + have + ")");
    }
    return k;
}

struct CommonSolverFlags {
    double tol = 1e-6;
    int max_iter = 100;
    double init = 1.0;
    std::string kernel;
    int threads = 1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--tol", tol, "convergence tolerance (default 1e-6)");
        cmd->add_option("--max-iter", max_iter, "iteration cap (default 100)");
        cmd->add_option("--init", init, "initial edge value (default 1.0)");
        cmd->add_option("--kernel", kernel, "step kernel: scalar, avx2, neon (default: best)");
        cmd->add_option("--threads", threads, "worker threads (default 1)");
    }
    SolverConfig solver() const {
        SolverConfig s;
        s.tol = tol;
        s.max_iter = max_iter;
        s.init = init;
        s.kernel = pick_kernel(kernel);
        return s;
    }
};

ReportFormat parse_format(const std::string& f) {
    if (f == "json") return ReportFormat::Json;
    if (f == "csv") return ReportFormat::Csv;
    throw std::invalid_argument("unknown format '" + f + "' (json or csv)");
}

int run(int argc, char** argv) {
    CLI::App app{"DRESS / delta-k graph fingerprints"};
    app.require_subcommand(1);

    // --- fingerprint -----------------------------------------------------
    auto* fp_cmd = app.add_subcommand("fingerprint", "fingerprint one graph");
    std::string fp_input, fp_out, fp_emit = "bin";
    std::size_t fp_index = 0;
    int fp_k = 1;
    CommonSolverFlags fp_solver;
    fp_cmd->add_option("input", fp_input, "graph6 file or gen: expression")->required();
    fp_cmd->add_option("--k", fp_k, "deletion depth (default 1)");
    fp_cmd->add_option("--index", fp_index, "1-based graph index for multi-graph files");
    fp_cmd->add_option("--out", fp_out, "write fingerprint to this file");
    fp_cmd->add_option("--emit", fp_emit,
                       "encoding: bin (needs --out) or json (stdout unless --out)");
    fp_solver.attach(fp_cmd);
    fp_cmd->callback([&] {
        if (fp_emit != "bin" && fp_emit != "json")
            throw std::invalid_argument("unknown --emit '" + fp_emit + "' (bin or json)");
        Graph g = resolve_input(fp_input, fp_index);
        DeltaConfig cfg;
        cfg.k = fp_k;
        cfg.solver = fp_solver.solver();
        cfg.threads = fp_solver.threads;
        DeltaResult res = delta_fingerprint(g, cfg);
        bool json_stdout = fp_emit == "json" && (fp_out.empty() || fp_out == "-");
        if (!json_stdout) {
            // keep stdout pure when it carries the JSON itself
            std::cout << "n=" << res.fp.n << " m=" << g.num_edges() << " k=" << res.fp.k
                      << " rows=" << res.fp.num_rows() << " total_length=" << res.fp.total_length()
                      << " iterations=" << res.max_iterations << "\n";
            std::cout << "multiset_sha256=" << hex32(res.digests.multiset_sha256) << "\n";
            std::cout << "histogram_sha256=" << hex32(res.digests.histogram_sha256) << "\n";
        }
        if (fp_emit == "json") {
            nlohmann::ordered_json j;
            j["k"] = res.fp.k;
            j["n"] = res.fp.n;
            j["row_lengths"] = res.fp.row_lengths;
            j["values"] = res.fp.values;
            j["multiset_sha256"] = hex32(res.digests.multiset_sha256);
            j["histogram_sha256"] = hex32(res.digests.histogram_sha256);
            write_text(fp_out, j.dump(2) + "\n");
        } else if (!fp_out.empty()) {
            write_fingerprint(fp_out, res.fp, res.digests);
        }
    });

    // --- compare ---------------------------------------------------------
    auto* cmp_cmd = app.add_subcommand("compare", "compare two graphs, escalating depth");
    std::string cmp_a, cmp_b;
    std::size_t cmp_ia = 0, cmp_ib = 0;
    int cmp_k = 1, cmp_escalate = -1;
    double cmp_tau = 1e-5;
    CommonSolverFlags cmp_solver;
    cmp_cmd->add_option("a", cmp_a, "first graph")->required();
    cmp_cmd->add_option("b", cmp_b, "second graph")->required();
    cmp_cmd->add_option("--k", cmp_k, "starting deletion depth (default 1)");
    cmp_cmd->add_option("--escalate-to", cmp_escalate, "maximum depth (default: no escalation)");
    cmp_cmd->add_option("--tau", cmp_tau, "separation tolerance (default 1e-5)");
    cmp_cmd->add_option("--index-a", cmp_ia, "1-based index into file a");
    cmp_cmd->add_option("--index-b", cmp_ib, "1-based index into file b");
    cmp_solver.attach(cmp_cmd);
    cmp_cmd->callback([&] {
        Graph ga = resolve_input(cmp_a, cmp_ia);
        Graph gb = resolve_input(cmp_b, cmp_ib);
        DeltaConfig cfg;
        cfg.k = cmp_k;
        cfg.solver = cmp_solver.solver();
        cfg.threads = cmp_solver.threads;
        int k_max = cmp_escalate < cmp_k ? cmp_k : cmp_escalate;
        EscalateResult er = escalate(ga, gb, cfg, k_max, cmp_tau);
        std::ostringstream linf;
        if (er.comparison.linf)
            linf << "L_inf=" << std::scientific << std::setprecision(6) << *er.comparison.linf;
        else
            linf << "L_inf=n/a (length mismatch)";
        if (er.separated)
            std::cout << "SEPARATED at k=" << er.final_k << " " << linf.str() << "\n";
        else
            std::cout << "NOT-SEPARATED through k=" << er.final_k << " " << linf.str() << "\n";
    });

    // --- scan ------------------------------------------------------------
    auto* scan_cmd = app.add_subcommand("scan", "collision scan over a family file");
    std::string scan_file, scan_report, scan_format = "json", scan_name;
    bool scan_skip_bad = false;
    ScanOptions scan_opt;
    CommonSolverFlags scan_solver;
    scan_cmd->add_option("family", scan_file, "graph6 family file")->required();
    scan_cmd->add_option("--k", scan_opt.k, "deletion depth (default 1)");
    scan_cmd->add_option("--escalate-to", scan_opt.escalate_to,
                         "escalate collision groups up to this depth");
    scan_cmd->add_option("--tau", scan_opt.tau, "separation tolerance (default 1e-5)");
    scan_cmd->add_option("--audit-limit", scan_opt.full_audit_limit,
                         "all-pairs audit when family size is at most this (default 500)");
    scan_cmd->add_option("--report", scan_report, "write report here instead of stdout");
    scan_cmd->add_option("--format", scan_format, "json or csv (default json)");
    scan_cmd->add_option("--name", scan_name, "family name in the report (default: file path)");
    scan_cmd->add_flag("--skip-bad", scan_skip_bad, "skip malformed graph6 lines");
    scan_solver.attach(scan_cmd);
    scan_cmd->callback([&] {
        auto graphs = resolve_family(scan_file, scan_skip_bad);
        scan_opt.solver = scan_solver.solver();
        scan_opt.threads = scan_solver.threads;
        FamilyReport rep =
            scan_family(graphs, scan_name.empty() ? scan_file : scan_name, scan_opt);
        write_text(scan_report, emit_report(rep, parse_format(scan_format)));
    });

    // --- margins ---------------------------------------------------------
    auto* mg_cmd = app.add_subcommand("margins", "minimum pairwise distance in a family");
    std::string mg_file, mg_report, mg_format = "json", mg_name;
    std::vector<std::string> mg_exclude;
    bool mg_skip_bad = false;
    MarginOptions mg_opt;
    CommonSolverFlags mg_solver;
    mg_cmd->add_option("family", mg_file, "graph6 family file")->required();
    mg_cmd->add_option("--k", mg_opt.k, "deletion depth (default 1)");
    mg_cmd->add_option("--sample", mg_opt.sample_pairs,
                       "pairs to sample above the exact threshold (default 2000)");
    mg_cmd->add_option("--sample-threshold", mg_opt.sample_threshold,
                       "exact all-pairs up to this many graphs (default 200)");
    mg_cmd->add_option("--seed", mg_opt.seed, "sampling seed (default 0)");
    mg_cmd->add_option("--exclude", mg_exclude,
                       "1-based pair i,j to exclude (repeatable)");
    mg_cmd->add_option("--report", mg_report, "write report here instead of stdout");
    mg_cmd->add_option("--format", mg_format, "json or csv (default json)");
    mg_cmd->add_option("--name", mg_name, "family name in the report");
    mg_cmd->add_flag("--skip-bad", mg_skip_bad, "skip malformed graph6 lines");
    mg_solver.attach(mg_cmd);
    mg_cmd->callback([&] {
        auto graphs = resolve_family(mg_file, mg_skip_bad);
        mg_opt.solver = mg_solver.solver();
        mg_opt.threads = mg_solver.threads;
        for (const auto& ex : mg_exclude) {
            auto comma = ex.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("--exclude expects i,j");
            mg_opt.exclude.push_back({std::stoull(ex.substr(0, comma)),
                                      std::stoull(ex.substr(comma + 1))});
        }
        MarginReport rep =
            margin_analysis(graphs, mg_name.empty() ? mg_file : mg_name, mg_opt);
        write_text(mg_report, emit_report(rep, parse_format(mg_format)));
    });

    // --- rounding --------------------------------------------------------
    auto* rd_cmd = app.add_subcommand("rounding", "unique fingerprints after decimal rounding");
    std::string rd_file, rd_report, rd_format = "json", rd_name, rd_digits = "6:14";
    bool rd_skip_bad = false;
    RoundingOptions rd_opt;
    CommonSolverFlags rd_solver;
    rd_cmd->add_option("family", rd_file, "graph6 family file")->required();
    rd_cmd->add_option("--k", rd_opt.k, "deletion depth (default 1)");
    rd_cmd->add_option("--digits", rd_digits, "digit range lo:hi (default 6:14)");
    rd_cmd->add_option("--report", rd_report, "write report here instead of stdout");
    rd_cmd->add_option("--format", rd_format, "json or csv (default json)");
    rd_cmd->add_option("--name", rd_name, "family name in the report");
    rd_cmd->add_flag("--skip-bad", rd_skip_bad, "skip malformed graph6 lines");
    rd_solver.attach(rd_cmd);
    rd_cmd->callback([&] {
        auto graphs = resolve_family(rd_file, rd_skip_bad);
        rd_opt.solver = rd_solver.solver();
        rd_opt.threads = rd_solver.threads;
        auto colon = rd_digits.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("--digits expects lo:hi");
        rd_opt.min_digits = std::stoi(rd_digits.substr(0, colon));
        rd_opt.max_digits = std::stoi(rd_digits.substr(colon + 1));
        RoundingReport rep =
            rounding_stability(graphs, rd_name.empty() ? rd_file : rd_name, rd_opt);
        write_text(rd_report, emit_report(rep, parse_format(rd_format)));
    });

    // --- wl --------------------------------------------------------------
    auto* wl_cmd = app.add_subcommand("wl", "Weisfeiler-Leman distinguishability oracle");
    std::string wl_a, wl_b, wl_methodname = "1wl";
    std::size_t wl_ia = 0, wl_ib = 0;
    wl_cmd->add_option("a", wl_a, "first graph")->required();
    wl_cmd->add_option("b", wl_b, "second graph")->required();
    wl_cmd->add_option("--method", wl_methodname, "1wl, owl2, owl3, fwl2, fwl3 (default 1wl)");
    wl_cmd->add_option("--index-a", wl_ia, "1-based index into file a");
    wl_cmd->add_option("--index-b", wl_ib, "1-based index into file b");
    wl_cmd->callback([&] {
        Graph ga = resolve_input(wl_a, wl_ia);
        Graph gb = resolve_input(wl_b, wl_ib);
        WlMethod m = parse_wl_method(wl_methodname);
        WlResult res = wl_distinguish(ga, gb, m);
        std::cout << (res.distinguished ? "DISTINGUISHED" : "INDISTINGUISHABLE")
                  << " method=" << wl_method_name(m) << " rounds=" << res.rounds << "\n";
    });

    // --- generate --------------------------------------------------------
    auto* gen_cmd = app.add_subcommand("generate", "emit a generated graph as graph6");
    std::string gen_spec, gen_out;
    gen_cmd->add_option("spec", gen_spec, "generator expression (gen:...)")->required();
    gen_cmd->add_option("--out", gen_out, "write graph6 here instead of stdout");
    gen_cmd->callback([&] {
        Graph g = generate(parse_generator_expr(gen_spec));
        write_text(gen_out, encode_graph6(g) + "\n");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const dress::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
