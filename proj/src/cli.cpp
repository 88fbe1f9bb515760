#include "twopart/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "twopart/io.hpp"
#include "twopart/oracle.hpp"
#include "twopart/solver.hpp"

namespace twopart::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Digraph load_digraph(const std::string& path) {
    try {
        return io::parse_digraph(read_file(path));
    } catch (const io::ParseError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

double millis_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

int emit(const SolveResult& r, double ms, bool json, std::ostream& out) {
    auto doc = io::to_document(r, ms);
    out << (json ? io::render_json(doc) : io::render_plain(doc));
    return r.yes ? kExitYes : kExitNo;
}

struct Options {
    std::string file, witness_file;
    std::size_t k1 = 0, k2 = 0, k = 2;
    bool reversed = false, json = false;
    std::size_t n = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
    bool min_in = false, single_source = false;
    std::vector<std::size_t> sizes;
    std::size_t trials = 0, nmax = 0;
};

int do_solve(const Options& o, std::ostream& out) {
    Instance inst{load_digraph(o.file), o.k1, o.k2};
    auto start = std::chrono::steady_clock::now();
    SolveResult r = o.reversed ? solve_reversed(inst) : solve(inst);
    return emit(r, millis_since(start), o.json, out);
}

int do_oracle(const Options& o, std::ostream& out) {
    Instance inst{load_digraph(o.file), o.k1, o.k2};
    if (inst.graph.order() > oracle::kMaxSolveOrder) {
        throw UsageError("oracle supports at most " + std::to_string(oracle::kMaxSolveOrder) + " vertices");
    }
    auto start = std::chrono::steady_clock::now();
    SolveResult r = oracle::brute_force_solve(inst);
    return emit(r, millis_since(start), o.json, out);
}

int do_verify(const Options& o, std::ostream& out) {
    Digraph d = load_digraph(o.file);
    io::ResultDocument doc;
    try {
        doc = io::parse_result(read_file(o.witness_file));
    } catch (const io::ParseError& e) {
        throw UsageError(o.witness_file + ": " + e.what());
    }
    if (!doc.yes) throw UsageError(o.witness_file + ": document carries no witness (answer NO)");
    Instance inst{o.reversed ? reverse(d) : d, o.k1, o.k2};
    VerifyReport report = verify(inst, io::to_partition(doc));
    if (report.accepted()) {
        out << "valid\n";
        return kExitYes;
    }
    out << "invalid\n";
    for (const auto& v : report.violations) out << "  " << v << '\n';
    return kExitNo;
}

int do_gen(const Options& o, std::ostream& out) {
    if (o.p < 0.0 || o.p > 1.0) throw UsageError("--p must lie in [0, 1]");
    oracle::GeneratorConfig cfg;
    cfg.n = o.n;
    cfg.p = o.p;
    cfg.seed = o.seed;
    cfg.min_in_degree_1 = o.min_in;
    cfg.single_source = o.single_source;
    out << io::render_digraph(oracle::generate(cfg));
    return kExitYes;
}

int do_bench(const Options& o, std::ostream& out) {
    out << "n,m,k1,k2,answer,elapsed_ms\n";
    for (std::size_t n : o.sizes) {
        oracle::GeneratorConfig cfg;
        cfg.n = n;
        cfg.p = n > 1 ? std::min(1.0, 4.0 / static_cast<double>(n - 1)) : 0.0;
        cfg.seed = o.seed;
        cfg.min_in_degree_1 = true;
        Instance inst{oracle::generate(cfg), o.k, o.k};
        auto start = std::chrono::steady_clock::now();
        SolveResult r = solve(inst);
        double ms = millis_since(start);
        out << n << ',' << inst.graph.size() << ',' << o.k << ',' << o.k << ',' << (r.yes ? "YES" : "NO") << ','
            << ms << '\n';
    }
    return kExitYes;
}

int do_fuzz(const Options& o, std::ostream& out) {
    if (o.nmax < 1 || o.nmax > oracle::kMaxSolveOrder) {
        throw UsageError("--nmax must lie in [1, " + std::to_string(oracle::kMaxSolveOrder) + "]");
    }
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<std::size_t> pick_n(1, o.nmax), pick_k(0, 4);
    std::uniform_real_distribution<double> pick_p(0.05, 0.6);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t t = 0; t < o.trials; ++t) {
        oracle::GeneratorConfig cfg;
        cfg.n = pick_n(rng);
        cfg.p = pick_p(rng);
        cfg.seed = rng();
        cfg.min_in_degree_1 = coin(rng);
        Instance inst{oracle::generate(cfg), pick_k(rng), pick_k(rng)};
        SolveResult got = solve(inst);
        SolveResult want = oracle::brute_force_solve(inst);
        bool sound = !got.yes || (got.witness && verify(inst, *got.witness).accepted());
        if (got.yes != want.yes || !sound) {
            out << "mismatch at trial " << t << ": k1 " << inst.k1 << " k2 " << inst.k2 << " solve "
                << (got.yes ? "YES" : "NO") << " oracle " << (want.yes ? "YES" : "NO")
                << (sound ? "" : " (witness rejected)") << '\n'
                << io::render_digraph(inst.graph);
            return 1;
        }
    }
    out << "trials " << o.trials << " mismatches 0\n";
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decide whether a digraph splits into an out-branching part and a min-in-degree-1 part"};
    app.require_subcommand(1);
    Options o;

    auto* solve_cmd = app.add_subcommand("solve", "Decide the instance");
    solve_cmd->add_option("file", o.file, "Edge-list file")->required();
    solve_cmd->add_option("--k1", o.k1, "Minimum size of the branching part")->required();
    solve_cmd->add_option("--k2", o.k2, "Minimum size of the in-degree part")->required();
    solve_cmd->add_flag("--reversed", o.reversed, "Ask for an in-branching instead");
    solve_cmd->add_flag("--json", o.json, "Emit JSON");

    auto* verify_cmd = app.add_subcommand("verify", "Check a witness document");
    verify_cmd->add_option("file", o.file, "Edge-list file")->required();
    verify_cmd->add_option("witness", o.witness_file, "Result document")->required();
    verify_cmd->add_option("--k1", o.k1)->required();
    verify_cmd->add_option("--k2", o.k2)->required();
    verify_cmd->add_flag("--reversed", o.reversed, "Witness was produced with solve --reversed");

    auto* oracle_cmd = app.add_subcommand("oracle", "Decide by exhaustive search (small inputs)");
    oracle_cmd->add_option("file", o.file, "Edge-list file")->required();
    oracle_cmd->add_option("--k1", o.k1)->required();
    oracle_cmd->add_option("--k2", o.k2)->required();
    oracle_cmd->add_flag("--json", o.json, "Emit JSON");

    auto* gen_cmd = app.add_subcommand("gen", "Emit a random digraph");
    gen_cmd->add_option("--n", o.n)->required();
    gen_cmd->add_option("--p", o.p)->required();
    gen_cmd->add_option("--seed", o.seed)->required();
    auto* min_in_flag = gen_cmd->add_flag("--min-in-degree-1", o.min_in);
    auto* single_flag = gen_cmd->add_flag("--single-source", o.single_source);
    min_in_flag->excludes(single_flag);

    auto* bench_cmd = app.add_subcommand("bench", "Time solve on random digraphs with about 4n arcs");
    bench_cmd->add_option("--sizes", o.sizes, "Comma-separated orders")->required()->delimiter(',');
    bench_cmd->add_option("--k", o.k, "k1 = k2 = k")->required();
    bench_cmd->add_option("--seed", o.seed)->required();

    auto* fuzz_cmd = app.add_subcommand("fuzz", "Compare solve against the exhaustive oracle");
    fuzz_cmd->add_option("--trials", o.trials)->required();
    fuzz_cmd->add_option("--nmax", o.nmax)->required();
    fuzz_cmd->add_option("--seed", o.seed)->required();

    try {
        std::vector<std::string> reversed_args(args.rbegin(), args.rend());
        app.parse(reversed_args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return kExitError;
    }

    try {
        if (*solve_cmd) return do_solve(o, out);
        if (*verify_cmd) return do_verify(o, out);
        if (*oracle_cmd) return do_oracle(o, out);
        if (*gen_cmd) return do_gen(o, out);
        if (*bench_cmd) return do_bench(o, out);
        if (*fuzz_cmd) return do_fuzz(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

}  // namespace twopart::cli
