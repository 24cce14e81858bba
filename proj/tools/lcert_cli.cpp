#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lcert/basic.hpp"
#include "lcert/gadgets.hpp"
#include "lcert/generators.hpp"
#include "lcert/hfree.hpp"
#include "lcert/oracles.hpp"
#include "lcert/paths.hpp"

using namespace lc;
using nlohmann::json;

namespace {

// exit codes
constexpr int kAccept = 0;
constexpr int kReject = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SchemeOptions {
    std::string name;
    int k = 2;
    int q = 3;
    std::string eps = "1/2";
    std::string h_file;
    VertexId center = 0;
    int depth = 1;
    std::string mode = "induced";
};

void add_scheme_options(CLI::App* cmd, SchemeOptions& o)
{
    cmd->add_option("--scheme", o.name,
                    "acyclicity, kk_free, centered_h, p4k, p3k, p143k, h_free, h_free_subgraph")
        ->required();
    cmd->add_option("--k", o.k, "verification radius");
    cmd->add_option("--q", o.q, "clique size for kk_free");
    cmd->add_option("--eps", o.eps, "layer exponent for p3k: 1/2, 1/3 or log");
    cmd->add_option("--h-file", o.h_file, "pattern graph for h_free and centered_h");
    cmd->add_option("--center", o.center, "designated pattern vertex for centered_h");
    cmd->add_option("--depth", o.depth, "radius d for centered_h");
    cmd->add_option("--mode", o.mode, "induced or subgraph");
}

EmbedMode parse_mode(const std::string& s)
{
    if (s == "induced")
        return EmbedMode::Induced;
    if (s == "subgraph")
        return EmbedMode::Subgraph;
    throw UsageError("unknown mode " + s);
}

LabeledGraph load_pattern(const SchemeOptions& o)
{
    if (o.h_file.empty())
        throw UsageError("--h-file is required for " + o.name);
    return load_graph(o.h_file);
}

CertScheme make_scheme(const SchemeOptions& o)
{
    if (o.name == "acyclicity")
        return acyclicity_scheme();
    if (o.name == "kk_free")
        return kk_free_scheme(o.q);
    if (o.name == "centered_h")
        return centered_h_scheme(load_pattern(o), o.center, o.depth);
    if (o.name == "p4k")
        return p4k_scheme(o.k);
    if (o.name == "p3k")
        return p3k_scheme(o.k, Epsilon::parse(o.eps));
    if (o.name == "p143k")
        return p143k_scheme(o.k);
    if (o.name == "h_free")
        return h_free_scheme(load_pattern(o), o.k, parse_mode(o.mode));
    if (o.name == "h_free_subgraph")
        return h_free_scheme(load_pattern(o), o.k, EmbedMode::Subgraph);
    throw UsageError("unknown scheme " + o.name);
}

std::string read_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path);
    if (!f)
        throw ParseError("cannot write " + path);
    f << text;
}

json size_json(const SizeReport& r)
{
    return {{"max_bits", r.max_bits}, {"total_bits", r.total_bits}, {"field_max", r.field_max},
            {"field_total", r.field_total}};
}

json verdict_json(const Verdict& v)
{
    json rej = json::array();
    for (auto x : v.rejecting)
        rej.push_back({{"vertex", x}, {"reason", v.reasons.at(x)}});
    return {{"accepted", v.accepted}, {"rejecting", rej}};
}

void print_verdict(const Verdict& v, const std::string& scheme, std::size_t n)
{
    std::cout << "scheme " << scheme << " n " << n << " verdict " << (v.accepted ? "ACCEPT" : "REJECT") << '\n';
    for (auto x : v.rejecting)
        std::cout << "reject " << x << ' ' << v.reasons.at(x) << '\n';
}

void print_size(const SizeReport& r)
{
    std::cout << "max_bits " << r.max_bits << "\ntotal_bits " << r.total_bits << '\n';
    for (auto& [f, b] : r.field_max)
        std::cout << "field " << f << " max " << b << " total " << r.field_total.at(f) << '\n';
}

LabeledGraph family_graph(const std::string& family, int n, double p, std::mt19937_64& rng)
{
    if (family == "gnp")
        return random_gnp(n, p, rng);
    if (family == "tree")
        return random_tree(n, rng);
    if (family == "sparse")
        return random_sparse(n, n / 4, rng);
    throw UsageError("unknown family " + family);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"local certification toolkit"};
    app.require_subcommand(1);
    std::string format = "text";
    unsigned jobs = 0;
    app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--jobs", jobs, "worker threads (0 = all cores)");

    // certify
    SchemeOptions cs;
    std::string graph_path, dump_path, out_dir;
    auto* certify = app.add_subcommand("certify", "run the honest prover and the verifier");
    add_scheme_options(certify, cs);
    certify->add_option("--graph", graph_path, "edge-list graph file")->required();
    certify->add_option("--dump", dump_path, "write the certificates here");
    certify->add_option("--out-dir", out_dir, "write verdict.txt, sizes.txt and certificates.txt here");

    // verify
    SchemeOptions vs;
    std::string verify_graph, certs_path;
    auto* verify = app.add_subcommand("verify", "verify an external certificate assignment");
    add_scheme_options(verify, vs);
    verify->add_option("--graph", verify_graph, "edge-list graph file")->required();
    verify->add_option("--certs", certs_path, "certificate dump")->required();

    // fuzz
    SchemeOptions fs;
    std::string fuzz_graph, strategy = "bitflip";
    std::uint64_t seed = 1;
    std::size_t budget = 1000;
    auto* fuzz = app.add_subcommand("fuzz", "corrupt honest certificates and look for soundness violations");
    add_scheme_options(fuzz, fs);
    fuzz->add_option("--graph", fuzz_graph, "edge-list graph file")->required();
    fuzz->add_option("--strategy", strategy, "bitflip, splice or relabel");
    fuzz->add_option("--seed", seed);
    fuzz->add_option("--budget", budget, "number of corrupted assignments");

    // gadget
    int gk = 2, gn = 3;
    std::string tree_file, a_file, b_file, gadget_out;
    bool use_path = false, check = false, hybrid = false;
    auto* gadget = app.add_subcommand("gadget", "build the lower-bound construction G_{k,n}(A,B)");
    gadget->add_option("--k", gk)->required();
    gadget->add_option("--n", gn)->required();
    gadget->add_flag("--path", use_path, "T = P_{4k+3}");
    gadget->add_option("--tree", tree_file, "T from a graph file");
    gadget->add_option("--a", a_file, "pair family A (\"i j\" lines)");
    gadget->add_option("--b", b_file, "pair family B");
    gadget->add_option("--out", gadget_out, "graph file; the mapping goes to <out>.map");
    gadget->add_flag("--check", check, "run the proposition check");
    gadget->add_flag("--hybrid", hybrid, "run the hybrid view experiment");

    // oracle
    std::string oracle_graph, pattern_file, oracle_mode = "induced";
    int path_len = 0, cycle_len = 0;
    auto* oracle = app.add_subcommand("oracle", "exact pattern search");
    oracle->add_option("--graph", oracle_graph)->required();
    oracle->add_option("--pattern", pattern_file, "pattern graph file");
    oracle->add_option("--path", path_len, "pattern P_m");
    oracle->add_option("--cycle", cycle_len, "pattern C_m");
    oracle->add_option("--mode", oracle_mode, "induced or subgraph");

    // size-report
    SchemeOptions ss;
    std::string family = "gnp", sizes_text = "16,32,64,128";
    double density = 0.1;
    std::uint64_t size_seed = 1;
    auto* size = app.add_subcommand("size-report", "certificate sizes on a family of random graphs");
    add_scheme_options(size, ss);
    size->add_option("--family", family, "gnp, tree or sparse");
    size->add_option("--sizes", sizes_text, "comma-separated vertex counts");
    size->add_option("--density", density, "edge probability for gnp");
    size->add_option("--seed", size_seed);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }
    set_jobs(jobs);
    bool as_json = format == "json";

    try {
        if (*certify) {
            auto g = load_graph(graph_path);
            auto s = make_scheme(cs);
            auto a = s.prover(g);
            auto v = run_certification(g, s, &a);
            auto sz = measure_certificates(a);
            if (!dump_path.empty())
                write_file(dump_path, dump_assignment(a));
            if (!out_dir.empty()) {
                std::filesystem::create_directories(out_dir);
                write_file(out_dir + "/verdict.txt", verdict_lines(g, v));
                write_file(out_dir + "/sizes.txt", size_json(sz).dump(2) + "\n");
                write_file(out_dir + "/certificates.txt", dump_assignment(a));
            }
            if (as_json) {
                json j = verdict_json(v);
                j["scheme"] = s.name;
                j["n"] = g.size();
                j["sizes"] = size_json(sz);
                std::cout << j.dump(2) << '\n';
            }
            else {
                print_verdict(v, s.name, g.size());
                print_size(sz);
            }
            return v.accepted ? kAccept : kReject;
        }
        if (*verify) {
            auto g = load_graph(verify_graph);
            auto s = make_scheme(vs);
            auto a = parse_assignment(read_file(certs_path));
            auto v = run_certification(g, s, &a);
            if (as_json) {
                json j = verdict_json(v);
                j["scheme"] = s.name;
                j["n"] = g.size();
                std::cout << j.dump(2) << '\n';
            }
            else {
                print_verdict(v, s.name, g.size());
            }
            return v.accepted ? kAccept : kReject;
        }
        if (*fuzz) {
            auto g = load_graph(fuzz_graph);
            auto s = make_scheme(fs);
            bool yes = run_certification(g, s).accepted;
            auto rep = fuzz_soundness(g, s, yes, parse_strategy(strategy), seed, budget);
            if (as_json) {
                json viol = json::array();
                for (auto& x : rep.violations)
                    viol.push_back({{"trial", x.trial}, {"description", x.description}});
                std::cout << json{{"scheme", s.name},     {"yes_instance", yes},
                                  {"trials", rep.trials}, {"rejected", rep.rejected},
                                  {"violations", viol}}
                                 .dump(2)
                          << '\n';
            }
            else {
                std::cout << "scheme " << s.name << " instance " << (yes ? "yes" : "no") << " trials " << rep.trials
                          << " rejected " << rep.rejected << " violations " << rep.violations.size() << '\n';
                for (auto& x : rep.violations)
                    std::cout << "violation " << x.trial << ' ' << x.description << '\n';
            }
            return rep.violations.empty() ? kAccept : kReject;
        }
        if (*gadget) {
            if (use_path == !tree_file.empty())
                throw UsageError("give exactly one of --path and --tree");
            auto t = use_path ? path_graph(4 * gk + 3) : load_graph(tree_file);
            auto a = a_file.empty() ? PairFamily{gn, {}} : parse_pair_family(gn, read_file(a_file));
            auto b = b_file.empty() ? PairFamily{gn, {}} : parse_pair_family(gn, read_file(b_file));
            auto gad = build_gadget(gk, gn, t, a, b);
            if (!gadget_out.empty()) {
                write_file(gadget_out, serialize_graph(gad.graph));
                write_file(gadget_out + ".map", gadget_mapping_text(gad));
            }
            json j{{"k", gk}, {"n", gn}, {"vertices", gad.graph.size()}, {"edges", gad.graph.edge_count()}};
            int code = kAccept;
            std::string tname = use_path ? "P_" + std::to_string(4 * gk + 3) : "T";
            if (check) {
                auto r = proposition_check(gk, gn, t, a, b);
                j["contains_T"] = r.contains_t;
                j["intersect"] = r.pairs_intersect;
                j["embeddings"] = r.embeddings;
                j["consistent"] = r.consistent();
                if (!r.consistent())
                    code = kReject;
                if (!as_json)
                    std::cout << "check: " << tname << (r.contains_t ? " FOUND" : " ABSENT")
                              << ", intersect=" << (r.pairs_intersect ? "true" : "false") << ", "
                              << (r.consistent() ? "CONSISTENT" : "INCONSISTENT " + r.detail) << '\n';
            }
            if (hybrid) {
                HybridOptions opt;
                opt.t = t;
                auto r = hybrid_view_experiment(gk, gn, a, b, opt);
                j["left_identical"] = r.left_identical;
                j["right_identical"] = r.right_identical;
                if (!r.identical())
                    code = kReject;
                if (!as_json)
                    std::cout << "hybrid: left-half views identical: " << (r.left_identical ? "true" : "false")
                              << ", right-half views identical: " << (r.right_identical ? "true" : "false") << '\n';
            }
            if (as_json)
                std::cout << j.dump(2) << '\n';
            else
                std::cout << "gadget k " << gk << " n " << gn << " vertices " << gad.graph.size() << " edges "
                          << gad.graph.edge_count() << '\n';
            return code;
        }
        if (*oracle) {
            auto g = load_graph(oracle_graph);
            int given = !pattern_file.empty() + (path_len > 0) + (cycle_len > 0);
            if (given != 1)
                throw UsageError("give exactly one of --pattern, --path and --cycle");
            auto h = !pattern_file.empty() ? load_graph(pattern_file)
                     : path_len > 0        ? path_graph(path_len)
                                           : cycle_graph(cycle_len);
            auto e = find_induced_embedding(g, h, parse_mode(oracle_mode), std::max<std::size_t>(16, h.size()));
            if (as_json) {
                json j{{"found", e.has_value()}};
                if (e)
                    j["embedding"] = *e;
                std::cout << j.dump(2) << '\n';
            }
            else {
                std::cout << (e ? "FOUND" : "ABSENT") << '\n';
                if (e)
                    for (auto [p, x] : *e)
                        std::cout << "map " << p << ' ' << x << '\n';
            }
            return kAccept;
        }
        if (*size) {
            auto s = make_scheme(ss);
            std::vector<int> ns;
            std::stringstream in(sizes_text);
            for (std::string part; std::getline(in, part, ',');)
                ns.push_back(std::stoi(part));
            json rows = json::array();
            if (!as_json)
                std::cout << "n max_bits total_bits bits/(n^1.5 log^2 n) bits/(n log^3 n) seconds\n";
            for (int n : ns) {
                std::mt19937_64 rng(size_seed + static_cast<std::uint64_t>(n));
                auto g = family_graph(family, n, density, rng);
                auto t0 = std::chrono::steady_clock::now();
                auto a = s.prover(g);
                double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                auto sz = measure_certificates(a);
                double l = std::log2(std::max(n, 2));
                double r1 = sz.max_bits / (std::pow(n, 1.5) * l * l);
                double r2 = sz.max_bits / (n * l * l * l);
                rows.push_back({{"n", n}, {"max_bits", sz.max_bits}, {"total_bits", sz.total_bits},
                                {"ratio_n15_log2", r1}, {"ratio_n_log3", r2}, {"seconds", secs}});
                if (!as_json)
                    std::cout << n << ' ' << sz.max_bits << ' ' << sz.total_bits << ' ' << r1 << ' ' << r2 << ' '
                              << secs << '\n';
            }
            if (as_json)
                std::cout << json{{"scheme", s.name}, {"family", family}, {"rows", rows}}.dump(2) << '\n';
            return kAccept;
        }
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
