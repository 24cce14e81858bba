// Acceptance run: one PASS/FAIL line per criterion. Tolerances and time
// limits are pinned below. Usage: lcert_acceptance [criterion numbers...]

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <mutex>
#include <random>
#include <set>
#include <sstream>

#include "instances.hpp"
#include "lcert/basic.hpp"
#include "lcert/gadgets.hpp"
#include "lcert/generators.hpp"
#include "lcert/hfree.hpp"
#include "lcert/layered.hpp"
#include "lcert/oracles.hpp"
#include "lcert/paths.hpp"

using namespace lc;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    std::function<Outcome()> run;
};

bool has_path(const LabeledGraph& g, int m) { return longest_path_within(g, g.full_set(), nullptr, m) >= m; }

// ------------------------------------------------------------------ 1

Outcome ecc_equivalence()
{
    std::vector<LabeledGraph> graphs;
    std::size_t n8 = 0;
    for (int n = 1; n <= 8; ++n) {
        auto gs = nonisomorphic_graphs(n);
        if (n == 8)
            n8 = gs.size();
        graphs.insert(graphs.end(), gs.begin(), gs.end());
    }
    std::atomic<std::size_t> mismatches{0}, compared{0};
    parallel_for(graphs.size(), [&](std::size_t j) {
        auto& g = graphs[j];
        for (auto eps : {Epsilon::half(), Epsilon::rational(1, 3)}) {
            auto ours = ecc_classes(g, 2, eps);
            for (int i = 1; i <= static_cast<int>(ours.size()); ++i) {
                ++compared;
                if (ours[i - 1] != ecc_reference(g, 2, eps, i))
                    ++mismatches;
            }
        }
    });
    std::ostringstream d;
    d << mismatches << " mismatches; " << graphs.size() << " graphs n <= 8 (" << n8 << " with n = 8), "
      << compared << " level comparisons, k = 2, eps in {1/2, 1/3}";
    return {mismatches == 0 && n8 == 12346, d.str()};
}

// ------------------------------------------------------------------ 2

Outcome computation_contracts()
{
    const double dens[] = {0.05, 0.2, 0.5};
    auto eps = Epsilon::half();
    std::mt19937_64 rng(2024);
    std::vector<LabeledGraph> graphs;
    for (int t = 0; t < 200; ++t) {
        int n = 2 + static_cast<int>(rng() % 39);
        graphs.push_back(random_gnp(n, dens[t % 3], rng, t % 2 == 1));
    }
    std::atomic<std::size_t> bad_outputs{0}, bugs{0};
    parallel_for(graphs.size(), [&](std::size_t j) {
        auto& g = graphs[j];
        try {
            auto tg = run_computation_scheme(g, tg_scheme(eps, 2));
            auto direct = compute_ecc_table(g, 2, eps);
            for (auto& [v, out] : tg.outputs)
                if (!(*out == direct))
                    ++bad_outputs;
            auto gu = run_computation_scheme(g, gu_scheme(eps, 2));
            auto eccs = compute_eccs(g, 2, eps);
            for (auto& [v, out] : gu.outputs)
                if (!(*out == witnessed_graph(g, eccs, v)))
                    ++bad_outputs;
        }
        catch (const SchemeBug&) {
            ++bugs;
        }
    });

    // 1000 corruptions per scheme: 20 graphs x (25 bitflip + 25 splice)
    std::atomic<std::size_t> trials_tg{0}, trials_gu{0}, violations{0};
    parallel_for(20, [&](std::size_t j) {
        std::mt19937_64 r(500 + j);
        int n = 10 + static_cast<int>(j % 11);
        auto g = random_gnp(n, dens[j % 3], r);
        auto donor_tg = [n, &dens, j](std::mt19937_64& x) {
            return tg_scheme(Epsilon::half(), 2).prover(random_gnp(n, dens[(j + 1) % 3], x));
        };
        auto donor_gu = [n, &dens, j](std::mt19937_64& x) {
            return gu_scheme(Epsilon::half(), 2).prover(random_gnp(n, dens[(j + 1) % 3], x));
        };
        auto ref_tg = [](const LabeledGraph& h, VertexId) { return compute_ecc_table(h, 2, Epsilon::half()); };
        auto ref_gu = [](const LabeledGraph& h, VertexId v) { return witnessed_graph(h, 2, Epsilon::half(), v); };
        for (auto st : {FuzzStrategy::Bitflip, FuzzStrategy::Splice}) {
            auto a = fuzz_computation<EccTable>(g, tg_scheme(eps, 2), ref_tg, st, 1000 + j, 25, donor_tg);
            auto b = fuzz_computation<WitnessedGraph>(g, gu_scheme(eps, 2), ref_gu, st, 2000 + j, 25, donor_gu);
            trials_tg += a.trials;
            trials_gu += b.trials;
            violations += a.violations.size() + b.violations.size();
        }
    });
    std::ostringstream d;
    d << "honest: 200 graphs, " << bugs << " rejections, " << bad_outputs << " wrong outputs; fuzz: " << trials_tg
      << " tg + " << trials_gu << " gu corruptions, " << violations << " contract-(i) violations";
    return {bugs == 0 && bad_outputs == 0 && violations == 0 && trials_tg == 1000 && trials_gu == 1000, d.str()};
}

// ------------------------------------------------------------------ 3

struct Tally {
    std::atomic<std::size_t> runs{0}, mismatches{0};
    std::mutex m;
    std::string first;
    std::map<std::string, std::size_t> reasons;

    void record(bool accepted, bool oracle_free, const Verdict& v, const LabeledGraph& g)
    {
        ++runs;
        std::lock_guard<std::mutex> lock(m);
        for (auto& [x, why] : v.reasons)
            if (why != "ok")
                ++reasons[why.substr(0, why.find(':'))];
        if (accepted != oracle_free) {
            ++mismatches;
            if (first.empty())
                first = serialize_graph(g);
        }
    }
};

Outcome scheme_equivalence()
{
    std::mt19937_64 rng(31);
    const double dens[] = {0.08, 0.12, 0.18, 0.25, 0.35};
    std::vector<LabeledGraph> corpus;
    for (int t = 0; t < 300; ++t) {
        int n = 4 + static_cast<int>(rng() % 21);
        corpus.push_back(random_gnp(n, dens[t % 5], rng, t % 2 == 1));
    }
    for (int t = 0; t < 40; ++t)
        corpus.push_back(blob_instance(rng, 30, 2));

    std::ostringstream d;
    bool pass = true;
    auto report = [&](const std::string& name, Tally& t) {
        d << name << " " << t.mismatches << "/" << t.runs;
        if (!t.reasons.empty()) {
            d << " [";
            bool firstr = true;
            for (auto& [r, c] : t.reasons) {
                d << (firstr ? "" : " ") << r << "=" << c;
                firstr = false;
            }
            d << "]";
        }
        d << "; ";
        pass = pass && t.mismatches == 0;
        if (t.mismatches)
            std::cerr << name << " mismatch on\n" << t.first;
    };

    Tally p4k, p3k, p3kq;
    parallel_for(corpus.size(), [&](std::size_t j) {
        auto& g = corpus[j];
        bool free7 = !has_path(g, 7), free5 = !has_path(g, 5);
        auto a = run_certification(g, p4k_scheme(2));
        p4k.record(a.accepted, free7, a, g);
        auto b = run_certification(g, p3k_scheme(2, Epsilon::half()));
        p3k.record(b.accepted, free5, b, g);
        auto c = run_certification(g, p3k_scheme(2, Epsilon::inverse_log()));
        p3kq.record(c.accepted, free5, c, g);
    });
    report("p4k(k=2)", p4k);
    report("p3k(k=2,1/2)", p3k);
    report("p3k(k=2,log)", p3kq);

    // p143k: the two-ECC case (d) and three-ECC constructions plus k = 3 blobs
    std::vector<LabeledGraph> structured{instances::two_ecc_case_d().g, instances::three_ecc_instance()};
    std::mt19937_64 brng(143);
    while (structured.size() < 60)
        structured.push_back(blob_instance(brng, 30, 3));
    Tally p143;
    std::atomic<std::size_t> case_hits[4] = {0, 0, 0, 0};
    parallel_for(structured.size(), [&](std::size_t j) {
        auto& g = structured[j];
        bool free13 = !has_path(g, 13);
        auto v = run_certification(g, p143k_scheme(3));
        p143.record(v.accepted, free13, v, g);
        for (unsigned c = 0; c < 4; ++c) {
            auto single = run_certification(g, p143k_scheme(3, 1u << c));
            for (auto& [x, why] : single.reasons)
                if (why.rfind(std::string("glue-viii-") + char('a' + c) + ":", 0) == 0) {
                    ++case_hits[c];
                    break;
                }
        }
    });
    report("p143k(k=3)", p143);
    d << "two-ECC single-case instances a/b/c/d = " << case_hits[0] << "/" << case_hits[1] << "/" << case_hits[2]
      << "/" << case_hits[3] << "; ";

    std::vector<LabeledGraph> hgraphs;
    std::mt19937_64 hrng(57);
    for (int t = 0; t < 300; ++t) {
        int n = 3 + static_cast<int>(hrng() % 18);
        hgraphs.push_back(random_gnp(n, dens[t % 5], hrng, t % 2 == 1));
    }
    std::vector<LabeledGraph> patterns{path_graph(4), cycle_graph(4), cycle_graph(5), star_graph(3), paw_graph()};
    Tally hf;
    parallel_for(hgraphs.size(), [&](std::size_t j) {
        auto& g = hgraphs[j];
        for (auto& h : patterns)
            for (auto mode : {EmbedMode::Induced, EmbedMode::Subgraph}) {
                bool free = !find_induced_embedding(g, h, mode).has_value();
                auto v = run_certification(g, h_free_scheme(h, 2, mode));
                hf.record(v.accepted, free, v, g);
            }
    });
    report("h_free(k=2)", hf);

    std::mt19937_64 krng(99);
    std::vector<LabeledGraph> kgraphs;
    for (int t = 0; t < 500; ++t) {
        int n = 1 + static_cast<int>(krng() % 12);
        kgraphs.push_back(random_gnp(n, 0.2 + 0.1 * (t % 6), krng, t % 3 == 0));
    }
    Tally kk;
    parallel_for(kgraphs.size(), [&](std::size_t j) {
        auto& g = kgraphs[j];
        for (int q : {3, 4}) {
            bool free = !find_induced_embedding(g, complete_graph(q), EmbedMode::Subgraph).has_value();
            auto v = run_certification(g, kk_free_scheme(q));
            kk.record(v.accepted, free, v, g);
        }
    });
    report("kk_free", kk);
    auto text = d.str();
    return {pass, text.substr(0, text.size() - 2)};
}

// ------------------------------------------------------------------ 4

Outcome size_scaling()
{
    const int sizes[] = {16, 32, 64, 128};
    const double dens[] = {0.05, 0.1, 0.2, 0.5};
    auto f_p4k = [](double n) { return std::pow(n, 1.5) * std::log2(n) * std::log2(n); };
    auto f_p3k = [](double n) { return n * std::pow(std::log2(n), 3); };
    struct Row {
        std::string scheme;
        double p;
        std::vector<double> ratio;
    };
    std::vector<Row> rows;
    for (double p : dens) {
        Row a{"p4k", p, {}}, b{"p3k-log", p, {}};
        for (int n : sizes) {
            std::mt19937_64 rng(7000 + n + static_cast<int>(p * 100));
            auto g = random_gnp(n, p, rng);
            auto sa = measure_certificates(p4k_scheme(2).prover(g)).max_bits;
            auto sb = measure_certificates(p3k_scheme(2, Epsilon::inverse_log()).prover(g)).max_bits;
            a.ratio.push_back(sa / f_p4k(n));
            b.ratio.push_back(sb / f_p3k(n));
        }
        rows.push_back(a);
        rows.push_back(b);
    }
    bool pass = true;
    std::ostringstream d;
    std::printf("    size ratios bits / bound (C fitted at n = 16, then frozen)\n");
    std::printf("    %-8s %5s %9s %9s %9s %9s\n", "scheme", "p", "n=16", "n=32", "n=64", "n=128");
    for (auto& r : rows) {
        double c = r.ratio[0];
        std::printf("    %-8s %5.2f", r.scheme.c_str(), r.p);
        for (double x : r.ratio) {
            std::printf(" %9.4f", x);
            if (x > c * (1 + 1e-12))
                pass = false;
        }
        std::printf("\n");
    }
    d << "p4k <= C n^1.5 log^2 n and p3k-log <= C' n log^3 n for n in {16..128}, p in {0.05,0.1,0.2,0.5}";
    return {pass, d.str()};
}

// ------------------------------------------------------------------ 5

Outcome gadget_correctness()
{
    auto t = path_graph(11);
    std::atomic<std::size_t> bad{0}, found{0}, embeddings{0};
    std::atomic<std::size_t> forced_in{0}, forced_out{0};
    std::mutex m;
    std::string first;
    parallel_for(100, [&](std::size_t j) {
        std::mt19937_64 rng(9000 + j);
        int n = 3 + static_cast<int>(j % 2);
        auto a = random_pair_family(n, 0.4, rng);
        PairFamily b;
        if (j < 20) {
            // forced intersection
            b = random_pair_family(n, 0.4, rng);
            int i = 1 + static_cast<int>(rng() % n), k = i;
            while (k == i)
                k = 1 + static_cast<int>(rng() % n);
            a.add(i, k);
            b.add(i, k);
            ++forced_in;
        }
        else if (j < 40) {
            // forced disjoint: B inside the complement of A
            b = PairFamily{n, {}};
            for (auto pr : complement(a).pairs)
                if (rng() % 2)
                    b.pairs.insert(pr);
            ++forced_out;
        }
        else {
            b = random_pair_family(n, 0.4, rng);
        }
        auto r = proposition_check(2, n, t, a, b);
        embeddings += r.embeddings;
        found += r.contains_t;
        if (!r.consistent()) {
            ++bad;
            std::lock_guard<std::mutex> lock(m);
            if (first.empty())
                first = format_pair_family(a) + "--\n" + format_pair_family(b) + r.detail;
        }
    });
    if (!first.empty())
        std::cerr << "gadget inconsistency:\n" << first << '\n';
    std::ostringstream d;
    d << bad << " inconsistent of 100 (k = 2, n in {3,4}, T = P_11; " << forced_in << " forced-intersecting, "
      << forced_out << " forced-disjoint); " << found << " contain T; " << embeddings
      << " embeddings checked for 8 clique vertices and clique shape";
    return {bad == 0 && forced_in == 20 && forced_out == 20, d.str()};
}

// ------------------------------------------------------------------ 6

Outcome hybrid_indistinguishability()
{
    std::atomic<std::size_t> identical{0}, control_identical{0};
    parallel_for(50, [&](std::size_t j) {
        std::mt19937_64 rng(6000 + j);
        auto a = random_pair_family(3, 0.5, rng);
        auto b = a;
        while (b == a)
            b = random_pair_family(3, 0.5, rng);
        HybridOptions opt;
        opt.seed = 1 + j;
        identical += hybrid_view_experiment(2, 3, a, b, opt).identical();
        opt.shuffle_layout = true;
        control_identical += hybrid_view_experiment(2, 3, a, b, opt).identical();
    });
    std::ostringstream d;
    d << identical << "/50 hybrids with bit-identical views; shuffled-layout control identical in "
      << control_identical << "/50";
    return {identical == 50 && control_identical == 0, d.str()};
}

// ------------------------------------------------------------------ 7

Outcome acyclicity_exhaustive()
{
    auto s = acyclicity_scheme();
    std::atomic<std::size_t> labellings{0}, accepted_cycles{0};
    for (int n = 3; n <= 6; ++n) {
        auto c = cycle_graph(n);
        std::size_t base = n + 2, total = 1;
        for (int i = 0; i < n; ++i)
            total *= base;
        parallel_for(total, [&](std::size_t code) {
            CertificateAssignment a;
            auto x = code;
            for (int i = 0; i < n; ++i) {
                a[c.id(i)].add("Distance", encode_distance(x % base));
                x /= base;
            }
            ++labellings;
            if (run_certification(c, s, &a).accepted)
                ++accepted_cycles;
        });
    }
    std::size_t forests = 0, rejected_forests = 0;
    for (int n = 1; n <= 6; ++n)
        for (auto& g : nonisomorphic_graphs(n)) {
            int comps = 0;
            components(g, &comps);
            if (static_cast<int>(g.edge_count()) != g.size() - comps)
                continue;
            ++forests;
            rejected_forests += !run_certification(g, s).accepted;
        }
    std::ostringstream d;
    d << accepted_cycles << " of " << labellings << " labellings of C_3..C_6 (values 0..n+1) accepted; "
      << rejected_forests << " of " << forests << " forests n <= 6 rejected";
    return {accepted_cycles == 0 && rejected_forests == 0 && forests > 0, d.str()};
}

// ------------------------------------------------------------------ 8

Outcome fooling()
{
    auto a = fooling_bound(8, 2, 11), b = fooling_bound(1000, 2, 11), c = fooling_bound(10000, 2, 11);
    double r = static_cast<double>(c) / 10000;
    std::printf("    fooling_bound(n, 2, 11) / n: n=100 %.5f, n=1000 %.5f, n=10000 %.5f (1/16 = %.5f)\n",
                fooling_bound(100, 2, 11) / 100.0, b / 1000.0, r, 1.0 / 16);
    std::ostringstream d;
    d << "fooling_bound(8,2,11) = " << a << ", fooling_bound(1000,2,11) = " << b << ", ratio at n = 10^4 = " << r;
    return {a == 1 && b == 63 && r >= 1.0 / 17 && r <= 1.0 / 15, d.str()};
}

} // namespace

int main(int argc, char** argv)
{
    std::vector<Criterion> all{
        {1, "ecc-oracle-equivalence", 120, ecc_equivalence},
        {2, "computation-scheme-contracts", 600, computation_contracts},
        {3, "scheme-oracle-equivalence", 1800, scheme_equivalence},
        {4, "certificate-size-scaling", 300, size_scaling},
        {5, "gadget-correctness", 1200, gadget_correctness},
        {6, "hybrid-indistinguishability", 120, hybrid_indistinguishability},
        {7, "acyclicity-soundness-exhaustive", 60, acyclicity_exhaustive},
        {8, "fooling-bound", 1, fooling},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i)
        only.insert(std::atoi(argv[i]));
    int failed = 0;
    for (auto& c : all) {
        if (!only.empty() && !only.count(c.id))
            continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        }
        catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = secs < c.limit_seconds;
        bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("%s %d %s: %s (%.1fs, limit %.0fs%s)\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    o.detail.c_str(), secs, c.limit_seconds, in_time ? "" : ", OVER TIME");
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
