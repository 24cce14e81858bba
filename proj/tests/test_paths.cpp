#include "doctest.h"

#include <random>

#include "instances.hpp"
#include "lcert/generators.hpp"
#include "lcert/paths.hpp"
#include "lcert/oracles.hpp"

using namespace lc;

namespace {

bool has_path(const LabeledGraph& g, int m) { return longest_path_within(g, g.full_set(), nullptr, m) >= m; }

// v's own longest path toward its ECC_i, as identifiers starting at v
std::vector<VertexId> toward(const LabeledGraph& g, const EccTable& t, VertexId v, int i)
{
    auto& cell = t.at(v, i);
    std::vector<int> w;
    if (!cell || cell->dist == 0)
        return {v};
    longest_path_from(g, g.index(v), near_set(g, t, i, cell->id, cell->dist - 1), -1, &w);
    std::vector<VertexId> out;
    for (int x : w)
        out.push_back(g.id(x));
    return out;
}

std::vector<VertexId> ids_of(const LabeledGraph& g, const std::vector<int>& p)
{
    std::vector<VertexId> out;
    for (int x : p)
        out.push_back(g.id(x));
    return out;
}

// a ++ b where a ends at the vertex b starts with
std::vector<VertexId> glue(std::vector<VertexId> a, const std::vector<VertexId>& b)
{
    REQUIRE(!a.empty());
    REQUIRE(!b.empty());
    REQUIRE(a.back() == b.front());
    a.insert(a.end(), b.begin() + 1, b.end());
    return a;
}

std::vector<VertexId> reversed(std::vector<VertexId> p)
{
    std::reverse(p.begin(), p.end());
    return p;
}

// Rebuilds the induced path a glue rejection stands for from the honest
// values. Returns an empty path for non-glue reasons.
std::vector<VertexId> extract(const LabeledGraph& g, int k, const std::string& reason)
{
    auto parts = split_reason(reason);
    auto t = compute_ecc_table(g, k, Epsilon::half());
    if (parts[0] == "glue-v") {
        auto p = parse_ids(parts[1]);
        return glue(p, toward(g, t, p.back(), 2));
    }
    if (parts[0] == "glue-3k") {
        int i = std::stoi(parts[1]);
        auto p = parse_ids(parts[2]);
        return glue(glue(reversed(toward(g, t, p.front(), i)), p), toward(g, t, p.back(), i));
    }
    if (parts[0] == "glue-vii") {
        auto p = parse_ids(parts[1]);
        return glue(glue(reversed(toward(g, t, p.front(), 2)), p), toward(g, t, p.back(), 2));
    }
    if (parts[0].rfind("glue-viii", 0) != 0)
        return {};
    char kind = parts[0].back();
    // Q and the indices of v, v'
    auto q_of = [&](VertexId v) {
        auto& cell = t.at(v, 2);
        return near_set(g, t, 2, cell->id, cell->dist - 1);
    };
    auto closed = [&](int x) {
        Bits b = g.row(x);
        b.set(x);
        return b;
    };
    if (kind == 'a') {
        VertexId w = std::stoull(parts[1]);
        auto p = parse_ids(parts[2]);
        VertexId v = p.back();
        auto q = q_of(v);
        q.set(g.index(w));
        std::vector<int> tail;
        longest_path_from(g, g.index(v), q, -1, &tail);
        return glue(p, ids_of(g, tail));
    }
    if (kind == 'b') {
        VertexId v = std::stoull(parts[1]);
        auto p = parse_ids(parts[2]);
        VertexId w = p.back();
        std::vector<int> tail;
        longest_path_from(g, g.index(w), q_of(v).minus(closed(g.index(v))), -1, &tail);
        return glue(p, ids_of(g, tail));
    }
    if (kind == 'c') {
        VertexId w = std::stoull(parts[1]);
        auto start = parse_ids(parts[2]);
        auto end = parse_ids(parts[3]);
        VertexId v = start.back();
        std::vector<int> mid;
        longest_path_from(g, g.index(v), q_of(v), g.index(w), &mid);
        return glue(glue(start, ids_of(g, mid)), end);
    }
    auto p = parse_ids(parts[1]);
    VertexId v = p.front(), w = p.back();
    std::vector<int> a, b;
    longest_two_paths(g, g.index(v), g.index(w), q_of(v), &a, &b);
    return glue(glue(reversed(ids_of(g, a)), p), ids_of(g, b));
}

struct Case {
    LabeledGraph g;
    int k;
};

std::vector<Case> corpus(std::uint64_t seed, int randoms, int blobs)
{
    std::mt19937_64 rng(seed);
    std::vector<Case> out;
    for (int t = 0; t < randoms; ++t) {
        int n = 4 + static_cast<int>(rng() % 13);
        double p = std::vector<double>{0.1, 0.15, 0.2, 0.3, 0.5}[t % 5];
        out.push_back({random_gnp(n, p, rng, t % 2 == 0), 2});
    }
    for (int t = 0; t < blobs; ++t) {
        int k = 2 + t % 2;
        out.push_back({blob_instance(rng, 26, k), k});
    }
    return out;
}

} // namespace

TEST_SUITE("paths")
{
    TEST_CASE("LongestPaths example on a clique blob")
    {
        GraphBuilder b;
        auto c = b.clique(6);
        auto v = b.vertex();
        b.edge(v, c[0]);
        auto g = b.build();
        auto f = longest_paths_field(g, 2, LpLevels::Single);
        REQUIRE(f.at(v, 2));
        CHECK(*f.at(v, 2) == 3);
        CHECK(f.entries.size() == 1);
        CHECK(longest_paths_field(path_graph(9), 2, LpLevels::Single).entries.empty());
        CHECK(decode_longest_paths(encode_longest_paths(f)) == f);
    }

    TEST_CASE("LongestPaths multi-level entries are none inside H_i")
    {
        std::mt19937_64 rng(31);
        for (int t = 0; t < 20; ++t) {
            auto g = blob_instance(rng, 26, 2);
            auto eps = Epsilon::rational(1, 3);
            auto f = longest_paths_field(g, 2, LpLevels::Multi, eps);
            auto tab = compute_ecc_table(g, 2, eps);
            for (auto v : g.ids())
                for (int i = 1; i <= tab.layers; ++i) {
                    auto& cell = tab.at(v, i);
                    CHECK(f.at(v, i).has_value() == (cell && cell->dist >= 1));
                }
        }
    }

    TEST_CASE("ConstrainedPaths examples")
    {
        GraphBuilder b;
        auto c = b.clique(6);
        auto v = b.vertex();
        auto w = b.vertex();
        b.edge(v, c[0]);
        b.edge(w, c[1]);
        auto g = b.build();
        auto f = constrained_path_field(g, 2);
        REQUIRE(f.at(v));
        auto& row = f.at(v)->rows.at(w);
        CHECK(row[2] == 4);
        CHECK(row[0] == 4);
        CHECK(row[1] == 3);
        CHECK(row[3] == 4); // v alone beside w-c1-c2
        CHECK(!f.at(c[0]));
        CHECK(decode_constrained(encode_constrained(f.at(v))) == f.at(v));
        CHECK(decode_constrained(encode_constrained(std::nullopt)) == std::nullopt);

        // v' with two clique neighbors still closes a 4-vertex path
        GraphBuilder b2;
        auto c1 = b2.clique(6);
        auto x = b2.vertex();
        b2.edge(x, c1[0]);
        auto y = b2.vertex();
        b2.edge(y, c1[1]);
        b2.edge(y, c1[2]);
        auto g2 = b2.build();
        auto tab = compute_ecc_table(g2, 2, Epsilon::half());
        auto cp = constrained_table(g2, tab, x);
        REQUIRE(cp);
        CHECK(cp->rows.at(y)[2] == 4);
        // no ECC_2 at all
        auto lone = constrained_table(path_graph(2), compute_ecc_table(path_graph(2), 2, Epsilon::half()), 1);
        CHECK(!lone);
    }

    TEST_CASE("m-pathcheck examples")
    {
        auto s = p4k_scheme(2);
        auto v = run_certification(path_graph(7), s);
        CHECK(!v.accepted);
        for (auto& [x, r] : v.reasons)
            if (r != "ok")
                CHECK(r.rfind("path:", 0) == 0);
        CHECK(run_certification(cycle_graph(7), s).accepted);
        CHECK(run_certification(LabeledGraph{}, s).accepted);
        CHECK(run_certification(complete_graph(1), s).accepted);
    }

    TEST_CASE("m-pathcheck glue fires across two blobs")
    {
        // two cliques joined by a path; a 7-vertex induced path takes two
        // vertices of each clique, so no vertex sees it whole
        GraphBuilder b;
        auto s1 = b.clique(6);
        auto s2 = b.clique(6);
        auto link = b.path(s1[0], 3);
        b.edge(link.back(), s2[0]);
        auto g = b.build();
        REQUIRE(has_path(g, 7));
        auto v = run_certification(g, p4k_scheme(2));
        CHECK(!v.accepted);
        bool glued = false;
        for (auto& [x, r] : v.reasons) {
            if (r.rfind("glue", 0) != 0)
                continue;
            glued = true;
            auto p = extract(g, 2, r);
            CHECK(is_induced_path(g, p));
            CHECK(p.size() >= 7);
        }
        CHECK(glued);
    }

    TEST_CASE("3k scheme examples")
    {
        CHECK(!run_certification(path_graph(5), p3k_scheme(2, Epsilon::half())).accepted);
        CHECK(run_certification(cycle_graph(5), p3k_scheme(2, Epsilon::half())).accepted);
        CHECK(!run_certification(path_graph(5), p3k_scheme(2, Epsilon::inverse_log())).accepted);
        CHECK(run_certification(cycle_graph(5), p3k_scheme(2, Epsilon::inverse_log())).accepted);
    }

    TEST_CASE("14k/3 scheme examples")
    {
        auto s = p143k_scheme(3);
        CHECK(run_certification(cycle_graph(13), s).accepted);
        CHECK(!run_certification(path_graph(13), s).accepted);
        CHECK(run_certification(path_graph(12), s).accepted);
    }

    TEST_CASE("schemes agree with the path oracle and glue rejections extract")
    {
        auto cases = corpus(77, 60, 24);
        int no = 0;
        for (auto& c : cases) {
            struct Run {
                CertScheme s;
                int m;
            };
            std::vector<Run> runs{{p4k_scheme(c.k), 4 * c.k - 1},
                                  {p3k_scheme(c.k, Epsilon::half()), 3 * c.k - 1},
                                  {p143k_scheme(c.k), (14 * c.k + 2) / 3 - 1}};
            for (auto& r : runs) {
                bool expect = !has_path(c.g, r.m);
                no += !expect;
                auto v = run_certification(c.g, r.s);
                INFO(r.s.name << " k=" << c.k << "\n" << serialize_graph(c.g));
                CHECK(v.accepted == expect);
                for (auto& [x, why] : v.reasons) {
                    auto p = extract(c.g, c.k, why);
                    if (p.empty())
                        continue;
                    INFO(why);
                    CHECK(is_induced_path(c.g, p));
                    CHECK(static_cast<int>(p.size()) >= r.m);
                }
            }
        }
        CHECK(no > 20);
    }

    TEST_CASE("path provers are idempotent")
    {
        auto cases = corpus(5, 10, 10);
        for (auto& c : cases) {
            auto lp = longest_paths_field(c.g, c.k, LpLevels::Single);
            auto tab = compute_ecc_table(c.g, c.k, Epsilon::half());
            for (auto& [key, val] : lp.entries) {
                auto [v, i] = key;
                PathConstraint pc;
                pc.start = v;
                std::vector<VertexId> q;
                auto& cell = tab.at(v, i);
                for (auto& [w, row] : tab.rows)
                    if (row[i - 1] && row[i - 1]->id == cell->id && row[i - 1]->dist < cell->dist)
                        q.push_back(w);
                pc.allowed = q;
                CHECK(longest_induced_path(c.g, pc).count == val);
            }
            CHECK(longest_paths_field(c.g, c.k, LpLevels::Single) == lp);
            CHECK(constrained_path_field(c.g, c.k) == constrained_path_field(c.g, c.k));
        }
    }
}

TEST_SUITE("paths")
{
    TEST_CASE("two-ECC glue case (d)")
    {
        auto inst = instances::two_ecc_case_d();
        auto& g = inst.g;
        VertexId v = inst.v, w = inst.w, u = inst.u;
        REQUIRE(has_path(g, 13));

        auto f = constrained_path_field(g, 3);
        REQUIRE(f.at(v));
        CHECK(f.at(v)->rows.at(w)[3] == 6);

        auto full = run_certification(g, p143k_scheme(3));
        CHECK(full.rejecting.count(u));
        auto only_d = run_certification(g, p143k_scheme(3, 8u));
        REQUIRE(only_d.rejecting.count(u));
        auto why = only_d.reasons.at(u);
        CHECK(why.rfind("glue-viii-d:", 0) == 0);
        auto p = extract(g, 3, why);
        CHECK(is_induced_path(g, p));
        CHECK(p.size() >= 13);
    }

    TEST_CASE("three-ECC glue")
    {
        auto g = instances::three_ecc_instance();
        REQUIRE(has_path(g, 13));
        auto v = run_certification(g, p143k_scheme(3));
        CHECK(!v.accepted);
        bool seen = false;
        for (auto& [x, why] : v.reasons) {
            if (why.rfind("glue-vii:", 0) != 0)
                continue;
            seen = true;
            auto p = extract(g, 3, why);
            CHECK(is_induced_path(g, p));
            CHECK(p.size() >= 13);
        }
        CHECK(seen);
    }
}
