#include "doctest.h"

#include <random>

#include "lcert/basic.hpp"
#include "lcert/generators.hpp"

using namespace lc;

namespace {

bool is_forest(const LabeledGraph& g)
{
    int comps = 0;
    std::vector<int> seen(g.size(), 0);
    for (int v = 0; v < g.size(); ++v) {
        if (seen[v])
            continue;
        ++comps;
        auto d = bfs(g, v);
        for (int w = 0; w < g.size(); ++w)
            if (d[w] >= 0)
                seen[w] = 1;
    }
    return static_cast<int>(g.edge_count()) == g.size() - comps;
}

CertificateAssignment labels(const LabeledGraph& g, const std::vector<std::uint64_t>& x)
{
    CertificateAssignment a;
    for (int v = 0; v < g.size(); ++v)
        a[g.id(v)].add("Distance", encode_distance(x[v]));
    return a;
}

} // namespace

TEST_SUITE("basic")
{
    TEST_CASE("acyclicity examples")
    {
        auto s = acyclicity_scheme();
        CHECK(run_certification(path_graph(3), s).accepted);
        auto honest = s.prover(path_graph(3));
        CHECK(honest.at(3).field("Distance") == encode_distance(2));

        GraphBuilder b;
        b.path(0, 3);
        b.path(0, 4);
        auto forest = b.build();
        CHECK(run_certification(forest, s).accepted);
        CHECK(!run_certification(cycle_graph(3), s).accepted);
    }

    TEST_CASE("acyclicity rejects every labelling of a triangle")
    {
        auto s = acyclicity_scheme();
        auto tri = complete_graph(3);
        int tried = 0;
        for (std::uint64_t a = 0; a <= 4; ++a)
            for (std::uint64_t b = 0; b <= 4; ++b)
                for (std::uint64_t c = 0; c <= 4; ++c) {
                    auto asg = labels(tri, {a, b, c});
                    CHECK(!run_certification(tri, s, &asg).accepted);
                    ++tried;
                }
        CHECK(tried == 125);
    }

    TEST_CASE("acyclicity verdict matches forest test")
    {
        auto s = acyclicity_scheme();
        std::mt19937_64 rng(21);
        for (int t = 0; t < 150; ++t) {
            int n = 1 + static_cast<int>(rng() % 14);
            auto g = t % 2 ? random_tree(n, rng) : random_gnp(n, 0.15, rng, true);
            CHECK(run_certification(g, s).accepted == is_forest(g));
        }
    }

    TEST_CASE("K_q-freeness examples")
    {
        CHECK(run_certification(complete_bipartite(3, 3), kk_free_scheme(3)).accepted);
        auto k4 = run_certification(complete_graph(4), kk_free_scheme(4));
        CHECK(!k4.accepted);
        CHECK(k4.rejecting.size() == 4);
        CHECK(run_certification(petersen_graph(), kk_free_scheme(3)).accepted);
        CHECK_THROWS_AS(kk_free_scheme(2), ContractError);
    }

    TEST_CASE("K_q-freeness agrees with the clique oracle")
    {
        std::mt19937_64 rng(8);
        for (int t = 0; t < 500; ++t) {
            int n = 1 + static_cast<int>(rng() % 7);
            auto g = random_gnp(n, 0.2 + 0.1 * (t % 6), rng, t % 3 == 0);
            for (int q : {3, 4}) {
                bool has = find_induced_embedding(g, complete_graph(q), EmbedMode::Subgraph).has_value();
                CHECK(run_certification(g, kk_free_scheme(q)).accepted == !has);
            }
        }
    }

    TEST_CASE("K_q-freeness vector part is exactly n bits")
    {
        std::mt19937_64 rng(4);
        auto g = random_gnp(20, 0.3, rng, true);
        auto a = kk_free_scheme(3).prover(g);
        for (auto& [v, c] : a)
            CHECK(c.field("Vector").size() == 20);
    }

    TEST_CASE("centered H examples")
    {
        auto claw = star_graph(3);
        CHECK(!run_certification(claw, centered_h_scheme(claw, 1, 1)).accepted);
        CHECK(run_certification(cycle_graph(6), centered_h_scheme(claw, 1, 1)).accepted);
        auto p5 = path_graph(5);
        auto v = run_certification(p5, centered_h_scheme(p5, 3, 2));
        CHECK(!v.accepted);
        CHECK(v.rejecting.count(3));
        CHECK_THROWS_AS(centered_h_scheme(p5, 1, 2), ContractError);
    }

    TEST_CASE("centered H agrees with the induced embedding oracle")
    {
        struct Pattern {
            LabeledGraph h;
            VertexId w;
            int d;
        };
        std::vector<Pattern> pats{{star_graph(3), 1, 1}, {path_graph(5), 3, 2}, {cycle_graph(4), 1, 2},
                                  {paw_graph(), 3, 1}};
        std::mt19937_64 rng(12);
        for (int t = 0; t < 120; ++t) {
            int n = 1 + static_cast<int>(rng() % 15);
            auto g = random_gnp(n, 0.1 + 0.05 * (t % 5), rng, t % 2 == 0);
            for (auto& p : pats) {
                bool has = find_induced_embedding(g, p.h, EmbedMode::Induced).has_value();
                CHECK(run_certification(g, centered_h_scheme(p.h, p.w, p.d)).accepted == !has);
            }
        }
    }
}
