#include "doctest.h"

#include <random>

#include "lcert/gadgets.hpp"
#include "lcert/generators.hpp"
#include "lcert/oracles.hpp"

using namespace lc;

namespace {

PairFamily family(int n, std::initializer_list<std::pair<int, int>> ps)
{
    PairFamily a{n, {}};
    for (auto [i, j] : ps)
        a.add(i, j);
    return a;
}

// a spine of 7 vertices whose inner vertices each get one leaf: diameter 6,
// no degree-2 vertex, so it fits k = 1
LabeledGraph caterpillar()
{
    GraphBuilder b;
    auto spine = b.path(0, 7);
    for (int i = 1; i + 1 < 7; ++i)
        b.path(spine[i], 1);
    return b.build();
}

} // namespace

TEST_SUITE("gadgets")
{
    TEST_CASE("bipartite encoder")
    {
        auto full = bipartite_encoder(PairFamily{4, {}});
        CHECK(full.edge_count() == 16);
        PairFamily all{4, {}};
        for (int i = 1; i <= 4; ++i)
            for (int j = i + 1; j <= 4; ++j)
                all.add(i, j);
        auto diag = bipartite_encoder(all);
        CHECK(diag.edge_count() == 4);
        for (int i = 1; i <= 4; ++i)
            CHECK(diag.has_edge(i, 4 + i));

        auto g = bipartite_encoder(family(3, {{1, 2}}));
        CHECK(g.edge_count() == 7);
        CHECK(!g.has_edge(1, 5));
        CHECK(!g.has_edge(2, 4));
        CHECK(g.has_edge(1, 6));
        CHECK(g.has_edge(3, 5));
        // symmetric and reflexive
        std::mt19937_64 rng(2);
        for (int t = 0; t < 20; ++t) {
            auto a = random_pair_family(5, 0.5, rng);
            auto e = bipartite_encoder(a);
            for (int i = 1; i <= 5; ++i) {
                CHECK(e.has_edge(i, 5 + i));
                for (int j = 1; j <= 5; ++j)
                    CHECK(e.has_edge(i, 5 + j) == e.has_edge(j, 5 + i));
            }
        }
    }

    TEST_CASE("pair family text round trip and errors")
    {
        auto a = family(5, {{1, 2}, {3, 5}});
        CHECK(parse_pair_family(5, format_pair_family(a)) == a);
        CHECK(parse_pair_family(5, "# c\n2 1\n\n") == family(5, {{1, 2}}));
        CHECK_THROWS_AS(parse_pair_family(3, "1 4\n"), ParseError);
        CHECK_THROWS_AS(parse_pair_family(3, "2 2\n"), ParseError);
        CHECK_THROWS_AS(parse_pair_family(3, "1\n"), ParseError);
        CHECK(complement(complement(a)) == a);
        CHECK(complement(a).pairs.size() == 8);
    }

    TEST_CASE("gadget on a path")
    {
        int k = 2, n = 3;
        auto a = family(n, {{1, 2}});
        auto gad = build_gadget(k, n, path_graph(4 * k + 3), a, a);
        auto& g = gad.graph;
        CHECK(g.size() == 4 * k * (n - 1) + 4 * k + 3);
        CHECK(g.size() == 27);
        CHECK(gad.at(0, 1, 1) == 1);
        CHECK(gad.at(1, 1, 1) == 2 * k * n + 1);
        CHECK(gad.at(0, 3, 2) == 2 * n + 2);

        auto between = [&](int s1, int l1, int s2, int l2) {
            int c = 0;
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    c += g.has_edge(gad.at(s1, l1, i), gad.at(s2, l2, j));
            return c;
        };
        for (int l = 1; l < 2 * k; ++l)
            for (int s1 = 0; s1 < 2; ++s1)
                for (int s2 = 0; s2 < 2; ++s2)
                    CHECK(between(s1, l, s2, l + 1) == n * n - n);
        for (int l = 2; l < 2 * k; ++l)
            CHECK(between(0, l, 1, l) == n);
        CHECK(between(0, 1, 1, 1) == 7);
        CHECK(between(0, 1, 0, 3) == 0);

        // extras: v0, w, v1 in T order
        REQUIRE(gad.extras.size() == 3);
        VertexId v0 = gad.extras.at(1), v1 = gad.extras.at(4 * k + 3);
        CHECK(gad.w == gad.extras.at(2 * k + 2));
        auto nb = g.neighbor_ids(v0);
        CHECK(nb.size() == static_cast<std::size_t>(n));
        for (auto x : nb)
            CHECK(gad.slot_of(x) == CliqueSlot{0, 1, static_cast<int>(x)});
        CHECK(g.neighbor_ids(v1).size() == static_cast<std::size_t>(n));
        CHECK(g.neighbor_ids(gad.w).size() == static_cast<std::size_t>(2 * n));
        CHECK(gad.pending.at(v0) == std::pair{0, 1});
        CHECK(gad.pending.at(v1) == std::pair{1, 1});
        CHECK(!gad.pending.count(gad.w));
        CHECK(gadget_mapping_text(gad).find("extra 1 25 0 1") != std::string::npos);
    }

    TEST_CASE("gadget on a tree without degree-2 vertices")
    {
        auto t = caterpillar();
        REQUIRE(t.size() == 12);
        CHECK(gadget_spine(t, 1) == std::vector<VertexId>{2, 3, 4, 5, 6});
        auto a = family(3, {{1, 3}});
        auto gad = build_gadget(1, 3, t, a, a);
        CHECK(gad.graph.size() == 4 * (3 - 1) + 12);
        CHECK(gad.extras.size() == 8);
        // the leaf on spine vertex 2 hangs from K^0_1, the one on w stays with w
        std::size_t hanging = 0;
        for (auto [v, c] : gad.pending)
            hanging += c == std::pair{0, 1};
        CHECK(hanging == 2);
        CHECK(gad.pending.size() == 6);

        CHECK_THROWS_AS(build_gadget(2, 3, path_graph(9), a, a), ShapeError);
        CHECK_THROWS_AS(build_gadget(1, 3, cycle_graph(8), a, a), ShapeError);
        GraphBuilder b;
        auto s = b.path(0, 8);
        b.path(s[3], 1);
        CHECK_THROWS_AS(build_gadget(1, 3, b.build(), a, a), ShapeError);
        CHECK_THROWS_AS(build_gadget(1, 1, path_graph(7), PairFamily{1, {}}, PairFamily{1, {}}), ContractError);
    }

    TEST_CASE("proposition examples")
    {
        auto t = path_graph(11);
        auto a = family(3, {{1, 2}});
        auto r = proposition_check(2, 3, t, a, a);
        CHECK(r.contains_t);
        CHECK(r.pairs_intersect);
        CHECK(r.consistent());
        auto d = proposition_check(2, 3, t, a, family(3, {{1, 3}, {2, 3}}));
        CHECK(!d.contains_t);
        CHECK(!d.pairs_intersect);
        CHECK(d.consistent());
        auto e = proposition_check(2, 3, t, PairFamily{3, {}}, PairFamily{3, {}});
        CHECK(!e.contains_t);
        CHECK(e.consistent());

        // the alternating path of the common pair {1, 2}
        auto gad = build_gadget(2, 3, t, a, a);
        std::vector<VertexId> p{gad.extras.at(1)};
        for (int l = 1; l <= 4; ++l)
            p.push_back(gad.at(0, l, l % 2 ? 1 : 2));
        p.push_back(gad.w);
        for (int l = 4; l >= 1; --l)
            p.push_back(gad.at(1, l, l % 2 ? 2 : 1));
        p.push_back(gad.extras.at(11));
        CHECK(is_induced_path(gad.graph, p));
    }

    TEST_CASE("proposition on random families")
    {
        std::mt19937_64 rng(5);
        for (int t = 0; t < 16; ++t) {
            int n = 3 + t % 2;
            auto a = random_pair_family(n, 0.4, rng);
            auto b = random_pair_family(n, 0.4, rng);
            auto r = proposition_check(2, n, path_graph(11), a, b);
            INFO(format_pair_family(a) << "--\n" << format_pair_family(b) << r.detail);
            CHECK(r.consistent());
        }
        for (int t = 0; t < 8; ++t) {
            auto a = random_pair_family(3, 0.5, rng);
            auto b = random_pair_family(3, 0.5, rng);
            auto r = proposition_check(1, 3, caterpillar(), a, b);
            INFO(format_pair_family(a) << "--\n" << format_pair_family(b) << r.detail);
            CHECK(r.consistent());
        }
    }

    TEST_CASE("hybrid views")
    {
        std::mt19937_64 rng(9);
        for (int t = 0; t < 6; ++t) {
            auto a = random_pair_family(3, 0.5, rng);
            auto b = random_pair_family(3, 0.5, rng);
            HybridOptions opt;
            opt.seed = t + 1;
            auto r = hybrid_view_experiment(2, 3, a, b, opt);
            CHECK(r.identical());
            CHECK(r.compared == 27);
        }
        auto a = family(3, {{1, 2}});
        CHECK(hybrid_view_experiment(2, 3, a, a).identical());
        HybridOptions shuffled;
        shuffled.shuffle_layout = true;
        auto r = hybrid_view_experiment(2, 3, a, family(3, {{2, 3}}), shuffled);
        CHECK(!r.identical());
        CHECK(!r.first_difference.empty());

    }

    TEST_CASE("fooling bound")
    {
        CHECK(fooling_bound(8, 2, 11) == 1);
        CHECK(fooling_bound(1000, 2, 11) == 63);
        double r = static_cast<double>(fooling_bound(10000, 2, 11)) / 10000;
        CHECK(r >= 1.0 / 17);
        CHECK(r <= 1.0 / 15);
        CHECK_THROWS_AS(fooling_bound(0, 2, 11), ContractError);
    }
}
