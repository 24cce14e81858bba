#include "doctest.h"

#include <random>

#include "instances.hpp"
#include "lcert/generators.hpp"
#include "lcert/hfree.hpp"
#include "lcert/paths.hpp"

using namespace lc;

namespace {

std::vector<int> pinned_copy(const LabeledGraph& g, const LabeledGraph& pat, VertexId h, VertexId v, const Bits& rest,
                             EmbedMode mode)
{
    EmbeddingQuery q;
    q.host = &g;
    q.pattern = &pat;
    q.mode = mode;
    for (auto x : pat.ids()) {
        Bits b = rest;
        if (x == h) {
            b = Bits(g.size());
            b.set(g.index(v));
        }
        q.candidates.push_back(b);
    }
    std::vector<int> out;
    search_embeddings(q, [&](const std::vector<int>& phi) {
        out = phi;
        return false;
    });
    return out;
}

// the piece of the halo of v an end piece may use
Bits end_room(const LabeledGraph& g, const EccTable& t, VertexId v)
{
    auto& c = t.at(v, 2);
    return near_set(g, t, 2, c->id, c->dist - 1);
}

// Rebuilds the copy of H a glue rejection stands for and checks it in G.
bool extract_copy(const LabeledGraph& g, int k, const LabeledGraph& h, EmbedMode mode, const std::string& reason)
{
    auto parts = split_reason(reason);
    auto cols = enumerate_pointed_graphs(h);
    auto t = compute_ecc_table(g, k, Epsilon::half());
    std::map<VertexId, VertexId> image; // H id -> G id
    auto place = [&](const LabeledGraph& pat, const std::vector<VertexId>& ids) {
        REQUIRE(ids.size() == pat.ids().size());
        for (std::size_t j = 0; j < ids.size(); ++j) {
            auto [it, fresh] = image.emplace(pat.ids()[j], ids[j]);
            if (!fresh)
                REQUIRE(it->second == ids[j]);
        }
    };
    auto add_end = [&](VertexId v, std::size_t j) {
        auto& col = cols[j];
        auto phi = pinned_copy(g, col.pg.graph, col.h, v, end_room(g, t, v), mode);
        REQUIRE(!phi.empty());
        std::vector<VertexId> ids;
        for (int x : phi)
            ids.push_back(g.id(x));
        place(col.pg.graph, ids);
    };
    if (parts[0] == "glue-h") {
        VertexId v = std::stoull(parts[1]);
        auto j = std::stoul(parts[2]);
        place(complement_in(h, cols[j].pg).graph, parse_ids(parts[3]));
        add_end(v, j);
    }
    else if (parts[0] == "glue-hh") {
        VertexId v1 = std::stoull(parts[1]), v2 = std::stoull(parts[2]);
        auto j1 = std::stoul(parts[3]), j2 = std::stoul(parts[4]);
        auto un = disjoint_union_in(h, cols[j1].pg, cols[j2].pg);
        REQUIRE(un);
        place(complement_in(h, *un).graph, parse_ids(parts[5]));
        add_end(v1, j1);
        add_end(v2, j2);
    }
    else {
        return true;
    }
    if (image.size() != static_cast<std::size_t>(h.size()))
        return false;
    std::set<VertexId> used;
    for (auto& [a, x] : image)
        used.insert(x);
    if (used.size() != image.size())
        return false;
    for (auto a : h.ids())
        for (auto b : h.ids()) {
            if (a >= b)
                continue;
            bool e = g.has_edge(image[a], image[b]);
            if (h.has_edge(a, b) ? !e : (mode == EmbedMode::Induced && e))
                return false;
        }
    return true;
}

} // namespace

TEST_SUITE("hfree")
{
    TEST_CASE("pointed graph enumeration")
    {
        auto one = enumerate_pointed_graphs(complete_graph(1));
        REQUIRE(one.size() == 1);
        CHECK(one[0].pg.graph.size() == 1);
        CHECK(one[0].pg.pointed == std::set<VertexId>{1});
        CHECK(enumerate_pointed_graphs(path_graph(3)).size() == 8);
        for (int n = 1; n <= 6; ++n)
            for (auto& h : nonisomorphic_graphs(n)) {
                auto cols = enumerate_pointed_graphs(h);
                CHECK(cols.size() <= static_cast<std::size_t>(n) << (n - 1));
                for (auto& c : cols) {
                    auto back = complement_in(h, complement_in(h, c.pg));
                    CHECK(back == c.pg);
                }
            }
    }

    TEST_CASE("disjoint unions of pointed graphs")
    {
        auto h = path_graph(5);
        auto cols = enumerate_pointed_graphs(h);
        // ({1}, {1}) and ({5, 4}, {5}) are anticomplete; ({1, 2}) and ({3, ...}) are not
        PointedGraph a{induced_subgraph(h, std::vector<VertexId>{1}), {1}};
        PointedGraph b{induced_subgraph(h, std::vector<VertexId>{4, 5}), {5}};
        PointedGraph c{induced_subgraph(h, std::vector<VertexId>{2, 3}), {3}};
        auto u = disjoint_union_in(h, a, b);
        REQUIRE(u);
        CHECK(u->graph.size() == 3);
        CHECK(u->pointed == std::set<VertexId>{1, 5});
        CHECK(!disjoint_union_in(h, a, c));
        CHECK(!disjoint_union_in(h, c, c));
        auto start = complement_in(h, *u);
        CHECK(start.graph.ids() == std::vector<VertexId>{1, 2, 3, 5});
    }

    TEST_CASE("HTable examples")
    {
        auto paw = paw_graph();
        auto cols = enumerate_pointed_graphs(paw);
        std::size_t whole = cols.size();
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (cols[j].h == 4 && cols[j].pg.graph.size() == 4)
                whole = j;
        REQUIRE(whole < cols.size());

        CHECK(h_table(path_graph(8), 2, paw, EmbedMode::Induced).rows.empty());

        // a triangle hanging one step from a clique, v one step further
        GraphBuilder b;
        auto c = b.clique(13);
        auto tri = b.clique(3);
        for (auto x : tri)
            b.edge(x, c[0]);
        auto v = b.vertex();
        b.edge(v, tri[0]);
        auto g = b.build();
        auto tab = h_table(g, 3, paw, EmbedMode::Induced);
        REQUIRE(tab.rows.count(v));
        CHECK(tab.rows.at(v)[whole]);

        // a 4-cycle through v closes only with a chord inside the clique
        auto c4 = cycle_graph(4);
        auto c4cols = enumerate_pointed_graphs(c4);
        std::size_t full = 0;
        for (std::size_t j = 0; j < c4cols.size(); ++j)
            if (c4cols[j].h == 1 && c4cols[j].pg.graph.size() == 4)
                full = j;
        GraphBuilder b2;
        auto k7 = b2.clique(7);
        auto w = b2.vertex();
        b2.edge(w, k7[0]);
        b2.edge(w, k7[1]);
        auto g2 = b2.build();
        CHECK(h_table(g2, 2, c4, EmbedMode::Subgraph).rows.at(w)[full]);
        CHECK(!h_table(g2, 2, c4, EmbedMode::Induced).rows.at(w)[full]);

        CHECK(decode_htable(encode_htable(tab)) == tab);
    }

    TEST_CASE("H-freeness scheme examples")
    {
        std::mt19937_64 rng(3);
        auto c4 = cycle_graph(4);
        CHECK(run_certification(random_tree(15, rng), h_free_scheme(c4, 2, EmbedMode::Induced)).accepted);
        CHECK(!run_certification(grid_graph(3, 3), h_free_scheme(c4, 2, EmbedMode::Induced)).accepted);
        CHECK(run_certification(petersen_graph(), h_free_scheme(c4, 2, EmbedMode::Induced)).accepted);
        CHECK(run_certification(petersen_graph(), h_free_scheme(c4, 2, EmbedMode::Subgraph)).accepted);
        CHECK_THROWS_AS(h_free_scheme(path_graph(8), 2, EmbedMode::Induced), ContractError);
        CHECK_THROWS_AS(h_free_scheme(LabeledGraph::build({1, 2}, {}), 2, EmbedMode::Induced), ContractError);
    }

    TEST_CASE("H-freeness agrees with the embedding oracle and glue copies extract")
    {
        std::vector<LabeledGraph> patterns{path_graph(4), cycle_graph(4), cycle_graph(5), star_graph(3), paw_graph()};
        std::mt19937_64 rng(19);
        std::vector<LabeledGraph> graphs;
        for (int t = 0; t < 24; ++t)
            graphs.push_back(random_gnp(4 + static_cast<int>(rng() % 13), 0.1 + 0.05 * (t % 5), rng, t % 2));
        for (int t = 0; t < 12; ++t)
            graphs.push_back(blob_instance(rng, 24, 2));
        int glued = 0;
        for (auto& g : graphs)
            for (auto& h : patterns)
                for (auto mode : {EmbedMode::Induced, EmbedMode::Subgraph}) {
                    bool has = find_induced_embedding(g, h, mode).has_value();
                    auto v = run_certification(g, h_free_scheme(h, 2, mode));
                    INFO(serialize_graph(g) << "H:\n" << serialize_graph(h));
                    CHECK(v.accepted == !has);
                    for (auto& [x, why] : v.reasons) {
                        glued += why.rfind("glue", 0) == 0;
                        INFO(why);
                        CHECK(extract_copy(g, 2, h, mode, why));
                    }
                }
        MESSAGE("glue rejections: " << glued);
    }

    TEST_CASE("one-end glue on longer patterns")
    {
        std::vector<LabeledGraph> patterns{path_graph(7), cycle_graph(6)};
        std::mt19937_64 rng(41);
        int glued = 0;
        for (int t = 0; t < 20; ++t) {
            auto g = blob_instance(rng, 30, 2);
            for (auto& h : patterns)
                for (auto mode : {EmbedMode::Induced, EmbedMode::Subgraph}) {
                    bool has = find_induced_embedding(g, h, mode).has_value();
                    auto v = run_certification(g, h_free_scheme(h, 2, mode));
                    CHECK(v.accepted == !has);
                    for (auto& [x, why] : v.reasons) {
                        glued += why.rfind("glue-h:", 0) == 0;
                        INFO(why);
                        CHECK(extract_copy(g, 2, h, mode, why));
                    }
                }
        }
        CHECK(glued > 0);
    }

    TEST_CASE("two-end glue across three ECCs")
    {
        auto inst = instances::spider_instance();
        auto& g = inst.g;
        auto& h = inst.h;
        REQUIRE(h.size() == 11);
        REQUIRE(find_induced_embedding(g, h, EmbedMode::Induced));
        auto v = run_certification(g, h_free_scheme(h, 3, EmbedMode::Induced));
        CHECK(!v.accepted);
        int glued = 0;
        for (auto& [id, why] : v.reasons) {
            glued += why.rfind("glue-hh:", 0) == 0;
            INFO(why);
            CHECK(extract_copy(g, 3, h, EmbedMode::Induced, why));
        }
        CHECK(glued > 0);
    }
}
