#include "lcert/basic.hpp"

#include <algorithm>

#include "lcert/layered.hpp"

namespace lc {

BitString encode_distance(std::uint64_t label)
{
    BitWriter w;
    w.gamma(label);
    return w.take();
}

namespace {

std::optional<std::uint64_t> read_distance(const RadiusView& view, VertexId v)
{
    auto bits = view.certificate(v);
    if (!bits)
        return std::nullopt;
    try {
        auto c = Certificate::decode(*bits, {"Distance"});
        BitReader r(c.field("Distance"));
        auto x = r.gamma();
        r.expect_done();
        return x;
    }
    catch (const DecodeError&) {
        return std::nullopt;
    }
}

CertificateAssignment vector_prover(const LabeledGraph& g)
{
    CertificateAssignment a;
    auto recs = renaming_records(g);
    for (auto v : g.ids()) {
        auto& r = recs.at(v);
        BitString vec;
        for (std::uint64_t j = 0; j < r.n; ++j)
            vec.push_back(false);
        for (auto w : g.neighbor_ids(v))
            vec.set(recs.at(w).start - 1, true);
        a[v].add("Renaming", encode_renaming(r));
        a[v].add("Vector", vec);
    }
    return a;
}

const std::vector<std::string> vector_fields{"Renaming", "Vector"};

// Renaming and the center's own vector; fills every readable name in the view.
NodeResult check_vectors(const RadiusView& view, std::map<VertexId, Certificate>& certs,
                         std::map<VertexId, std::uint64_t>& names)
{
    if (!decode_view(view, vector_fields, certs))
        return NodeResult::reject("decode");
    auto r = verify_renaming(view, certs, names);
    if (!r.accept)
        return r;
    VertexId u = view.center;
    auto n = decode_renaming(certs.at(u).field("Renaming")).n;
    auto& mine = certs.at(u).field("Vector");
    if (mine.size() != n)
        return NodeResult::reject("vector");
    std::vector<bool> expect(n, false);
    int ui = view.graph.index(u);
    for (int x : view.graph.adj(ui)) {
        auto w = view.graph.id(x);
        expect[names.at(w) - 1] = true;
        auto& theirs = certs.at(w).field("Vector");
        if (theirs.size() != n || !theirs.get(names.at(u) - 1))
            return NodeResult::reject("vector");
    }
    for (std::size_t j = 0; j < n; ++j)
        if (mine.get(j) != expect[j])
            return NodeResult::reject("vector");
    // names further away come from the (individually checked) records
    for (auto& [v, c] : certs)
        if (!names.count(v)) {
            try {
                names[v] = decode_renaming(c.field("Renaming")).start;
            }
            catch (const DecodeError&) {
                return NodeResult::reject("decode");
            }
        }
    return NodeResult::ok();
}

bool vector_bit(const std::map<VertexId, Certificate>& certs, VertexId x, std::uint64_t name)
{
    auto& v = certs.at(x).field("Vector");
    return name >= 1 && name <= v.size() && v.get(name - 1);
}

} // namespace

CertScheme acyclicity_scheme()
{
    CertScheme s;
    s.name = "acyclicity";
    s.radius = 1;
    s.fields = {"Distance"};
    s.prover = [](const LabeledGraph& g) {
        CertificateAssignment a;
        for (auto& [v, p] : bfs_forest(g))
            a[v];
        std::vector<int> dist(g.size(), -1);
        for (int v = 0; v < g.size(); ++v) {
            if (dist[v] >= 0)
                continue;
            auto d = bfs(g, v);
            for (int w = 0; w < g.size(); ++w)
                if (d[w] >= 0)
                    dist[w] = d[w];
        }
        for (int v = 0; v < g.size(); ++v)
            a[g.id(v)].add("Distance", encode_distance(static_cast<std::uint64_t>(dist[v])));
        return a;
    };
    s.verifier = [](const RadiusView& view) {
        auto mine = read_distance(view, view.center);
        if (!mine)
            return NodeResult::reject("decode");
        int lower = 0;
        int ui = view.graph.index(view.center);
        for (int x : view.graph.adj(ui)) {
            auto theirs = read_distance(view, view.graph.id(x));
            if (!theirs)
                return NodeResult::reject("decode");
            if (*mine > 0 && *theirs + 1 == *mine)
                ++lower;
            else if (*theirs != *mine + 1)
                return NodeResult::reject("distance");
        }
        if (*mine > 0 && lower != 1)
            return NodeResult::reject("parent");
        return NodeResult::ok();
    };
    return s;
}

CertScheme kk_free_scheme(int q)
{
    if (q < 3)
        throw ContractError("clique size must be at least 3");
    CertScheme s;
    s.name = "kk_free";
    s.radius = 1;
    s.fields = vector_fields;
    s.prover = vector_prover;
    s.verifier = [q](const RadiusView& view) {
        std::map<VertexId, Certificate> certs;
        std::map<VertexId, std::uint64_t> names;
        auto r = check_vectors(view, certs, names);
        if (!r.accept)
            return r;
        // cliques through the center, adjacency among neighbors from vectors
        int ui = view.graph.index(view.center);
        std::vector<VertexId> nb;
        for (int x : view.graph.adj(ui))
            nb.push_back(view.graph.id(x));
        std::sort(nb.begin(), nb.end(), [&](VertexId a, VertexId b) {
            return view.graph.degree(view.graph.index(a)) > view.graph.degree(view.graph.index(b));
        });
        std::vector<VertexId> chosen;
        auto grow = [&](auto&& self, std::size_t from) -> bool {
            if (static_cast<int>(chosen.size()) == q - 1)
                return true;
            for (std::size_t i = from; i < nb.size(); ++i) {
                bool ok = true;
                for (auto c : chosen)
                    if (!vector_bit(certs, c, names.at(nb[i]))) {
                        ok = false;
                        break;
                    }
                if (!ok)
                    continue;
                chosen.push_back(nb[i]);
                if (self(self, i + 1))
                    return true;
                chosen.pop_back();
            }
            return false;
        };
        if (grow(grow, 0))
            return NodeResult::reject("clique");
        return NodeResult::ok();
    };
    return s;
}

CertScheme centered_h_scheme(const LabeledGraph& h, VertexId w, int d)
{
    if (d < 1)
        throw ContractError("radius must be at least 1");
    auto ecc = bfs(h, h.index(w));
    for (int x : ecc)
        if (x < 0 || x > d)
            throw ContractError("pattern vertex farther than d from the designated vertex");
    CertScheme s;
    s.name = "centered_h";
    s.radius = d;
    s.fields = vector_fields;
    s.prover = vector_prover;
    s.verifier = [h, w, d](const RadiusView& view) {
        std::map<VertexId, Certificate> certs;
        std::map<VertexId, std::uint64_t> names;
        auto r = check_vectors(view, certs, names);
        if (!r.accept)
            return r;
        // restore the edges between two vertices at distance exactly d
        auto edges = view.graph.edges();
        auto rim = view.vertices_within(d);
        std::vector<VertexId> outer;
        for (auto x : rim)
            if (view.dist(x) == d)
                outer.push_back(x);
        for (std::size_t a = 0; a < outer.size(); ++a)
            for (std::size_t b = a + 1; b < outer.size(); ++b) {
                auto x = outer[a], y = outer[b];
                if (!certs.count(x) || !names.count(y))
                    continue;
                if (vector_bit(certs, x, names.at(y)))
                    edges.push_back({std::min(x, y), std::max(x, y)});
            }
        auto ball = LabeledGraph::build(view.graph.ids(), edges);
        EmbeddingQuery q;
        q.host = &ball;
        q.pattern = &h;
        q.mode = EmbedMode::Induced;
        q.candidates.assign(h.size(), Bits());
        Bits me(ball.size());
        me.set(ball.index(view.center));
        q.candidates[h.index(w)] = me;
        if (embedding_exists(q))
            return NodeResult::reject("copy");
        return NodeResult::ok();
    };
    return s;
}

} // namespace lc
