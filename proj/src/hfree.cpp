#include "lcert/hfree.hpp"

#include <algorithm>
#include <map>

#include "lcert/paths.hpp"

namespace lc {

namespace {

// components of H - h, each sorted, ordered by smallest identifier
std::vector<std::vector<VertexId>> components_without(const LabeledGraph& h, VertexId x)
{
    int skip = h.index(x);
    std::vector<int> comp(h.size(), -1);
    std::vector<std::vector<VertexId>> out;
    for (int s = 0; s < h.size(); ++s) {
        if (s == skip || comp[s] >= 0)
            continue;
        int c = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<int> stack{s};
        comp[s] = c;
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            out[c].push_back(h.id(a));
            for (int b : h.adj(a))
                if (b != skip && comp[b] < 0) {
                    comp[b] = c;
                    stack.push_back(b);
                }
        }
        std::sort(out[c].begin(), out[c].end());
    }
    return out;
}

bool connected(const LabeledGraph& h)
{
    if (h.size() == 0)
        return false;
    auto d = bfs(h, 0);
    return std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; });
}

std::string join_ids(const LabeledGraph& g, const std::vector<int>& phi)
{
    std::string s;
    for (int x : phi) {
        if (!s.empty())
            s += '-';
        s += std::to_string(g.id(x));
    }
    return s;
}

// candidate sets for a pattern: pinned identifiers get a single host vertex,
// every other pattern vertex may use `rest`
std::vector<Bits> pinned_candidates(const LabeledGraph& pattern, const std::map<VertexId, int>& pins,
                                    const Bits& rest, int host_size)
{
    std::vector<Bits> c(pattern.size());
    for (int p = 0; p < pattern.size(); ++p) {
        auto it = pins.find(pattern.id(p));
        if (it == pins.end()) {
            c[p] = rest;
        }
        else {
            c[p] = Bits(host_size);
            c[p].set(it->second);
        }
    }
    return c;
}

} // namespace

std::vector<PointedColumn> enumerate_pointed_graphs(const LabeledGraph& h)
{
    std::vector<PointedColumn> out;
    for (auto x : h.ids()) {
        auto comps = components_without(h, x);
        if (comps.size() > 30)
            throw ResourceError("too many components in H - h");
        for (std::uint32_t m = 0; m < (1u << comps.size()); ++m) {
            std::vector<VertexId> keep{x};
            for (std::size_t j = 0; j < comps.size(); ++j)
                if (m & (1u << j))
                    keep.insert(keep.end(), comps[j].begin(), comps[j].end());
            std::sort(keep.begin(), keep.end());
            out.push_back({x, m, PointedGraph{induced_subgraph(h, keep), {x}}});
        }
    }
    return out;
}

PointedGraph complement_in(const LabeledGraph& h, const PointedGraph& p)
{
    std::vector<VertexId> keep;
    for (auto x : h.ids())
        if (!p.graph.contains(x) || p.pointed.count(x))
            keep.push_back(x);
    return {induced_subgraph(h, keep), p.pointed};
}

std::optional<PointedGraph> disjoint_union_in(const LabeledGraph& h, const PointedGraph& a, const PointedGraph& b)
{
    for (auto x : a.graph.ids()) {
        if (b.graph.contains(x))
            return std::nullopt;
        for (auto y : b.graph.ids())
            if (h.has_edge(x, y))
                return std::nullopt;
    }
    std::vector<VertexId> keep = a.graph.ids();
    keep.insert(keep.end(), b.graph.ids().begin(), b.graph.ids().end());
    std::sort(keep.begin(), keep.end());
    PointedGraph out{induced_subgraph(h, keep), a.pointed};
    out.pointed.insert(b.pointed.begin(), b.pointed.end());
    return out;
}

std::vector<bool> h_table_row(const LabeledGraph& g, const EccTable& t, const std::vector<PointedColumn>& cols,
                              EmbedMode mode, VertexId v)
{
    auto& cell = t.at(v, 2);
    auto q = near_set(g, t, 2, cell->id, cell->dist - 1);
    int iv = g.index(v);
    std::vector<bool> row(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        auto& pat = cols[j].pg.graph;
        if (pat.size() > 1 && q.count() == 0)
            continue;
        EmbeddingQuery eq;
        eq.host = &g;
        eq.pattern = &pat;
        eq.mode = mode;
        eq.candidates = pinned_candidates(pat, {{cols[j].h, iv}}, q, g.size());
        row[j] = embedding_exists(eq);
    }
    return row;
}

HTable h_table(const LabeledGraph& g, int k, const LabeledGraph& h, EmbedMode mode)
{
    auto t = compute_ecc_table(g, k, Epsilon::half());
    auto cols = enumerate_pointed_graphs(h);
    HTable out;
    out.columns = cols.size();
    if (t.layers < 2)
        return out;
    for (auto& [v, row] : t.rows)
        if (row[1])
            out.rows[v] = h_table_row(g, t, cols, mode, v);
    return out;
}

BitString encode_htable(const HTable& t)
{
    BitWriter w;
    w.gamma(t.columns);
    w.gamma(t.rows.size());
    for (auto& [v, bits] : t.rows) {
        w.gamma(v);
        for (bool b : bits)
            w.bit(b);
    }
    return w.take();
}

HTable decode_htable(const BitString& b)
{
    BitReader r(b);
    HTable t;
    t.columns = r.gamma();
    auto rows = r.gamma();
    if (rows > b.size() || (rows > 0 && t.columns > b.size()) || t.columns > (1u << 24))
        throw DecodeError("table dimensions exceed field");
    VertexId prev = 0;
    for (std::uint64_t j = 0; j < rows; ++j) {
        VertexId v = r.gamma();
        if (j > 0 && v <= prev)
            throw DecodeError("rows not sorted");
        prev = v;
        std::vector<bool> bits(t.columns);
        for (std::size_t c = 0; c < t.columns; ++c)
            bits[c] = r.bit();
        t.rows[v] = std::move(bits);
    }
    r.expect_done();
    return t;
}

const std::vector<std::string> hfree_fields{"SpanningTree", "Table", "Components", "Pieces", "HTable"};

CertScheme h_free_scheme(const LabeledGraph& h, int k, EmbedMode mode)
{
    if (k < 2)
        throw ContractError("k must be at least 2");
    if (h.size() > 4 * k - 1)
        throw ContractError("H has more than 4k-1 vertices");
    if (!connected(h))
        throw ContractError("H must be connected");
    auto cols = std::make_shared<std::vector<PointedColumn>>(enumerate_pointed_graphs(h));
    // index of the complementary column of each column
    auto partner = std::make_shared<std::vector<std::size_t>>(cols->size());
    {
        std::map<std::pair<VertexId, std::uint32_t>, std::size_t> at;
        for (std::size_t j = 0; j < cols->size(); ++j)
            at[{(*cols)[j].h, (*cols)[j].mask}] = j;
        for (std::size_t j = 0; j < cols->size(); ++j) {
            auto& c = (*cols)[j];
            auto full = static_cast<std::uint32_t>((1ull << components_without(h, c.h).size()) - 1);
            (*partner)[j] = at.at({c.h, full ^ c.mask});
        }
    }
    CertScheme s;
    s.name = mode == EmbedMode::Induced ? "h_free" : "h_free_subgraph";
    s.radius = k;
    s.fields = hfree_fields;
    s.prover = [k, h, mode](const LabeledGraph& g) {
        CertificateAssignment a;
        for (auto v : g.ids())
            a[v];
        auto p = compute_eccs(g, k, Epsilon::half());
        add_tg_fields(g, p, a);
        add_piece_fields(g, p, a);
        auto bits = encode_htable(h_table(g, k, h, mode));
        for (auto& [v, c] : a)
            c.add("HTable", bits);
        return a;
    };
    s.verifier = [k, h, mode, cols, partner](const RadiusView& view) {
        LayeredContext ctx;
        auto r = verify_gu(view, k, Epsilon::half(), hfree_fields, ctx);
        if (!r.accept)
            return r;
        r = check_field_equal(ctx, "HTable");
        if (!r.accept)
            return r;
        VertexId u = view.center;
        HTable table;
        try {
            table = decode_htable(ctx.cert(u).field("HTable"));
        }
        catch (const DecodeError&) {
            return NodeResult::reject("decode");
        }
        auto& t = ctx.table;
        if (table.columns != cols->size())
            return NodeResult::reject("htable-shape");
        std::set<VertexId> expect;
        if (t.layers >= 2)
            for (auto& [v, row] : t.rows)
                if (row[1])
                    expect.insert(v);
        if (table.rows.size() != expect.size())
            return NodeResult::reject("htable-shape");
        for (auto& [v, bits] : table.rows)
            if (!expect.count(v) || bits.size() != cols->size())
                return NodeResult::reject("htable-shape");

        std::string why;
        auto own = ctx.witnessed(u, &why);
        if (!own)
            return NodeResult::reject(why);
        auto& G = own->graph;
        Bits mine(G.size());
        for (auto x : own->witnessed)
            mine.set(G.index(x));
        bool high = ctx.true_level(u) >= 2;
        VertexId cu = high ? t.at(u, 2)->id : 0;

        // (iii) rows of the own halo
        if (high)
            for (auto v : expect) {
                auto& cell = t.at(v, 2);
                if (cell->id == cu && h_table_row(G, t, *cols, mode, v) != table.rows.at(v))
                    return NodeResult::reject("htable-value");
            }

        // (iv) a copy of H in G_<=u, vertices outside V_<=u in distinct ECC_2's
        std::vector<int> klass(G.size(), -2);
        std::map<VertexId, int> label_index;
        for (int x = 0; x < G.size(); ++x) {
            if (mine.test(x)) {
                klass[x] = -1;
                continue;
            }
            if (t.layers < 2 || !t.has(G.id(x)))
                continue;
            auto& c = t.at(G.id(x), 2);
            if (c && c->dist == 0)
                klass[x] = label_index.emplace(c->id, static_cast<int>(label_index.size())).first->second;
        }
        {
            EmbeddingQuery eq;
            eq.host = &G;
            eq.pattern = &h;
            eq.mode = mode;
            eq.klass = &klass;
            std::string found;
            search_embeddings(eq, [&](const std::vector<int>& phi) {
                found = join_ids(G, phi);
                return false;
            });
            if (!found.empty())
                return NodeResult::reject("copy:" + found);
        }
        if (!high)
            return NodeResult::ok();

        // glue candidates: witnessed, within 1..k-1 of another ECC_2
        struct End {
            int v;
            VertexId c;
            Bits near;
            std::vector<std::size_t> set;
        };
        std::vector<End> ends;
        for (int x = 0; x < G.size(); ++x) {
            if (!mine.test(x) || !table.rows.count(G.id(x)))
                continue;
            auto& c = t.at(G.id(x), 2);
            if (c->id == cu || c->dist < 1 || c->dist > k - 1)
                continue;
            End e{x, c->id, near_set(G, t, 2, c->id, c->dist), {}};
            auto& bits = table.rows.at(G.id(x));
            for (std::size_t j = 0; j < bits.size(); ++j)
                if (bits[j])
                    e.set.push_back(j);
            ends.push_back(std::move(e));
        }
        Bits own_class = near_set(G, t, 2, cu, 0);
        auto start_found = [&](const LabeledGraph& pat, const std::map<VertexId, int>& pins, const Bits& rest) {
            EmbeddingQuery eq;
            eq.host = &G;
            eq.pattern = &pat;
            eq.mode = mode;
            eq.candidates = pinned_candidates(pat, pins, rest, G.size());
            eq.must_touch = own_class;
            std::string found;
            search_embeddings(eq, [&](const std::vector<int>& phi) {
                found = join_ids(G, phi);
                return false;
            });
            return found;
        };

        // (v) one end piece
        for (auto& e : ends) {
            auto rest = mine.minus(e.near);
            for (auto j : e.set) {
                auto& start = (*cols)[(*partner)[j]];
                auto found = start_found(start.pg.graph, {{start.h, e.v}}, rest);
                if (!found.empty())
                    return NodeResult::reject("glue-h:" + std::to_string(G.id(e.v)) + ":" + std::to_string(j) +
                                              ":" + found);
            }
        }

        // (vi) two end pieces at two other ECC_2's
        std::map<std::pair<std::size_t, std::size_t>, std::optional<PointedGraph>> starts;
        auto start_of = [&](std::size_t a, std::size_t b) -> const std::optional<PointedGraph>& {
            auto key = std::make_pair(a, b);
            auto it = starts.find(key);
            if (it != starts.end())
                return it->second;
            std::optional<PointedGraph> s;
            if ((*cols)[a].h != (*cols)[b].h)
                if (auto un = disjoint_union_in(h, (*cols)[a].pg, (*cols)[b].pg))
                    s = complement_in(h, *un);
            return starts.emplace(key, std::move(s)).first->second;
        };
        for (std::size_t a = 0; a < ends.size(); ++a)
            for (std::size_t b = a + 1; b < ends.size(); ++b) {
                auto& e1 = ends[a];
                auto& e2 = ends[b];
                if (e1.c == e2.c || e1.near.test(e2.v) || e2.near.test(e1.v))
                    continue;
                auto rest = mine.minus(e1.near).minus(e2.near);
                for (auto j1 : e1.set)
                    for (auto j2 : e2.set) {
                        auto& st = start_of(j1, j2);
                        if (!st)
                            continue;
                        auto found = start_found(st->graph, {{(*cols)[j1].h, e1.v}, {(*cols)[j2].h, e2.v}}, rest);
                        if (!found.empty())
                            return NodeResult::reject("glue-hh:" + std::to_string(G.id(e1.v)) + ":" +
                                                      std::to_string(G.id(e2.v)) + ":" + std::to_string(j1) + ":" +
                                                      std::to_string(j2) + ":" + found);
                    }
            }
        return NodeResult::ok();
    };
    return s;
}

} // namespace lc
