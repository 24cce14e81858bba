#include "lcert/gadgets.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "lcert/oracles.hpp"

namespace lc {

void PairFamily::add(int i, int j)
{
    if (i == j || i < 1 || j < 1 || i > n || j > n)
        throw ContractError("pair {" + std::to_string(i) + "," + std::to_string(j) + "} outside [1," +
                            std::to_string(n) + "]");
    pairs.insert(std::minmax(i, j));
}

bool PairFamily::contains(int i, int j) const
{
    return pairs.count(std::minmax(i, j)) != 0;
}

PairFamily complement(const PairFamily& a)
{
    PairFamily c{a.n, {}};
    for (int i = 1; i <= a.n; ++i)
        for (int j = i + 1; j <= a.n; ++j)
            if (!a.contains(i, j))
                c.pairs.insert({i, j});
    return c;
}

bool intersects(const PairFamily& a, const PairFamily& b)
{
    return std::any_of(a.pairs.begin(), a.pairs.end(), [&](auto& p) { return b.pairs.count(p) != 0; });
}

PairFamily random_pair_family(int n, double p, std::mt19937_64& rng)
{
    std::bernoulli_distribution keep(p);
    PairFamily a{n, {}};
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (keep(rng))
                a.pairs.insert({i, j});
    return a;
}

PairFamily parse_pair_family(int n, const std::string& text)
{
    PairFamily a{n, {}};
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto h = line.find('#');
        if (h != std::string::npos)
            line.resize(h);
        std::istringstream ls(line);
        int i = 0, j = 0;
        if (!(ls >> i)) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw ParseError("pair family line " + std::to_string(no) + ": expected two integers");
            continue;
        }
        std::string rest;
        if (!(ls >> j) || (ls >> rest))
            throw ParseError("pair family line " + std::to_string(no) + ": expected two integers");
        try {
            a.add(i, j);
        }
        catch (const ContractError& e) {
            throw ParseError("pair family line " + std::to_string(no) + ": " + e.what());
        }
    }
    return a;
}

std::string format_pair_family(const PairFamily& a)
{
    std::ostringstream out;
    for (auto [i, j] : a.pairs)
        out << i << ' ' << j << '\n';
    return out.str();
}

LabeledGraph bipartite_encoder(const PairFamily& a)
{
    int n = a.n;
    std::vector<VertexId> vs(2 * n);
    std::iota(vs.begin(), vs.end(), VertexId{1});
    std::vector<Edge> es;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i == j || !a.contains(i, j))
                es.emplace_back(i, n + j);
    return LabeledGraph::build(std::move(vs), es);
}

std::optional<CliqueSlot> GadgetInstance::slot_of(VertexId v) const
{
    auto per_side = static_cast<VertexId>(2 * k * n);
    if (v < 1 || v > 2 * per_side)
        return std::nullopt;
    auto x = v - 1;
    return CliqueSlot{static_cast<int>(x / per_side), static_cast<int>((x % per_side) / n) + 1,
                      static_cast<int>(x % n) + 1};
}

namespace {

bool is_tree(const LabeledGraph& t)
{
    return t.size() > 0 && is_connected(t) && static_cast<int>(t.edge_count()) == t.size() - 1;
}

int diameter(const LabeledGraph& t)
{
    int best = 0;
    for (int s = 0; s < t.size(); ++s) {
        auto d = bfs(t, s);
        best = std::max(best, *std::max_element(d.begin(), d.end()));
    }
    return best;
}

bool is_path(const LabeledGraph& t)
{
    if (!is_tree(t))
        return false;
    for (int i = 0; i < t.size(); ++i)
        if (t.degree(i) > 2)
            return false;
    return true;
}

// vertices on the tree path from a to b, as indices
std::vector<int> tree_path(const LabeledGraph& t, int a, int b)
{
    std::vector<int> parent(t.size(), -1);
    std::vector<int> order{a};
    parent[a] = a;
    for (std::size_t h = 0; h < order.size(); ++h)
        for (int y : t.adj(order[h]))
            if (parent[y] < 0) {
                parent[y] = order[h];
                order.push_back(y);
            }
    std::vector<int> p{b};
    while (p.back() != a)
        p.push_back(parent[p.back()]);
    std::reverse(p.begin(), p.end());
    return p;
}

LabeledGraph permuted(const LabeledGraph& g, std::uint64_t seed)
{
    std::vector<VertexId> ids = g.ids();
    std::mt19937_64 rng(seed);
    std::shuffle(ids.begin(), ids.end(), rng);
    std::map<VertexId, VertexId> to;
    for (int i = 0; i < g.size(); ++i)
        to[g.id(i)] = ids[i];
    std::vector<Edge> es;
    for (auto [a, b] : g.edges())
        es.emplace_back(to[a], to[b]);
    return LabeledGraph::build(g.ids(), es);
}

} // namespace

std::vector<VertexId> gadget_spine(const LabeledGraph& t, int k)
{
    std::vector<VertexId> best;
    for (int s = 0; s < t.size(); ++s) {
        if (t.degree(s) < 2)
            continue;
        auto d = bfs(t, s);
        for (int e = 0; e < t.size(); ++e) {
            if (d[e] != 4 * k || t.degree(e) < 2)
                continue;
            auto p = tree_path(t, s, e);
            std::vector<VertexId> ids;
            for (int x : p)
                ids.push_back(t.id(x));
            if (best.empty() || ids < best)
                best = std::move(ids);
        }
    }
    if (best.empty())
        throw ShapeError("T has no leafless path with " + std::to_string(4 * k) + " edges");
    return best;
}

GadgetInstance build_gadget(int k, int n, const LabeledGraph& t, const PairFamily& a, const PairFamily& b)
{
    if (k < 1 || n < 2)
        throw ContractError("gadget needs k >= 1 and n >= 2");
    if (a.n != n || b.n != n)
        throw ContractError("pair families must live on [1, n]");
    if (!is_tree(t))
        throw ShapeError("T must be a tree");
    bool path_ok = is_path(t) && t.size() >= 4 * k + 3;
    if (!path_ok) {
        for (int i = 0; i < t.size(); ++i)
            if (t.degree(i) == 2)
                throw ShapeError("T is neither a long enough path nor free of degree-2 vertices");
        if (diameter(t) < 4 * k + 2)
            throw ShapeError("T has diameter below 4k+2");
    }
    auto spine = gadget_spine(t, k);

    GadgetInstance g;
    g.k = k;
    g.n = n;
    auto per_side = static_cast<VertexId>(2 * k * n);
    std::vector<VertexId> vs;
    for (int side = 0; side < 2; ++side)
        for (int level = 1; level <= 2 * k; ++level)
            for (int i = 1; i <= n; ++i) {
                VertexId id = side * per_side + static_cast<VertexId>((level - 1) * n + i);
                g.clique_index[{side, level, i}] = id;
                vs.push_back(id);
            }
    std::vector<Edge> es;
    auto K = [&](int side, int level, int i) { return g.clique_index.at({side, level, i}); };
    for (int side = 0; side < 2; ++side)
        for (int level = 1; level <= 2 * k; ++level)
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    es.emplace_back(K(side, level, i), K(side, level, j));
    // G_A on the first level, G_B on the last; side 0 holds [1..n], side 1 [1'..n']
    auto bip = [&](const PairFamily& f, int level) {
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                if (i == j || !f.contains(i, j))
                    es.emplace_back(K(0, level, i), K(1, level, j));
    };
    bip(a, 1);
    bip(b, 2 * k);
    for (int level = 2; level <= 2 * k - 1; ++level)
        for (int i = 1; i <= n; ++i)
            es.emplace_back(K(0, level, i), K(1, level, i));
    for (int level = 1; level < 2 * k; ++level)
        for (int s1 = 0; s1 < 2; ++s1)
            for (int s2 = 0; s2 < 2; ++s2)
                for (int i = 1; i <= n; ++i)
                    for (int j = 1; j <= n; ++j)
                        if (i != j)
                            es.emplace_back(K(s1, level, i), K(s2, level + 1, j));

    // spine position -> clique (side, level); the middle vertex is w
    std::map<VertexId, std::pair<int, int>> spine_clique;
    for (int p = 0; p < 2 * k; ++p) {
        spine_clique[spine[p]] = {0, p + 1};
        spine_clique[spine[4 * k - p]] = {1, p + 1};
    }
    VertexId tw = spine[2 * k];
    VertexId next = 2 * per_side + 1;
    for (auto x : t.ids())
        if (!spine_clique.count(x)) {
            g.extras[x] = next;
            vs.push_back(next++);
        }
    g.w = g.extras.at(tw);

    // which spine vertex each off-spine component hangs from
    std::map<VertexId, VertexId> hang;
    for (auto x : t.ids()) {
        if (spine_clique.count(x) || x == tw)
            continue;
        auto d = bfs(t, t.index(x));
        VertexId at = 0;
        int bestd = -1;
        for (auto s : spine)
            if (bestd < 0 || d[t.index(s)] < bestd) {
                bestd = d[t.index(s)];
                at = s;
            }
        hang[x] = at;
    }
    for (auto [x, y] : t.edges()) {
        bool sx = spine_clique.count(x), sy = spine_clique.count(y);
        if (sx && sy)
            continue;
        if (!sx && !sy) {
            es.emplace_back(g.extras.at(x), g.extras.at(y));
            continue;
        }
        auto [c, e] = sx ? std::pair{spine_clique.at(x), y} : std::pair{spine_clique.at(y), x};
        if (e == tw)
            continue; // the spine edges at w become the completeness to the last cliques
        for (int i = 1; i <= n; ++i)
            es.emplace_back(K(c.first, c.second, i), g.extras.at(e));
    }
    for (int side = 0; side < 2; ++side)
        for (int i = 1; i <= n; ++i)
            es.emplace_back(K(side, 2 * k, i), g.w);
    for (auto [x, s] : hang)
        if (s != tw)
            g.pending[g.extras.at(x)] = spine_clique.at(s);

    g.graph = LabeledGraph::build(std::move(vs), es);
    return g;
}

std::string gadget_mapping_text(const GadgetInstance& g)
{
    std::ostringstream out;
    for (auto& [s, id] : g.clique_index)
        out << "clique " << s.side << ' ' << s.level << ' ' << s.position << ' ' << id << '\n';
    for (auto [tx, id] : g.extras) {
        out << "extra " << tx << ' ' << id;
        auto it = g.pending.find(id);
        if (it != g.pending.end())
            out << ' ' << it->second.first << ' ' << it->second.second;
        out << '\n';
    }
    return out.str();
}

PropositionReport proposition_check(int k, int n, const LabeledGraph& t, const PairFamily& a, const PairFamily& b,
                                    std::size_t cap)
{
    auto gad = build_gadget(k, n, t, a, b);
    auto& g = gad.graph;
    PropositionReport rep;
    rep.pairs_intersect = intersects(a, b);
    EmbeddingQuery q;
    q.host = &g;
    q.pattern = &t;
    q.mode = EmbedMode::Induced;
    q.cap = std::max<std::size_t>(default_pattern_cap, t.size());
    std::size_t extras = gad.extras.size();
    search_embeddings(q, [&](const std::vector<int>& phi) {
        ++rep.embeddings;
        std::map<std::pair<int, int>, int> per;
        std::size_t outside = 0;
        for (int x : phi) {
            auto s = gad.slot_of(g.id(x));
            if (s)
                ++per[{s->side, s->level}];
            else
                ++outside;
        }
        std::size_t inside = phi.size() - outside;
        if (inside != static_cast<std::size_t>(4 * k) || outside != extras) {
            rep.clique_count_ok = false;
            rep.detail = std::to_string(inside) + " clique vertices in an embedding";
        }
        for (auto [c, cnt] : per) {
            if (cnt > 2) {
                rep.clique_shape_ok = false;
                rep.detail = "a clique hosts " + std::to_string(cnt) + " vertices";
            }
            if (cnt == 2)
                for (int side = 0; side < 2; ++side) {
                    auto it = per.find({side, c.second + 1});
                    if (it != per.end() && it->second == 2) {
                        rep.clique_shape_ok = false;
                        rep.detail = "two antimatched cliques host 2 vertices each";
                    }
                }
        }
        return rep.embeddings < cap;
    });
    rep.contains_t = rep.embeddings > 0;
    return rep;
}

HybridReport hybrid_view_experiment(int k, int n, const PairFamily& a, const PairFamily& b, const HybridOptions& opt)
{
    auto t = opt.t.size() > 0 ? opt.t : path_graph(4 * k + 3);
    auto co_a = complement(a), co_b = complement(b);
    auto mixed = build_gadget(k, n, t, b, co_a);
    auto left = build_gadget(k, n, t, b, co_b);
    auto right = build_gadget(k, n, t, a, co_a);
    if (mixed.clique_index != left.clique_index || mixed.extras != right.extras || mixed.graph.ids() != left.graph.ids())
        throw std::logic_error("gadget layouts differ");
    LabeledGraph lg = left.graph, rg = right.graph;
    if (opt.shuffle_layout) {
        lg = permuted(lg, opt.seed);
        rg = permuted(rg, opt.seed + 1);
    }

    std::map<VertexId, CertificateBits> certs;
    if (opt.scheme) {
        for (auto& [v, c] : opt.scheme->prover(right.graph))
            certs[v] = std::make_shared<const BitString>(c.encode());
    }
    else {
        std::mt19937_64 rng(opt.seed);
        for (auto v : mixed.graph.ids()) {
            BitString s;
            for (int i = 0; i < 16; ++i)
                s.push_back(rng() & 1);
            certs[v] = std::make_shared<const BitString>(std::move(s));
        }
    }

    HybridReport rep;
    auto compare = [&](VertexId v, const LabeledGraph& other, bool& flag) {
        ++rep.compared;
        auto x = radius_view(mixed.graph, v, k, &certs).serialize();
        auto y = radius_view(other, v, k, &certs).serialize();
        if (x != y) {
            if (rep.first_difference.empty())
                rep.first_difference = "view of " + std::to_string(v);
            flag = false;
        }
    };
    for (auto& [s, v] : mixed.clique_index)
        compare(v, s.level <= k ? lg : rg, s.level <= k ? rep.left_identical : rep.right_identical);
    for (auto [tx, v] : mixed.extras) {
        auto it = mixed.pending.find(v);
        bool is_left = it != mixed.pending.end() && it->second.second <= k;
        compare(v, is_left ? lg : rg, is_left ? rep.left_identical : rep.right_identical);
    }
    return rep;
}

std::uint64_t fooling_bound(std::uint64_t n, std::uint64_t k, std::uint64_t t_size)
{
    if (n == 0 || k == 0 || t_size == 0)
        throw ContractError("fooling_bound needs positive inputs");
    unsigned __int128 num = static_cast<unsigned __int128>(n) * (n - 1);
    unsigned __int128 den = static_cast<unsigned __int128>(2) * (4 * k * n + t_size);
    return static_cast<std::uint64_t>((num + den - 1) / den);
}

} // namespace lc
