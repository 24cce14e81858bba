#include "lcert/layers.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace lc {

Bits LayeredPartition::layer(const LabeledGraph& g, int i) const
{
    Bits b(g.size());
    for (int v = 0; v < g.size(); ++v)
        if (level[v] == i)
            b.set(v);
    return b;
}

Bits LayeredPartition::high(const LabeledGraph& g, int i) const
{
    Bits b(g.size());
    for (int v = 0; v < g.size(); ++v)
        if (level[v] >= i)
            b.set(v);
    return b;
}

Bits LayeredPartition::low(const LabeledGraph& g, int i) const
{
    Bits b(g.size());
    for (int v = 0; v < g.size(); ++v)
        if (level[v] <= i)
            b.set(v);
    return b;
}

LayeredPartition compute_layer_partition(const LabeledGraph& g, const Epsilon& eps)
{
    LayeredPartition p;
    p.eps = eps;
    p.thresholds = LayerThresholds(eps, g.size());
    p.level.resize(g.size());
    for (int v = 0; v < g.size(); ++v)
        p.level[v] = p.thresholds.level(g.degree(v));
    return p;
}

EccPartition compute_eccs(const LabeledGraph& g, int k, const Epsilon& eps)
{
    if (k < 2)
        throw ContractError("k must be at least 2");
    EccPartition p;
    p.k = k;
    p.layers = compute_layer_partition(g, eps);
    int N = p.layers.layers();
    int n = g.size();
    for (int i = 1; i <= N; ++i) {
        Bits hi = p.layers.high(g, i);
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto root = [&](int x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };
        std::vector<std::vector<int>> near(n);
        hi.for_each([&](int v) {
            auto d = bfs(g, v, 2 * k - 2);
            for (int w = 0; w < n; ++w)
                if (d[w] >= 0 && hi.test(w) && w != v) {
                    parent[root(v)] = root(w);
                    near[v].push_back(w);
                }
        });
        std::map<int, std::vector<int>> groups;
        hi.for_each([&](int v) { groups[root(v)].push_back(v); });
        std::vector<std::vector<int>> cls;
        for (auto& [r, members] : groups) {
            std::sort(members.begin(), members.end());
            cls.push_back(members);
        }
        // indices follow identifier order, so sorting by front sorts by min id
        std::sort(cls.begin(), cls.end(), [](auto& a, auto& b) { return a.front() < b.front(); });
        std::vector<int> of(n, -1);
        for (std::size_t c = 0; c < cls.size(); ++c)
            for (int v : cls[c])
                of[v] = static_cast<int>(c);
        // separation: nothing within 2k-2 of a vertex lies in a different class
        for (int v = 0; v < n; ++v)
            for (int w : near[v])
                if (of[v] != of[w])
                    throw std::logic_error("ECC separation violated");
        p.classes.push_back(std::move(cls));
        p.class_of.push_back(std::move(of));
    }
    return p;
}

std::vector<std::vector<std::vector<VertexId>>> ecc_classes(const LabeledGraph& g, int k, const Epsilon& eps)
{
    auto p = compute_eccs(g, k, eps);
    std::vector<std::vector<std::vector<VertexId>>> out;
    for (auto& level : p.classes) {
        std::vector<std::vector<VertexId>> l;
        for (auto& c : level) {
            std::vector<VertexId> ids;
            for (int v : c)
                ids.push_back(g.id(v));
            l.push_back(std::move(ids));
        }
        out.push_back(std::move(l));
    }
    return out;
}

int EccTable::level_of(VertexId v) const
{
    auto& r = rows.at(v);
    int lv = 0;
    for (int i = 0; i < static_cast<int>(r.size()); ++i)
        if (r[i] && r[i]->dist == 0)
            lv = i + 1;
    return lv;
}

EccTable ecc_table_from(const LabeledGraph& g, const EccPartition& p)
{
    int N = p.layers.layers();
    int k = p.k;
    EccTable t;
    t.layers = N;
    for (auto v : g.ids())
        t.rows[v].assign(N, std::nullopt);
    for (int i = 1; i <= N; ++i) {
        auto& cls = p.classes[i - 1];
        for (std::size_t c = 0; c < cls.size(); ++c) {
            Bits src(g.size());
            for (int v : cls[c])
                src.set(v);
            auto d = bfs_from_set(g, src, k - 1);
            VertexId cid = g.id(cls[c].front());
            for (int v = 0; v < g.size(); ++v)
                if (d[v] >= 0) {
                    auto& cell = t.rows[g.id(v)][i - 1];
                    if (cell && cell->id != cid)
                        throw std::logic_error("two ECCs within k-1 of one vertex");
                    cell = EccEntry{cid, d[v]};
                }
        }
    }
    return t;
}

EccTable compute_ecc_table(const LabeledGraph& g, int k, const Epsilon& eps)
{
    return ecc_table_from(g, compute_eccs(g, k, eps));
}

std::set<VertexId> witnessed_set_from_table(const EccTable& t, VertexId u)
{
    std::set<VertexId> out;
    int lu = t.level_of(u);
    for (auto& [v, row] : t.rows) {
        int lv = t.level_of(v);
        if (lv < 1 || lv > lu)
            continue;
        auto& a = row[lv - 1];
        auto& b = t.at(u, lv);
        if (a && b && a->dist == 0 && b->dist == 0 && a->id == b->id)
            out.insert(v);
    }
    return out;
}

WitnessedGraph witnessed_graph(const LabeledGraph& g, const EccPartition& p, VertexId u)
{
    int ui = g.index(u);
    WitnessedGraph w;
    w.owner = u;
    Bits keep(g.size());
    for (int v = 0; v < g.size(); ++v) {
        int i = p.layers.level[v];
        if (p.layers.level[ui] >= i && p.class_of[i - 1][v] == p.class_of[i - 1][ui]) {
            keep.set(v);
            w.witnessed.insert(g.id(v));
        }
    }
    std::vector<Edge> edges;
    for (auto& e : g.edges())
        if (keep.test(g.index(e.first)) || keep.test(g.index(e.second)))
            edges.push_back(e);
    w.graph = LabeledGraph::build(g.ids(), edges);
    return w;
}

WitnessedGraph witnessed_graph(const LabeledGraph& g, int k, const Epsilon& eps, VertexId u)
{
    return witnessed_graph(g, compute_eccs(g, k, eps), u);
}

// ------------------------------------------------------------ piece spreading

int coupon_quota(long long n, long long pieces)
{
    // ceil(3 log2 n) = smallest q with 2^q >= n^3
    unsigned __int128 cube = static_cast<unsigned __int128>(n) * n * n;
    int q = 0;
    while ((static_cast<unsigned __int128>(1) << q) < cube)
        ++q;
    // at least one card, so a lone vertex still holds its piece
    return static_cast<int>(std::min<long long>(pieces, std::max(q, 1)));
}

bool coupon_covers(const LabeledGraph& g, const PieceSet& p, long long min_degree)
{
    for (int v = 0; v < g.size(); ++v) {
        if (g.degree(v) < min_degree)
            continue;
        std::vector<char> seen(p.pieces + 1, 0);
        long long got = 0;
        auto take = [&](int x) {
            for (int j : p.held.at(g.id(x)))
                if (!seen[j]) {
                    seen[j] = 1;
                    ++got;
                }
        };
        take(v);
        for (int w : g.adj(v))
            take(w);
        if (got != p.pieces)
            return false;
    }
    return true;
}

PieceSet coupon_assignment(const LabeledGraph& g, long long d, std::uint64_t seed)
{
    if (d < 1)
        throw ContractError("piece count must be positive");
    PieceSet p;
    p.pieces = d;
    p.quota = coupon_quota(g.size(), d);
    std::mt19937_64 rng(seed);
    std::vector<int> deck(d);
    std::iota(deck.begin(), deck.end(), 1);
    for (int attempt = 1; attempt <= 64; ++attempt) {
        p.attempts = attempt;
        p.held.clear();
        for (auto v : g.ids()) {
            // partial Fisher-Yates: the first `quota` cards are the draw
            for (int t = 0; t < p.quota; ++t) {
                auto r = t + static_cast<long long>(rng() % static_cast<std::uint64_t>(d - t));
                std::swap(deck[t], deck[r]);
            }
            std::vector<int> mine(deck.begin(), deck.begin() + p.quota);
            std::sort(mine.begin(), mine.end());
            p.held[v] = std::move(mine);
        }
        if (coupon_covers(g, p, d))
            return p;
    }
    p.repaired = true;
    for (int v = 0; v < g.size(); ++v) {
        if (g.degree(v) < d)
            continue;
        std::vector<char> seen(d + 1, 0);
        auto mark = [&](int x) {
            for (int j : p.held[g.id(x)])
                seen[j] = 1;
        };
        mark(v);
        for (int w : g.adj(v))
            mark(w);
        // the highest-degree vertex of N[v] receives every missing piece
        int best = v;
        for (int w : g.adj(v))
            if (g.degree(w) > g.degree(best))
                best = w;
        auto& target = p.held[g.id(best)];
        for (int j = 1; j <= d; ++j)
            if (!seen[j]) {
                target.insert(std::lower_bound(target.begin(), target.end(), j), j);
                if (static_cast<int>(target.size()) > p.quota)
                    ++p.overflow;
            }
    }
    if (!coupon_covers(g, p, d))
        throw std::logic_error("piece coverage repair failed");
    return p;
}

} // namespace lc
