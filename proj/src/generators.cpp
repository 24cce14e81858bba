#include "lcert/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_set>

namespace lc {

LabeledGraph random_gnp(int n, double p, std::mt19937_64& rng, bool spread_ids)
{
    std::vector<VertexId> ids(n);
    std::iota(ids.begin(), ids.end(), VertexId{1});
    if (spread_ids && n > 1) {
        std::set<VertexId> chosen;
        std::uniform_int_distribution<VertexId> pick(1, static_cast<VertexId>(n) * n);
        while (static_cast<int>(chosen.size()) < n)
            chosen.insert(pick(rng));
        ids.assign(chosen.begin(), chosen.end());
        std::shuffle(ids.begin(), ids.end(), rng);
    }
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (coin(rng))
                edges.push_back({ids[a], ids[b]});
    return LabeledGraph::build(ids, edges);
}

LabeledGraph random_tree(int n, std::mt19937_64& rng)
{
    std::vector<VertexId> ids(n);
    std::iota(ids.begin(), ids.end(), VertexId{1});
    std::vector<Edge> edges;
    if (n == 2)
        edges.push_back({1, 2});
    if (n > 2) {
        std::uniform_int_distribution<int> pick(0, n - 1);
        std::vector<int> code(n - 2), deg(n, 1);
        for (auto& c : code) {
            c = pick(rng);
            ++deg[c];
        }
        for (int c : code) {
            int leaf = 0;
            while (deg[leaf] != 1)
                ++leaf;
            edges.push_back({ids[leaf], ids[c]});
            --deg[leaf];
            --deg[c];
        }
        std::vector<int> last;
        for (int v = 0; v < n; ++v)
            if (deg[v] == 1)
                last.push_back(v);
        edges.push_back({ids[last[0]], ids[last[1]]});
    }
    return LabeledGraph::build(ids, edges);
}

LabeledGraph random_sparse(int n, int extra, std::mt19937_64& rng)
{
    auto t = random_tree(n, rng);
    auto edges = t.edges();
    std::set<Edge> have(edges.begin(), edges.end());
    std::uniform_int_distribution<int> pick(1, std::max(1, n));
    for (int tries = 0; extra > 0 && tries < 100 * (extra + 1); ++tries) {
        VertexId a = pick(rng), b = pick(rng);
        if (a == b)
            continue;
        Edge e{std::min(a, b), std::max(a, b)};
        if (have.insert(e).second) {
            edges.push_back(e);
            --extra;
        }
    }
    return LabeledGraph::build(t.ids(), edges);
}

LabeledGraph relabel(const LabeledGraph& g, const std::vector<VertexId>& ids)
{
    std::vector<Edge> edges;
    for (int a = 0; a < g.size(); ++a)
        for (int b : g.adj(a))
            if (a < b)
                edges.push_back({ids[a], ids[b]});
    return LabeledGraph::build(ids, edges);
}

// ------------------------------------------------------------ isomorphism

namespace {

using Masks = std::vector<std::uint8_t>;

std::uint64_t code_under(const Masks& adj, const std::vector<int>& order)
{
    int n = static_cast<int>(order.size());
    std::uint64_t c = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            c = (c << 1) | ((adj[order[a]] >> order[b]) & 1u);
    return c;
}

std::uint64_t canonical(const Masks& adj)
{
    int n = static_cast<int>(adj.size());
    // colour refinement; colours are ranks of invariant signatures
    std::vector<int> colour(n, 0);
    for (;;) {
        std::vector<std::pair<std::vector<int>, int>> sig(n);
        for (int v = 0; v < n; ++v) {
            std::vector<int> s{colour[v]};
            std::vector<int> nb;
            for (int w = 0; w < n; ++w)
                if ((adj[v] >> w) & 1u)
                    nb.push_back(colour[w]);
            std::sort(nb.begin(), nb.end());
            s.insert(s.end(), nb.begin(), nb.end());
            sig[v] = {s, v};
        }
        std::vector<std::vector<int>> keys;
        for (auto& s : sig)
            keys.push_back(s.first);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        std::vector<int> next(n);
        for (int v = 0; v < n; ++v)
            next[v] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), sig[v].first) - keys.begin());
        int before = *std::max_element(colour.begin(), colour.end());
        int after = *std::max_element(next.begin(), next.end());
        colour = next;
        if (after == before)
            break;
    }
    std::vector<std::vector<int>> cells(n);
    for (int v = 0; v < n; ++v)
        cells[colour[v]].push_back(v);
    cells.erase(std::remove_if(cells.begin(), cells.end(), [](auto& c) { return c.empty(); }), cells.end());
    // minimum code over orderings that respect the ordered cells
    std::uint64_t best = ~std::uint64_t{0};
    std::vector<int> order;
    auto rec = [&](auto&& self, std::size_t ci) -> void {
        if (ci == cells.size()) {
            best = std::min(best, code_under(adj, order));
            return;
        }
        auto cell = cells[ci];
        std::sort(cell.begin(), cell.end());
        do {
            order.insert(order.end(), cell.begin(), cell.end());
            self(self, ci + 1);
            order.resize(order.size() - cell.size());
        } while (std::next_permutation(cell.begin(), cell.end()));
    };
    rec(rec, 0);
    return best;
}

LabeledGraph from_code(int n, std::uint64_t c)
{
    std::vector<Edge> edges;
    int bits = n * (n - 1) / 2;
    int pos = bits - 1;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b, --pos)
            if ((c >> pos) & 1u)
                edges.push_back({static_cast<VertexId>(a + 1), static_cast<VertexId>(b + 1)});
    std::vector<VertexId> ids(n);
    std::iota(ids.begin(), ids.end(), VertexId{1});
    return LabeledGraph::build(ids, edges);
}

} // namespace

std::uint64_t canonical_code(const LabeledGraph& g)
{
    if (g.size() > 8)
        throw ResourceError("canonical_code supports at most 8 vertices");
    Masks adj(g.size(), 0);
    for (int v = 0; v < g.size(); ++v)
        for (int w : g.adj(v))
            adj[v] |= static_cast<std::uint8_t>(1u << w);
    return canonical(adj);
}

std::vector<LabeledGraph> nonisomorphic_graphs(int n)
{
    if (n < 0 || n > 8)
        throw ResourceError("nonisomorphic_graphs supports 0 <= n <= 8");
    std::vector<std::uint64_t> level{0};
    for (int m = 1; m <= n; ++m) {
        std::unordered_set<std::uint64_t> seen;
        std::vector<std::uint64_t> next;
        for (auto c : level) {
            auto g = from_code(m - 1, c);
            Masks base(m, 0);
            for (int v = 0; v < m - 1; ++v)
                for (int w : g.adj(v))
                    base[v] |= static_cast<std::uint8_t>(1u << w);
            for (unsigned s = 0; s < (1u << (m - 1)); ++s) {
                Masks adj = base;
                for (int v = 0; v < m - 1; ++v)
                    if ((s >> v) & 1u) {
                        adj[v] |= static_cast<std::uint8_t>(1u << (m - 1));
                        adj[m - 1] |= static_cast<std::uint8_t>(1u << v);
                    }
                auto cc = canonical(adj);
                if (seen.insert(cc).second)
                    next.push_back(cc);
            }
        }
        std::sort(next.begin(), next.end());
        level = std::move(next);
    }
    std::vector<LabeledGraph> out;
    for (auto c : level)
        out.push_back(from_code(n, c));
    return out;
}

// ------------------------------------------------------------ builder

VertexId GraphBuilder::vertex() { return next_++; }

void GraphBuilder::edge(VertexId a, VertexId b) { edges_.push_back({std::min(a, b), std::max(a, b)}); }

std::vector<VertexId> GraphBuilder::clique(int size)
{
    std::vector<VertexId> vs;
    for (int i = 0; i < size; ++i)
        vs.push_back(vertex());
    for (int a = 0; a < size; ++a)
        for (int b = a + 1; b < size; ++b)
            edge(vs[a], vs[b]);
    return vs;
}

std::vector<VertexId> GraphBuilder::star(int leaves)
{
    std::vector<VertexId> vs{vertex()};
    for (int i = 0; i < leaves; ++i) {
        vs.push_back(vertex());
        edge(vs[0], vs.back());
    }
    return vs;
}

std::vector<VertexId> GraphBuilder::path(VertexId from, int length)
{
    std::vector<VertexId> vs;
    VertexId prev = from;
    for (int i = 0; i < length; ++i) {
        auto v = vertex();
        if (prev)
            edge(prev, v);
        vs.push_back(v);
        prev = v;
    }
    return vs;
}

LabeledGraph GraphBuilder::build() const
{
    std::vector<VertexId> ids(next_ - 1);
    std::iota(ids.begin(), ids.end(), VertexId{1});
    // a chord may repeat an existing edge
    return LabeledGraph::build(ids, edges_, true);
}

LabeledGraph blob_instance(std::mt19937_64& rng, int max_n, int k)
{
    int hub = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(max_n))));
    auto rnd = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (;;) {
        GraphBuilder b;
        int blobs = rnd(2, 3);
        std::vector<std::vector<VertexId>> made;
        for (int i = 0; i < blobs; ++i) {
            if (rnd(0, 1))
                made.push_back(b.star(hub));
            else
                made.push_back(b.clique(hub + 1));
        }
        auto member = [&](int i) { return made[i][rnd(0, static_cast<int>(made[i].size()) - 1)]; };
        // blobs i and i+1 joined by a path long enough to keep them separate
        // most of the time; shorter links merge the two ECCs
        for (int i = 0; i + 1 < blobs; ++i) {
            int len = rnd(2 * k - 3, 2 * k + 2);
            auto p = b.path(member(i), len);
            b.edge(p.empty() ? member(i) : p.back(), member(i + 1));
        }
        int pendants = rnd(0, 3);
        for (int i = 0; i < pendants; ++i)
            b.path(member(rnd(0, blobs - 1)), rnd(1, 2 * k));
        if (rnd(0, 2) == 0) {
            // a chord inside some blob's neighborhood breaks inducedness
            auto x = member(0), y = member(0);
            if (x != y)
                b.edge(x, y);
        }
        if (b.size() <= max_n)
            return b.build();
    }
}

} // namespace lc
