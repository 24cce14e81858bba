#include "lcert/oracles.hpp"

#include <algorithm>
#include <numeric>

namespace lc {

// ---------------------------------------------------------------- embeddings

namespace {

struct EmbedSearch {
    const EmbeddingQuery& q;
    const LabeledGraph& g;
    const LabeledGraph& h;
    std::vector<int> order;
    std::vector<int> phi;
    Bits used;
    std::vector<int> used_classes;
    const std::function<bool(const std::vector<int>&)>& found;
    bool stopped = false;

    EmbedSearch(const EmbeddingQuery& q_, const std::function<bool(const std::vector<int>&)>& f)
        : q(q_), g(*q_.host), h(*q_.pattern), phi(h.size(), -1), used(g.size()), found(f)
    {
        int k = h.size();
        std::vector<char> placed(k, 0);
        auto restricted = [&](int x) {
            return !q.candidates.empty() && q.candidates[x].size() == g.size() ? q.candidates[x].count() : g.size() + 1;
        };
        for (int t = 0; t < k; ++t) {
            int best = -1;
            long best_key = -1;
            for (int x = 0; x < k; ++x) {
                if (placed[x])
                    continue;
                int links = 0;
                for (int y : h.adj(x))
                    links += placed[y];
                long key = static_cast<long>(links) * 1000000L + (g.size() + 2 - restricted(x)) * 100L + h.degree(x);
                if (t == 0)
                    key = (g.size() + 2 - restricted(x)) * 100L + h.degree(x);
                if (key > best_key) {
                    best_key = key;
                    best = x;
                }
            }
            placed[best] = 1;
            order.push_back(best);
        }
    }

    void run(std::size_t depth)
    {
        if (stopped)
            return;
        if (depth == order.size()) {
            if (q.must_touch) {
                bool touch = false;
                for (int y : phi)
                    if (q.must_touch->test(y)) {
                        touch = true;
                        break;
                    }
                if (!touch)
                    return;
            }
            if (!found(phi))
                stopped = true;
            return;
        }
        int x = order[depth];
        Bits cand = (!q.candidates.empty() && q.candidates[x].size() == g.size()) ? q.candidates[x] : g.full_set();
        cand.andnot(used);
        for (std::size_t t = 0; t < depth; ++t) {
            int y = order[t];
            if (h.adjacent(x, y))
                cand &= g.row(phi[y]);
            else if (q.mode == EmbedMode::Induced)
                cand.andnot(g.row(phi[y]));
        }
        cand.for_each([&](int v) {
            if (stopped)
                return;
            int cls = q.klass ? (*q.klass)[v] : -1;
            if (cls == -2)
                return;
            if (cls >= 0 && std::find(used_classes.begin(), used_classes.end(), cls) != used_classes.end())
                return;
            phi[x] = v;
            used.set(v);
            if (cls >= 0)
                used_classes.push_back(cls);
            run(depth + 1);
            if (cls >= 0)
                used_classes.pop_back();
            used.reset(v);
            phi[x] = -1;
        });
    }
};

} // namespace

bool search_embeddings(const EmbeddingQuery& q, const std::function<bool(const std::vector<int>&)>& found)
{
    if (static_cast<std::size_t>(q.pattern->size()) > q.cap)
        throw ResourceError("pattern has " + std::to_string(q.pattern->size()) + " vertices, cap is " +
                            std::to_string(q.cap));
    if (q.pattern->size() > q.host->size())
        return false;
    EmbedSearch s(q, found);
    s.run(0);
    return s.stopped;
}

bool embedding_exists(const EmbeddingQuery& q)
{
    return search_embeddings(q, [](const std::vector<int>&) { return false; });
}

std::optional<Embedding> find_induced_embedding(const LabeledGraph& g, const LabeledGraph& h, EmbedMode mode,
                                                std::size_t cap)
{
    EmbeddingQuery q;
    q.host = &g;
    q.pattern = &h;
    q.mode = mode;
    q.cap = cap;
    std::optional<Embedding> result;
    search_embeddings(q, [&](const std::vector<int>& phi) {
        Embedding e;
        for (int x = 0; x < h.size(); ++x)
            e[h.id(x)] = g.id(phi[x]);
        result = std::move(e);
        return false;
    });
    return result;
}

// --------------------------------------------------------------------- paths

namespace {

// number of vertices of `room` reachable from `seeds` inside `room`
int reach_count(const LabeledGraph& g, const Bits& seeds, const Bits& room, int end = -1, bool* hits_end = nullptr)
{
    Bits reached = seeds & room;
    Bits frontier = reached;
    while (frontier.any()) {
        Bits next(g.size());
        frontier.for_each([&](int x) { next |= g.row(x); });
        next &= room;
        next.andnot(reached);
        reached |= next;
        frontier = std::move(next);
    }
    if (hits_end)
        *hits_end = end >= 0 && reached.test(end);
    return reached.count();
}

struct PathSearch {
    const LabeledGraph& g;
    Bits allowed;
    int end;
    int target;
    int best = 0;
    std::vector<int> path;
    std::vector<int> best_path;
    bool stopped = false;

    PathSearch(const LabeledGraph& g_, const Bits& a, int e, int t) : g(g_), allowed(a), end(e), target(t)
    {
        if (end >= 0)
            allowed.set(end);
    }

    void record(int len)
    {
        if (len > best) {
            best = len;
            best_path = path;
            if (end >= 0 && (best_path.empty() || best_path.back() != end))
                best_path.push_back(end);
        }
        if (target > 0 && best >= target)
            stopped = true;
    }

    // forbidden = union of closed neighborhoods of all path vertices but the last
    void dfs(const Bits& forbidden)
    {
        if (stopped)
            return;
        int last = path.back();
        int len = static_cast<int>(path.size());
        if (end < 0)
            record(len);
        if (stopped)
            return;
        Bits cand = g.row(last) & allowed;
        cand.andnot(forbidden);
        if (end >= 0 && cand.test(end)) {
            path.push_back(end);
            record(len + 1);
            path.pop_back();
            cand.reset(end);
            if (stopped)
                return;
        }
        if (cand.none())
            return;
        Bits room = allowed.minus(forbidden);
        room.reset(last);
        bool hits_end = false;
        int extra = reach_count(g, cand, room, end, &hits_end);
        if (end >= 0 && !hits_end)
            return;
        if (len + extra <= best)
            return;
        Bits next_forbidden = forbidden | g.row(last);
        next_forbidden.set(last);
        cand.for_each([&](int x) {
            if (stopped)
                return;
            path.push_back(x);
            dfs(next_forbidden);
            path.pop_back();
        });
    }

    void from(int start)
    {
        path.assign(1, start);
        if (end == start) {
            record(1);
            return;
        }
        dfs(Bits(g.size()));
    }
};

} // namespace

int longest_path_from(const LabeledGraph& g, int start, const Bits& allowed, int end, std::vector<int>* witness,
                      int target)
{
    PathSearch s(g, allowed, end, target);
    s.from(start);
    if (witness)
        *witness = s.best_path;
    return s.best;
}

int longest_path_within(const LabeledGraph& g, const Bits& allowed, std::vector<int>* witness, int target)
{
    PathSearch s(g, allowed, -1, target);
    allowed.for_each([&](int v) {
        if (!s.stopped)
            s.from(v);
    });
    if (witness)
        *witness = s.best_path;
    return s.best;
}

int longest_two_paths(const LabeledGraph& g, int s, int p, const Bits& allowed, std::vector<int>* w1,
                      std::vector<int>* w2, int target)
{
    if (s == p || g.adjacent(s, p))
        return 0;
    Bits first_room = allowed;
    first_room.andnot(g.row(p));
    first_room.reset(p);
    int best = 0;
    std::vector<int> p1{s};
    bool stopped = false;
    std::function<void(const Bits&, const Bits&)> dfs = [&](const Bits& forbidden, const Bits& closed) {
        if (stopped)
            return;
        // closed = union of closed neighborhoods of p1
        Bits second_room = allowed.minus(closed);
        std::vector<int> second;
        int l2 = longest_path_from(g, p, second_room, -1, &second);
        int len = static_cast<int>(p1.size());
        if (len + l2 > best) {
            best = len + l2;
            if (w1)
                *w1 = p1;
            if (w2)
                *w2 = second;
        }
        if (target > 0 && best >= target) {
            stopped = true;
            return;
        }
        int last = p1.back();
        Bits cand = g.row(last) & first_room;
        cand.andnot(forbidden);
        if (cand.none())
            return;
        Bits room = first_room.minus(forbidden);
        room.reset(last);
        int extra = reach_count(g, cand, room);
        if (len + extra + l2 <= best)
            return;
        Bits next_forbidden = forbidden | g.row(last);
        next_forbidden.set(last);
        cand.for_each([&](int x) {
            if (stopped)
                return;
            p1.push_back(x);
            Bits c2 = closed | g.row(x);
            c2.set(x);
            dfs(next_forbidden, c2);
            p1.pop_back();
        });
    };
    Bits closed = g.row(s);
    closed.set(s);
    dfs(Bits(g.size()), closed);
    return best;
}

bool enumerate_induced_paths(const LabeledGraph& g, int start, const Bits& allowed,
                             const std::function<Walk(const std::vector<int>&)>& visit)
{
    std::vector<int> path{start};
    bool stopped = false;
    std::function<void(const Bits&)> dfs = [&](const Bits& forbidden) {
        Walk w = visit(path);
        if (w == Walk::Stop) {
            stopped = true;
            return;
        }
        if (w == Walk::Prune)
            return;
        int last = path.back();
        Bits cand = g.row(last) & allowed;
        cand.andnot(forbidden);
        if (cand.none())
            return;
        Bits next_forbidden = forbidden | g.row(last);
        next_forbidden.set(last);
        cand.for_each([&](int x) {
            if (stopped)
                return;
            path.push_back(x);
            dfs(next_forbidden);
            path.pop_back();
        });
    };
    // the start itself is excluded from extensions through next_forbidden
    dfs(Bits(g.size()));
    return stopped;
}

bool is_induced_path(const LabeledGraph& g, const std::vector<VertexId>& p)
{
    std::vector<int> idx;
    for (auto v : p) {
        int i = g.find(v);
        if (i < 0)
            return false;
        idx.push_back(i);
    }
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            if (idx[a] == idx[b])
                return false;
            if (g.adjacent(idx[a], idx[b]) != (b == a + 1))
                return false;
        }
    return true;
}

PathResult longest_induced_path(const LabeledGraph& g, const PathConstraint& c)
{
    Bits allowed = c.allowed ? g.set_of(*c.allowed) : g.full_set();
    if (c.avoid_closed_neighborhood_of) {
        int x = g.index(*c.avoid_closed_neighborhood_of);
        allowed.andnot(g.row(x));
        allowed.reset(x);
    }
    int start = c.start ? g.index(*c.start) : -1;
    int end = c.end ? g.index(*c.end) : -1;
    PathResult r;
    std::vector<int> w1, w2;
    auto ids = [&](const std::vector<int>& w) {
        std::vector<VertexId> out;
        for (int i : w)
            out.push_back(g.id(i));
        return out;
    };
    if (c.two_path_partner) {
        if (start < 0)
            throw ContractError("two-path variant needs a start vertex");
        int p = g.index(*c.two_path_partner);
        r.count = longest_two_paths(g, start, p, allowed, &w1, &w2);
        r.path = ids(w1);
        r.second = ids(w2);
        return r;
    }
    if (start < 0 && end >= 0) {
        std::swap(start, end);
    }
    if (start >= 0) {
        r.count = longest_path_from(g, start, allowed, end, &w1);
        r.path = ids(w1);
        return r;
    }
    r.count = longest_path_within(g, allowed, &w1);
    r.path = ids(w1);
    return r;
}

// ----------------------------------------------------------------- ECC oracle

std::vector<std::vector<VertexId>> ecc_reference(const LabeledGraph& g, int k, const Epsilon& eps, int i)
{
    if (g.size() > 12)
        throw ResourceError("ecc_reference is limited to 12 vertices");
    LayerThresholds th(eps, g.size());
    int n = g.size();
    std::vector<int> lv(n);
    for (int v = 0; v < n; ++v)
        lv[v] = th.level(g.degree(v));
    std::vector<int> hi;
    for (int v = 0; v < n; ++v)
        if (lv[v] >= i)
            hi.push_back(v);
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> root = [&](int x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
    int max_run = 2 * k - 3; // longest allowed run of consecutive L_{i-1} vertices
    for (std::size_t a = 0; a < hi.size(); ++a)
        for (std::size_t b = a + 1; b < hi.size(); ++b) {
            int s = hi[a], t = hi[b];
            if (root(s) == root(t))
                continue;
            std::vector<char> seen(n, 0);
            seen[s] = 1;
            bool ok = false;
            std::function<void(int, int)> walk = [&](int x, int run) {
                for (int y : g.adj(x)) {
                    if (ok)
                        return;
                    if (y == t) {
                        ok = true;
                        return;
                    }
                    if (seen[y])
                        continue;
                    int r = lv[y] <= i - 1 ? run + 1 : 0;
                    if (r > max_run)
                        continue;
                    seen[y] = 1;
                    walk(y, r);
                    seen[y] = 0;
                }
            };
            walk(s, 0);
            if (ok)
                parent[root(s)] = root(t);
        }
    std::map<int, std::vector<VertexId>> classes;
    for (int v : hi)
        classes[root(v)].push_back(g.id(v));
    std::vector<std::vector<VertexId>> out;
    for (auto& [r, c] : classes)
        out.push_back(c);
    std::sort(out.begin(), out.end());
    return out;
}

// ------------------------------------------------------------- named graphs

LabeledGraph path_graph(int n, VertexId first)
{
    std::vector<VertexId> vs;
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) {
        vs.push_back(first + i);
        if (i)
            es.emplace_back(first + i - 1, first + i);
    }
    return LabeledGraph::build(vs, es);
}

LabeledGraph cycle_graph(int n, VertexId first)
{
    std::vector<VertexId> vs;
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) {
        vs.push_back(first + i);
        es.emplace_back(first + i, first + (i + 1) % n);
    }
    return LabeledGraph::build(vs, es);
}

LabeledGraph complete_graph(int n, VertexId first)
{
    std::vector<VertexId> vs;
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) {
        vs.push_back(first + i);
        for (int j = 0; j < i; ++j)
            es.emplace_back(first + j, first + i);
    }
    return LabeledGraph::build(vs, es);
}

LabeledGraph star_graph(int leaves)
{
    std::vector<VertexId> vs{1};
    std::vector<Edge> es;
    for (int i = 0; i < leaves; ++i) {
        vs.push_back(2 + i);
        es.emplace_back(1, 2 + i);
    }
    return LabeledGraph::build(vs, es);
}

LabeledGraph paw_graph()
{
    return LabeledGraph::build({1, 2, 3, 4}, {{1, 2}, {2, 3}, {1, 3}, {3, 4}});
}

LabeledGraph petersen_graph()
{
    std::vector<VertexId> vs;
    std::vector<Edge> es;
    for (int i = 0; i < 5; ++i) {
        vs.push_back(1 + i);
        vs.push_back(6 + i);
        es.emplace_back(1 + i, 1 + (i + 1) % 5);
        es.emplace_back(6 + i, 6 + (i + 2) % 5);
        es.emplace_back(1 + i, 6 + i);
    }
    return LabeledGraph::build(vs, es);
}

LabeledGraph grid_graph(int rows, int cols)
{
    std::vector<VertexId> vs;
    std::vector<Edge> es;
    auto id = [&](int r, int c) { return static_cast<VertexId>(r * cols + c + 1); };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            vs.push_back(id(r, c));
            if (r + 1 < rows)
                es.emplace_back(id(r, c), id(r + 1, c));
            if (c + 1 < cols)
                es.emplace_back(id(r, c), id(r, c + 1));
        }
    return LabeledGraph::build(vs, es);
}

LabeledGraph complete_bipartite(int a, int b)
{
    std::vector<VertexId> vs;
    std::vector<Edge> es;
    for (int i = 1; i <= a + b; ++i)
        vs.push_back(i);
    for (int i = 1; i <= a; ++i)
        for (int j = a + 1; j <= a + b; ++j)
            es.emplace_back(i, j);
    return LabeledGraph::build(vs, es);
}

} // namespace lc
