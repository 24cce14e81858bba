#include "lcert/layered.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace lc {

// ------------------------------------------------------------ field codecs

BitString encode_tree(const TreeList& t)
{
    BitWriter w;
    w.gamma(t.size());
    for (auto& [v, p] : t) {
        w.gamma(v);
        w.gamma(p);
    }
    return w.take();
}

TreeList decode_tree(const BitString& b)
{
    BitReader r(b);
    auto count = r.gamma();
    if (count > b.size())
        throw DecodeError("tree size out of range");
    TreeList t(count);
    for (auto& [v, p] : t) {
        v = r.gamma();
        p = r.gamma();
    }
    r.expect_done();
    return t;
}

BitString encode_table(const EccTable& t)
{
    BitWriter w;
    w.gamma(t.layers);
    w.gamma(t.rows.size());
    for (auto& [v, row] : t.rows) {
        w.gamma(v);
        for (auto& cell : row) {
            w.bit(cell.has_value());
            if (cell) {
                w.gamma(cell->id);
                w.gamma(cell->dist);
            }
        }
    }
    return w.take();
}

EccTable decode_table(const BitString& b)
{
    BitReader r(b);
    EccTable t;
    t.layers = static_cast<int>(r.gamma());
    auto count = r.gamma();
    if (t.layers > 64 || count > b.size())
        throw DecodeError("table header out of range");
    VertexId prev = 0;
    for (std::uint64_t x = 0; x < count; ++x) {
        VertexId v = r.gamma();
        if (v <= prev)
            throw DecodeError("table rows out of order");
        prev = v;
        auto& row = t.rows[v];
        row.resize(t.layers);
        for (auto& cell : row)
            if (r.bit()) {
                VertexId id = r.gamma();
                auto d = r.gamma();
                if (d > 1000000)
                    throw DecodeError("table distance out of range");
                cell = EccEntry{id, static_cast<int>(d)};
            }
    }
    r.expect_done();
    return t;
}

BitString encode_components(const std::vector<ClassTree>& c)
{
    BitWriter w;
    w.gamma(c.size());
    for (auto& t : c) {
        w.gamma(t.level);
        w.gamma(t.label);
        w.gamma(t.entries.size());
        for (auto& [m, p, wit] : t.entries) {
            w.gamma(m);
            w.gamma(p);
            w.gamma(wit);
        }
    }
    return w.take();
}

std::vector<ClassTree> decode_components(const BitString& b)
{
    BitReader r(b);
    auto count = r.gamma();
    if (count > b.size())
        throw DecodeError("component count out of range");
    std::vector<ClassTree> c(count);
    for (auto& t : c) {
        auto lv = r.gamma();
        if (lv > 64)
            throw DecodeError("component level out of range");
        t.level = static_cast<int>(lv);
        t.label = r.gamma();
        auto e = r.gamma();
        if (e > b.size())
            throw DecodeError("component size out of range");
        for (std::uint64_t x = 0; x < e; ++x) {
            VertexId m = r.gamma();
            VertexId p = r.gamma();
            VertexId wit = r.gamma();
            t.entries.emplace_back(m, p, wit);
        }
    }
    r.expect_done();
    return c;
}

BitString encode_pieces(const std::vector<Piece>& p)
{
    BitWriter w;
    w.gamma(p.size());
    for (auto& x : p) {
        w.gamma(x.level);
        w.gamma(x.number);
        w.bits(x.payload);
    }
    return w.take();
}

std::vector<Piece> decode_pieces(const BitString& b)
{
    BitReader r(b);
    auto count = r.gamma();
    if (count > b.size())
        throw DecodeError("piece count out of range");
    std::vector<Piece> p(count);
    for (auto& x : p) {
        auto lv = r.gamma();
        if (lv > 64)
            throw DecodeError("piece level out of range");
        x.level = static_cast<int>(lv);
        x.number = static_cast<long long>(r.gamma());
        x.payload = r.bits();
    }
    r.expect_done();
    return p;
}

TreeList bfs_forest(const LabeledGraph& g)
{
    std::vector<VertexId> parent(g.size(), 0);
    std::vector<char> seen(g.size(), 0);
    for (int s = 0; s < g.size(); ++s) {
        if (seen[s])
            continue;
        seen[s] = 1;
        std::deque<int> q{s};
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            for (int y : g.adj(x))
                if (!seen[y]) {
                    seen[y] = 1;
                    parent[y] = g.id(x);
                    q.push_back(y);
                }
        }
    }
    TreeList t;
    for (int v = 0; v < g.size(); ++v)
        t.emplace_back(g.id(v), parent[v]);
    return t;
}

std::vector<ClassTree> class_trees(const LabeledGraph& g, const EccPartition& p)
{
    std::vector<ClassTree> out;
    int k = p.k;
    for (int i = 1; i <= p.layers.layers(); ++i)
        for (auto& cls : p.classes[i - 1]) {
            ClassTree t;
            t.level = i;
            t.label = g.id(cls.front());
            std::map<int, std::vector<int>> dist; // member -> BFS distances (radius 2k-2)
            for (int v : cls)
                dist[v] = bfs(g, v, 2 * k - 2);
            // BFS over the auxiliary graph from the minimum member
            std::map<int, std::pair<int, int>> link; // member -> (parent, witness)
            std::deque<int> q{cls.front()};
            link[cls.front()] = {-1, -1};
            while (!q.empty()) {
                int a = q.front();
                q.pop_front();
                for (int b : cls) {
                    if (link.count(b) || dist[a][b] < 0)
                        continue;
                    int w = -1;
                    auto db = bfs(g, b, k - 1);
                    for (int x = 0; x < g.size() && w < 0; ++x)
                        if (dist[a][x] >= 0 && dist[a][x] <= k - 1 && db[x] >= 0)
                            w = x;
                    if (w < 0)
                        throw std::logic_error("no middle witness for an auxiliary edge");
                    link[b] = {a, w};
                    q.push_back(b);
                }
            }
            for (int v : cls) {
                auto [par, wit] = link.at(v);
                t.entries.emplace_back(g.id(v), par < 0 ? 0 : g.id(par), wit < 0 ? 0 : g.id(wit));
            }
            out.push_back(std::move(t));
        }
    std::sort(out.begin(), out.end(),
              [](auto& a, auto& b) { return std::tie(a.level, a.label) < std::tie(b.level, b.label); });
    return out;
}

BitString encode_adjacency_rows(const LabeledGraph& g, const Bits& rows)
{
    BitWriter w;
    w.gamma(rows.count());
    rows.for_each([&](int v) {
        w.gamma(g.id(v));
        w.gamma(g.degree(v));
        for (int x : g.adj(v))
            w.gamma(g.id(x));
    });
    return w.take();
}

AdjacencyRows decode_adjacency_rows(const BitString& b)
{
    BitReader r(b);
    AdjacencyRows out;
    auto count = r.gamma();
    if (count > b.size())
        throw DecodeError("row count out of range");
    VertexId prev = 0;
    for (std::uint64_t t = 0; t < count; ++t) {
        VertexId v = r.gamma();
        if (v <= prev)
            throw DecodeError("rows out of order");
        prev = v;
        auto deg = r.gamma();
        if (deg > b.size())
            throw DecodeError("degree out of range");
        auto& row = out[v];
        VertexId last = 0;
        for (std::uint64_t j = 0; j < deg; ++j) {
            VertexId x = r.gamma();
            if (x <= last)
                throw DecodeError("row entries out of order");
            last = x;
            row.push_back(x);
        }
    }
    r.expect_done();
    return out;
}

std::vector<BitString> cut_pieces(const BitString& b, long long count)
{
    std::vector<BitString> out;
    std::size_t size = (b.size() + count - 1) / count;
    for (long long j = 0; j < count; ++j) {
        std::size_t from = std::min<std::size_t>(b.size(), j * size);
        std::size_t to = std::min<std::size_t>(b.size(), from + size);
        out.push_back(b.slice(from, to - from));
    }
    return out;
}

// ------------------------------------------------------------- provers

void add_tg_fields(const LabeledGraph& g, const EccPartition& p, CertificateAssignment& a)
{
    auto tree = encode_tree(bfs_forest(g));
    auto table = encode_table(ecc_table_from(g, p));
    auto comps = encode_components(class_trees(g, p));
    for (auto v : g.ids()) {
        a[v].add("SpanningTree", tree);
        a[v].add("Table", table);
        a[v].add("Components", comps);
    }
}

void add_piece_fields(const LabeledGraph& g, const EccPartition& p, CertificateAssignment& a, std::uint64_t seed,
                      std::vector<PieceSet>* spread)
{
    std::map<VertexId, std::vector<Piece>> held;
    for (int i = 1; i <= p.layers.layers(); ++i) {
        long long d = p.layers.thresholds.piece_count(i);
        auto cut = cut_pieces(encode_adjacency_rows(g, p.layers.low(g, i)), d);
        auto ps = coupon_assignment(g, d, seed + static_cast<std::uint64_t>(i));
        for (auto& [v, nums] : ps.held)
            for (int j : nums)
                held[v].push_back(Piece{i, j, cut[j - 1]});
        if (spread)
            spread->push_back(std::move(ps));
    }
    for (auto v : g.ids())
        a[v].add("Pieces", encode_pieces(held[v]));
}

// ------------------------------------------------------- verifier context

bool decode_view(const RadiusView& view, const std::vector<std::string>& schema,
                 std::map<VertexId, Certificate>& out)
{
    for (auto& [v, bits] : view.certificates) {
        if (!bits)
            continue;
        try {
            out.emplace(v, Certificate::decode(*bits, schema));
        }
        catch (const DecodeError&) {
        }
    }
    return out.count(view.center) != 0;
}

namespace {

std::vector<VertexId> neighbors_of(const RadiusView& view, VertexId v)
{
    std::vector<VertexId> out;
    int i = view.graph.index(v);
    for (int x : view.graph.adj(i))
        out.push_back(view.graph.id(x));
    return out;
}

// forest over the listed identifiers; empty string when valid
std::string tree_defect(const TreeList& t)
{
    std::map<VertexId, VertexId> parent;
    VertexId prev = 0;
    for (auto& [v, p] : t) {
        if (v <= prev)
            return "identifiers out of order";
        prev = v;
        if (p == v)
            return "self parent";
        parent[v] = p;
    }
    for (auto& [v, p] : t)
        if (p != 0 && !parent.count(p))
            return "unknown parent";
    // a parent chain longer than the list has a cycle
    std::map<VertexId, int> state; // 1 = on stack, 2 = reaches a root
    for (auto& [v, p] : t) {
        std::vector<VertexId> chain;
        VertexId x = v;
        while (x != 0 && state[x] == 0) {
            state[x] = 1;
            chain.push_back(x);
            x = parent[x];
        }
        if (x != 0 && state[x] == 1)
            return "cycle";
        for (auto c : chain)
            state[c] = 2;
    }
    return {};
}

std::string table_defect(const EccTable& t, int k)
{
    int N = t.layers;
    // members of each label per level
    std::vector<std::map<VertexId, std::vector<VertexId>>> members(N);
    for (auto& [v, row] : t.rows) {
        if (static_cast<int>(row.size()) != N)
            return "row width";
        if (!row[0] || row[0]->dist != 0)
            return "column 1 must be distance 0";
        bool high = true;
        for (int i = 0; i < N; ++i) {
            auto& cell = row[i];
            if (cell && cell->dist > k - 1)
                return "distance above k-1";
            bool here = cell && cell->dist == 0;
            if (here && !high)
                return "non-monotone layers";
            high = here;
            if (here)
                members[i][cell->id].push_back(v);
        }
    }
    for (int i = 0; i < N; ++i) {
        for (auto& [label, ms] : members[i])
            if (ms.front() != label)
                return "label is not the minimum member";
        for (auto& [v, row] : t.rows) {
            auto& cell = row[i];
            if (cell && cell->dist > 0 && !members[i].count(cell->id))
                return "reference to an unknown class";
        }
    }
    return {};
}

std::string components_defect(const std::vector<ClassTree>& comps, const EccTable& t)
{
    std::map<std::pair<int, VertexId>, std::vector<VertexId>> classes;
    for (auto& [v, row] : t.rows)
        for (int i = 0; i < t.layers; ++i)
            if (row[i] && row[i]->dist == 0)
                classes[{i + 1, row[i]->id}].push_back(v);
    if (comps.size() != classes.size())
        return "tree count";
    for (auto& c : comps) {
        auto it = classes.find({c.level, c.label});
        if (it == classes.end())
            return "tree for an unknown class";
        auto& ms = it->second;
        if (c.entries.size() != ms.size())
            return "tree size";
        std::map<VertexId, VertexId> parent;
        int roots = 0;
        for (std::size_t x = 0; x < ms.size(); ++x) {
            auto& [m, p, w] = c.entries[x];
            if (m != ms[x])
                return "tree members";
            if (p == 0) {
                ++roots;
                if (w != 0)
                    return "root witness";
            }
            else if (w == 0 || !t.has(w))
                return "missing witness";
            parent[m] = p;
        }
        if (roots != 1)
            return "tree roots";
        for (auto& [m, p] : parent)
            if (p != 0 && !parent.count(p))
                return "parent outside class";
        for (auto& [m, p] : parent) {
            VertexId x = m;
            std::size_t steps = 0;
            while (x != 0 && steps <= parent.size()) {
                x = parent[x];
                ++steps;
            }
            if (x != 0)
                return "tree cycle";
        }
    }
    return {};
}

} // namespace

NodeResult check_field_equal(const LayeredContext& ctx, const std::string& field)
{
    auto& mine = ctx.cert(ctx.center()).field(field);
    for (auto w : neighbors_of(*ctx.view, ctx.center())) {
        auto it = ctx.certs.find(w);
        if (it == ctx.certs.end() || it->second.field(field) != mine)
            return NodeResult::reject("mismatch:" + field);
    }
    return NodeResult::ok();
}

NodeResult verify_tg(const RadiusView& view, int k, const Epsilon& eps, const std::vector<std::string>& schema,
                     LayeredContext& ctx)
{
    ctx.view = &view;
    ctx.k = k;
    ctx.eps = eps;
    if (!decode_view(view, schema, ctx.certs))
        return NodeResult::reject("decode");
    VertexId u = view.center;
    // (i) identical global fields
    for (auto f : {"SpanningTree", "Table", "Components"}) {
        auto r = check_field_equal(ctx, f);
        if (!r.accept)
            return r;
    }
    try {
        ctx.tree = decode_tree(ctx.cert(u).field("SpanningTree"));
        ctx.table = decode_table(ctx.cert(u).field("Table"));
        ctx.components = decode_components(ctx.cert(u).field("Components"));
    }
    catch (const DecodeError&) {
        return NodeResult::reject("decode");
    }
    // (ii) spanning forest
    if (!tree_defect(ctx.tree).empty())
        return NodeResult::reject("tree");
    std::map<VertexId, VertexId> parent(ctx.tree.begin(), ctx.tree.end());
    if (!parent.count(u))
        return NodeResult::reject("tree:unlisted");
    auto nb = neighbors_of(view, u);
    std::set<VertexId> nbs(nb.begin(), nb.end());
    if (parent[u] != 0 && !nbs.count(parent[u]))
        return NodeResult::reject("tree:parent");
    for (auto& [v, p] : ctx.tree)
        if (p == u && !nbs.count(v))
            return NodeResult::reject("tree:child");
    ctx.n = static_cast<long long>(ctx.tree.size());
    ctx.thresholds.emplace(eps, ctx.n);
    int N = ctx.thresholds->layers();
    // Table must describe exactly the listed vertices, consistently
    if (ctx.table.layers != N || ctx.table.rows.size() != ctx.tree.size())
        return NodeResult::reject("table:shape");
    for (auto& [v, p] : ctx.tree)
        if (!ctx.table.has(v))
            return NodeResult::reject("table:shape");
    if (!table_defect(ctx.table, k).empty())
        return NodeResult::reject("table");
    if (!components_defect(ctx.components, ctx.table).empty())
        return NodeResult::reject("components");

    auto close = view.vertices_within(k - 1);
    int lu = ctx.true_level(u);
    // own row: distance 0 exactly on the layers of H containing u
    for (int i = 1; i <= N; ++i) {
        auto& cell = ctx.table.at(u, i);
        bool zero = cell && cell->dist == 0;
        if (zero != (i <= lu))
            return NodeResult::reject("ecc-distance");
    }
    // (iii) all H_i vertices within k-1 carry one distance-0 label
    for (int i = 1; i <= N; ++i) {
        std::optional<VertexId> label;
        for (auto x : close) {
            if (ctx.true_level(x) < i)
                continue;
            if (!ctx.table.has(x))
                return NodeResult::reject("ecc-label");
            auto& cell = ctx.table.at(x, i);
            if (!cell || cell->dist != 0 || (label && *label != cell->id))
                return NodeResult::reject("ecc-label");
            label = cell->id;
        }
    }
    // (iv) class trees: witnesses of u's tree edges are within k-1
    for (int i = 1; i <= lu; ++i) {
        VertexId label = ctx.table.at(u, i)->id;
        auto it = std::find_if(ctx.components.begin(), ctx.components.end(),
                               [&](auto& c) { return c.level == i && c.label == label; });
        if (it == ctx.components.end())
            return NodeResult::reject("ecc-witness");
        for (auto& [m, p, w] : it->entries)
            if ((m == u && p != 0) || p == u) {
                int d = view.dist(w);
                if (d < 0 || d > k - 1)
                    return NodeResult::reject("ecc-witness");
            }
    }
    // (v) own distances outside H_i
    for (int i = lu + 1; i <= N; ++i) {
        int best = -1;
        VertexId near = 0;
        for (auto x : close) {
            if (ctx.true_level(x) < i)
                continue;
            int d = view.dist(x);
            if (best < 0 || d < best) {
                best = d;
                near = x;
            }
        }
        auto& cell = ctx.table.at(u, i);
        if (best < 0) {
            if (cell)
                return NodeResult::reject("ecc-distance");
            continue;
        }
        if (!cell || cell->dist != best || cell->id != ctx.table.at(near, i)->id)
            return NodeResult::reject("ecc-distance");
    }
    return NodeResult::ok();
}

const AdjacencyRows* LayeredContext::adjacency(int j)
{
    auto it = rows.find(j);
    if (it != rows.end())
        return &it->second;
    long long d = thresholds->piece_count(j);
    BitString all;
    for (long long x = 1; x <= d; ++x) {
        auto p = piece_map.find({j, x});
        if (p == piece_map.end())
            return nullptr;
        all.append(p->second);
    }
    AdjacencyRows parsed;
    try {
        parsed = decode_adjacency_rows(all);
    }
    catch (const DecodeError&) {
        return nullptr;
    }
    // the rows are exactly L_j, and every entry names a listed vertex
    std::size_t expected = 0;
    for (auto& [v, row] : table.rows)
        if (table.level_of(v) <= j) {
            ++expected;
            if (!parsed.count(v))
                return nullptr;
        }
    if (parsed.size() != expected)
        return nullptr;
    for (auto& [v, row] : parsed)
        for (auto x : row)
            if (x == v || !table.has(x))
                return nullptr;
    return &rows.emplace(j, std::move(parsed)).first->second;
}

std::optional<WitnessedGraph> LayeredContext::witnessed(VertexId w, std::string* why)
{
    auto fail = [&](const char* r) -> std::optional<WitnessedGraph> {
        if (why)
            *why = r;
        return std::nullopt;
    };
    int lw = level(w);
    // pieces in N[w]
    std::set<std::pair<int, long long>> seen;
    auto take = [&](VertexId x) {
        auto it = held.find(x);
        if (it != held.end())
            seen.insert(it->second.begin(), it->second.end());
    };
    take(w);
    for (auto x : neighbors_of(*view, w))
        take(x);
    for (int j = 1; j <= lw; ++j)
        for (long long x = 1; x <= thresholds->piece_count(j); ++x)
            if (!seen.count({j, x}))
                return fail("piece-missing");
    WitnessedGraph out;
    out.owner = w;
    out.witnessed = witnessed_set_from_table(table, w);
    std::set<Edge> edges;
    for (auto v : out.witnessed) {
        auto adj = adjacency(level(v));
        if (!adj)
            return fail("piece-parse");
        for (auto x : adj->at(v))
            edges.insert({std::min(v, x), std::max(v, x)});
    }
    // rows of two witnessed vertices must agree on their common edge
    for (auto& [a, b] : edges)
        for (auto [p, q] : {std::pair{a, b}, std::pair{b, a}})
            if (out.witnessed.count(p)) {
                auto& row = adjacency(level(p))->at(p);
                if (!std::binary_search(row.begin(), row.end(), q))
                    return fail("row-asymmetric");
            }
    std::vector<VertexId> ids;
    for (auto& [v, p] : tree)
        ids.push_back(v);
    out.graph = LabeledGraph::build(ids, std::vector<Edge>(edges.begin(), edges.end()));
    return out;
}

NodeResult verify_gu(const RadiusView& view, int k, const Epsilon& eps, const std::vector<std::string>& schema,
                     LayeredContext& ctx)
{
    auto r = verify_tg(view, k, eps, schema, ctx);
    if (!r.accept)
        return r;
    VertexId u = view.center;
    int N = ctx.thresholds->layers();
    // equal-numbered pieces agree across the whole view
    for (auto& [x, bits] : view.certificates) {
        auto it = ctx.certs.find(x);
        if (it == ctx.certs.end())
            return NodeResult::reject("decode");
        std::vector<Piece> ps;
        try {
            ps = decode_pieces(it->second.field("Pieces"));
        }
        catch (const DecodeError&) {
            return NodeResult::reject("decode");
        }
        auto& mine = ctx.held[x];
        for (auto& p : ps) {
            if (p.level < 1 || p.level > N || p.number < 1 || p.number > ctx.thresholds->piece_count(p.level))
                return NodeResult::reject("piece-range");
            std::pair<int, long long> key{p.level, p.number};
            if (std::find(mine.begin(), mine.end(), key) != mine.end())
                return NodeResult::reject("piece-duplicate");
            mine.push_back(key);
            auto [slot, fresh] = ctx.piece_map.emplace(key, p.payload);
            if (!fresh && slot->second != p.payload)
                return NodeResult::reject("piece-conflict");
        }
    }
    int lu = ctx.true_level(u);
    std::string why;
    auto own = ctx.witnessed(u, &why);
    if (!own)
        return NodeResult::reject(why);
    // own row in G_lu
    auto adj = ctx.adjacency(lu);
    auto nb = neighbors_of(view, u);
    std::sort(nb.begin(), nb.end());
    if (!adj || adj->at(u) != nb)
        return NodeResult::reject("row");
    return NodeResult::ok();
}

// ------------------------------------------------------------- schemes

const std::vector<std::string> tg_fields{"SpanningTree", "Table", "Components"};
const std::vector<std::string> gu_fields{"SpanningTree", "Table", "Components", "Pieces"};

ComputationScheme<EccTable> tg_scheme(const Epsilon& eps, int k)
{
    if (k < 2)
        throw ContractError("k must be at least 2");
    ComputationScheme<EccTable> s;
    s.name = "tg";
    s.radius = k;
    s.fields = tg_fields;
    s.prover = [eps, k](const LabeledGraph& g) {
        CertificateAssignment a;
        for (auto v : g.ids())
            a[v];
        add_tg_fields(g, compute_eccs(g, k, eps), a);
        return a;
    };
    s.node_step = [eps, k](const RadiusView& view) {
        LayeredContext ctx;
        auto r = verify_tg(view, k, eps, tg_fields, ctx);
        if (!r.accept)
            return StepResult<EccTable>::reject(r.reason);
        return StepResult<EccTable>::emit(ctx.table);
    };
    return s;
}

ComputationScheme<WitnessedGraph> gu_scheme(const Epsilon& eps, int k)
{
    if (k < 2)
        throw ContractError("k must be at least 2");
    ComputationScheme<WitnessedGraph> s;
    s.name = "gu";
    s.radius = k;
    s.fields = gu_fields;
    s.prover = [eps, k](const LabeledGraph& g) {
        CertificateAssignment a;
        for (auto v : g.ids())
            a[v];
        auto p = compute_eccs(g, k, eps);
        add_tg_fields(g, p, a);
        add_piece_fields(g, p, a);
        return a;
    };
    s.node_step = [eps, k](const RadiusView& view) {
        LayeredContext ctx;
        auto r = verify_gu(view, k, eps, gu_fields, ctx);
        if (!r.accept)
            return StepResult<WitnessedGraph>::reject(r.reason);
        return StepResult<WitnessedGraph>::emit(*ctx.witnessed(view.center));
    };
    return s;
}

// ------------------------------------------------------ spread universal

namespace {

BitString encode_matrix(const LabeledGraph& g)
{
    BitWriter w;
    w.gamma(g.size());
    for (auto v : g.ids())
        w.gamma(v);
    for (int a = 0; a < g.size(); ++a)
        for (int b = a + 1; b < g.size(); ++b)
            w.bit(g.adjacent(a, b));
    return w.take();
}

LabeledGraph decode_matrix(const BitString& bits)
{
    BitReader r(bits);
    auto n = r.gamma();
    if (n > bits.size())
        throw DecodeError("matrix size out of range");
    std::vector<VertexId> ids(n);
    for (auto& v : ids)
        v = r.gamma();
    std::vector<Edge> es;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (r.bit())
                es.push_back({ids[a], ids[b]});
    r.expect_done();
    try {
        return LabeledGraph::build(ids, es);
    }
    catch (const ContractError& e) {
        throw DecodeError(e.what());
    }
}

LabeledGraph decode_list(const BitString& bits, const std::vector<VertexId>& ids)
{
    auto rows = decode_adjacency_rows(bits);
    std::vector<Edge> es;
    for (auto& [v, row] : rows)
        for (auto x : row)
            if (v < x)
                es.push_back({v, x});
    try {
        auto g = LabeledGraph::build(ids, es);
        for (auto& [v, row] : rows)
            if (!g.contains(v) || g.neighbor_ids(v) != row)
                throw DecodeError("asymmetric rows");
        if (rows.size() != ids.size())
            throw DecodeError("row count");
        return g;
    }
    catch (const ContractError& e) {
        throw DecodeError(e.what());
    }
}

long long spread_piece_count(SpreadMode mode, const Epsilon& delta, long long n, long long degree)
{
    long long d = 1;
    if (mode == SpreadMode::MinDegree)
        d = LayerThresholds(delta, n).piece_count(2);
    else
        d = degree;
    long long cap = n > 1 ? n - 1 : 1;
    return std::max(1LL, std::min(d, cap));
}

} // namespace

CertScheme spread_universal_scheme(std::function<bool(const LabeledGraph&)> property, SpreadMode mode,
                                   const Epsilon& delta)
{
    CertScheme s;
    s.name = mode == SpreadMode::MinDegree ? "spread-min-degree" : "spread-regular";
    s.radius = 2;
    s.fields = {"SpanningTree", "Pieces"};
    s.prover = [mode, delta](const LabeledGraph& g) {
        CertificateAssignment a;
        auto tree = encode_tree(bfs_forest(g));
        int maxdeg = 0;
        for (int v = 0; v < g.size(); ++v)
            maxdeg = std::max(maxdeg, g.degree(v));
        long long d = spread_piece_count(mode, delta, g.size(), maxdeg);
        auto map = mode == SpreadMode::MinDegree ? encode_matrix(g) : encode_adjacency_rows(g, g.full_set());
        auto cut = cut_pieces(map, d);
        auto ps = coupon_assignment(g, d, default_piece_seed);
        for (auto v : g.ids()) {
            std::vector<Piece> mine;
            for (int j : ps.held[v])
                mine.push_back(Piece{1, j, cut[j - 1]});
            a[v].add("SpanningTree", tree);
            a[v].add("Pieces", encode_pieces(mine));
        }
        return a;
    };
    s.verifier = [property, mode, delta, fields = s.fields](const RadiusView& view) {
        std::map<VertexId, Certificate> certs;
        if (!decode_view(view, fields, certs))
            return NodeResult::reject("decode");
        VertexId u = view.center;
        auto nb = neighbors_of(view, u);
        auto& own = certs.at(u);
        for (auto w : nb) {
            auto it = certs.find(w);
            if (it == certs.end() || it->second.field("SpanningTree") != own.field("SpanningTree"))
                return NodeResult::reject("mismatch:SpanningTree");
        }
        TreeList tree;
        try {
            tree = decode_tree(own.field("SpanningTree"));
        }
        catch (const DecodeError&) {
            return NodeResult::reject("decode");
        }
        if (!tree_defect(tree).empty())
            return NodeResult::reject("tree");
        std::map<VertexId, VertexId> parent(tree.begin(), tree.end());
        std::set<VertexId> nbs(nb.begin(), nb.end());
        if (!parent.count(u) || (parent[u] != 0 && !nbs.count(parent[u])))
            return NodeResult::reject("tree");
        for (auto& [v, p] : tree)
            if (p == u && !nbs.count(v))
                return NodeResult::reject("tree");
        std::vector<VertexId> ids;
        for (auto& [v, p] : tree)
            ids.push_back(v);
        long long n = static_cast<long long>(ids.size());
        int deg = view.degree(u);
        if (mode == SpreadMode::Regular)
            for (auto w : nb)
                if (view.degree(w) != deg)
                    return NodeResult::reject("not-regular");
        long long d = spread_piece_count(mode, delta, n, deg);
        // the map as assembled from the pieces in N[w]
        auto assemble = [&](VertexId w) -> std::optional<LabeledGraph> {
            std::map<long long, BitString> got;
            std::vector<VertexId> hood = neighbors_of(view, w);
            hood.push_back(w);
            for (auto x : hood) {
                auto it = certs.find(x);
                if (it == certs.end())
                    return std::nullopt;
                try {
                    for (auto& p : decode_pieces(it->second.field("Pieces"))) {
                        if (p.level != 1 || p.number < 1 || p.number > d)
                            return std::nullopt;
                        auto [slot, fresh] = got.emplace(p.number, p.payload);
                        if (!fresh && slot->second != p.payload)
                            return std::nullopt;
                    }
                }
                catch (const DecodeError&) {
                    return std::nullopt;
                }
            }
            if (static_cast<long long>(got.size()) != d)
                return std::nullopt;
            BitString all;
            for (auto& [j, b] : got)
                all.append(b);
            try {
                return mode == SpreadMode::MinDegree ? decode_matrix(all) : decode_list(all, ids);
            }
            catch (const DecodeError&) {
                return std::nullopt;
            }
        };
        auto map = assemble(u);
        if (!map)
            return NodeResult::reject("map");
        if (map->ids() != ids)
            return NodeResult::reject("map");
        for (auto w : nb) {
            auto other = assemble(w);
            if (!other || !(*other == *map))
                return NodeResult::reject("map-mismatch");
        }
        auto row = map->neighbor_ids(u);
        std::sort(nb.begin(), nb.end());
        if (row != nb)
            return NodeResult::reject("row");
        if (!property(*map))
            return NodeResult::reject("property");
        return NodeResult::ok();
    };
    return s;
}

// ---------------------------------------------------------------- renaming

BitString encode_renaming(const RenamingRecord& r)
{
    BitWriter w;
    w.gamma(r.root);
    w.gamma(r.dist);
    w.gamma(r.parent);
    w.gamma(r.size);
    w.gamma(r.start);
    w.gamma(r.n);
    return w.take();
}

RenamingRecord decode_renaming(const BitString& b)
{
    BitReader r(b);
    RenamingRecord x;
    x.root = r.gamma();
    x.dist = r.gamma();
    x.parent = r.gamma();
    x.size = r.gamma();
    x.start = r.gamma();
    x.n = r.gamma();
    r.expect_done();
    return x;
}

std::map<VertexId, RenamingRecord> renaming_records(const LabeledGraph& g)
{
    std::map<VertexId, RenamingRecord> out;
    auto forest = bfs_forest(g);
    std::vector<std::vector<int>> children(g.size());
    std::vector<int> roots;
    for (auto& [v, p] : forest) {
        if (p == 0)
            roots.push_back(g.index(v));
        else
            children[g.index(p)].push_back(g.index(v));
    }
    int comps = 0;
    auto comp = components(g, &comps);
    std::vector<std::uint64_t> comp_size(comps, 0);
    for (int c : comp)
        ++comp_size[c];
    for (int r : roots) {
        std::uint64_t next = 1;
        // sizes first, then preorder starts
        std::function<std::uint64_t(int, VertexId, std::uint64_t)> walk = [&](int v, VertexId par,
                                                                             std::uint64_t dist) {
            auto& rec = out[g.id(v)];
            rec.root = g.id(r);
            rec.dist = dist;
            rec.parent = par;
            rec.start = next++;
            rec.n = comp_size[comp[r]];
            std::uint64_t size = 1;
            for (int c : children[v])
                size += walk(c, g.id(v), dist + 1);
            rec.size = size;
            return size;
        };
        walk(r, 0, 0);
    }
    return out;
}

NodeResult verify_renaming(const RadiusView& view, const std::map<VertexId, Certificate>& certs,
                           std::map<VertexId, std::uint64_t>& names)
{
    VertexId u = view.center;
    std::map<VertexId, RenamingRecord> rec;
    auto load = [&](VertexId x) {
        auto it = certs.find(x);
        if (it == certs.end())
            return false;
        try {
            rec[x] = decode_renaming(it->second.field("Renaming"));
        }
        catch (const DecodeError&) {
            return false;
        }
        return true;
    };
    if (!load(u))
        return NodeResult::reject("decode");
    auto nb = neighbors_of(view, u);
    std::sort(nb.begin(), nb.end());
    for (auto w : nb)
        if (!load(w))
            return NodeResult::reject("renaming");
    auto& r = rec[u];
    for (auto w : nb)
        if (rec[w].root != r.root || rec[w].n != r.n)
            return NodeResult::reject("renaming");
    if (r.parent == 0) {
        if (r.dist != 0 || r.root != u || r.start != 1 || r.size != r.n)
            return NodeResult::reject("renaming");
    }
    else {
        if (r.root == u || r.dist == 0 || !std::binary_search(nb.begin(), nb.end(), r.parent) ||
            rec[r.parent].dist + 1 != r.dist)
            return NodeResult::reject("renaming");
    }
    std::uint64_t size = 1, next = r.start + 1;
    for (auto w : nb)
        if (rec[w].parent == u) {
            if (rec[w].start != next)
                return NodeResult::reject("renaming");
            next += rec[w].size;
            size += rec[w].size;
        }
    if (size != r.size || r.start < 1 || r.start + r.size - 1 > r.n)
        return NodeResult::reject("renaming");
    names[u] = r.start;
    for (auto w : nb)
        names[w] = rec[w].start;
    return NodeResult::ok();
}

ComputationScheme<std::uint64_t> renaming_scheme()
{
    ComputationScheme<std::uint64_t> s;
    s.name = "renaming";
    s.radius = 1;
    s.fields = {"Renaming"};
    s.prover = [](const LabeledGraph& g) {
        CertificateAssignment a;
        for (auto& [v, r] : renaming_records(g))
            a[v].add("Renaming", encode_renaming(r));
        return a;
    };
    s.node_step = [fields = s.fields](const RadiusView& view) {
        std::map<VertexId, Certificate> certs;
        decode_view(view, fields, certs);
        std::map<VertexId, std::uint64_t> names;
        auto r = verify_renaming(view, certs, names);
        if (!r.accept)
            return StepResult<std::uint64_t>::reject(r.reason);
        return StepResult<std::uint64_t>::emit(names[view.center]);
    };
    return s;
}

} // namespace lc
