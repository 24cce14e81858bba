#include "lcert/paths.hpp"

#include <algorithm>
#include <sstream>

#include "lcert/oracles.hpp"

namespace lc {

std::optional<int> LongestPathsField::at(VertexId v, int i) const
{
    auto it = entries.find({v, i});
    if (it == entries.end())
        return std::nullopt;
    return it->second;
}

Bits near_set(const LabeledGraph& g, const EccTable& t, int i, VertexId c, int dmax)
{
    Bits b(g.size());
    for (int w = 0; w < g.size(); ++w) {
        auto it = t.rows.find(g.id(w));
        if (it == t.rows.end() || i < 1 || i > static_cast<int>(it->second.size()))
            continue;
        auto& cell = it->second[i - 1];
        if (cell && cell->id == c && cell->dist <= dmax)
            b.set(w);
    }
    return b;
}

namespace {

int capped(int value, int cap) { return cap > 0 ? std::min(value, cap) : value; }

} // namespace

int longest_path_entry(const LabeledGraph& g, const EccTable& t, VertexId v, int i, int cap)
{
    auto& cell = t.at(v, i);
    auto q = near_set(g, t, i, cell->id, cell->dist - 1);
    return capped(longest_path_from(g, g.index(v), q, -1, nullptr, cap), cap);
}

LongestPathsField longest_paths_from(const LabeledGraph& g, const EccTable& t, const std::vector<int>& levels,
                                     int cap)
{
    LongestPathsField f;
    for (auto& [v, row] : t.rows)
        for (int i : levels) {
            if (i > t.layers)
                continue;
            auto& cell = row[i - 1];
            if (cell && cell->dist >= 1)
                f.entries[{v, i}] = longest_path_entry(g, t, v, i, cap);
        }
    return f;
}

namespace {

std::vector<int> all_levels(int n)
{
    std::vector<int> l;
    for (int i = 1; i <= n; ++i)
        l.push_back(i);
    return l;
}

} // namespace

LongestPathsField longest_paths_field(const LabeledGraph& g, int k, LpLevels levels, const Epsilon& eps)
{
    if (levels == LpLevels::Single) {
        auto t = compute_ecc_table(g, k, Epsilon::half());
        return longest_paths_from(g, t, {2});
    }
    auto t = compute_ecc_table(g, k, eps);
    return longest_paths_from(g, t, all_levels(t.layers));
}

BitString encode_longest_paths(const LongestPathsField& f)
{
    BitWriter w;
    w.gamma(f.entries.size());
    for (auto& [key, val] : f.entries) {
        w.gamma(key.first);
        w.gamma(static_cast<std::uint64_t>(key.second));
        w.gamma(static_cast<std::uint64_t>(val));
    }
    return w.take();
}

LongestPathsField decode_longest_paths(const BitString& b)
{
    BitReader r(b);
    LongestPathsField f;
    auto count = r.gamma();
    if (count > b.size())
        throw DecodeError("entry count exceeds field");
    std::pair<VertexId, int> prev{0, 0};
    for (std::uint64_t j = 0; j < count; ++j) {
        VertexId v = r.gamma();
        auto i = r.gamma();
        auto val = r.gamma();
        if (i > 64 || val > (1u << 30))
            throw DecodeError("entry out of range");
        std::pair<VertexId, int> key{v, static_cast<int>(i)};
        if (j > 0 && !(prev < key))
            throw DecodeError("entries not sorted");
        prev = key;
        f.entries[key] = static_cast<int>(val);
    }
    r.expect_done();
    return f;
}

// --------------------------------------------------------- constrained paths

std::optional<ConstrainedPathTable> constrained_table(const LabeledGraph& g, const EccTable& t, VertexId v, int cap)
{
    if (t.layers < 2)
        return std::nullopt;
    auto& cell = t.at(v, 2);
    if (!cell || cell->dist == 0)
        return std::nullopt;
    int iv = g.index(v);
    auto q = near_set(g, t, 2, cell->id, cell->dist - 1);
    auto same = near_set(g, t, 2, cell->id, cell->dist).minus(near_set(g, t, 2, cell->id, cell->dist - 1));
    Bits closed_v = g.row(iv);
    closed_v.set(iv);
    ConstrainedPathTable out;
    same.for_each([&](int w) {
        if (w == iv)
            return;
        std::array<int, 4> c{};
        Bits with_w = q;
        with_w.set(w);
        c[0] = capped(longest_path_from(g, iv, with_w, -1, nullptr, cap), cap);
        c[1] = capped(longest_path_from(g, w, q.minus(closed_v), -1, nullptr, cap), cap);
        c[2] = capped(longest_path_from(g, iv, q, w, nullptr, cap), cap);
        c[3] = capped(longest_two_paths(g, iv, w, q, nullptr, nullptr, cap), cap);
        out.rows[g.id(w)] = c;
    });
    return out;
}

ConstrainedPathField constrained_path_field(const LabeledGraph& g, int k)
{
    auto t = compute_ecc_table(g, k, Epsilon::half());
    ConstrainedPathField f;
    for (auto v : g.ids())
        f[v] = constrained_table(g, t, v);
    return f;
}

BitString encode_constrained(const std::optional<ConstrainedPathTable>& t)
{
    BitWriter w;
    w.bit(t.has_value());
    if (!t)
        return w.take();
    w.gamma(t->rows.size());
    for (auto& [v, cols] : t->rows) {
        w.gamma(v);
        for (int c : cols)
            w.gamma(static_cast<std::uint64_t>(c));
    }
    return w.take();
}

std::optional<ConstrainedPathTable> decode_constrained(const BitString& b)
{
    BitReader r(b);
    if (!r.bit()) {
        r.expect_done();
        return std::nullopt;
    }
    ConstrainedPathTable t;
    auto rows = r.gamma();
    if (rows > b.size())
        throw DecodeError("row count exceeds field");
    VertexId prev = 0;
    for (std::uint64_t j = 0; j < rows; ++j) {
        VertexId v = r.gamma();
        if (j > 0 && v <= prev)
            throw DecodeError("rows not sorted");
        prev = v;
        std::array<int, 4> cols{};
        for (auto& c : cols) {
            auto x = r.gamma();
            if (x > (1u << 30))
                throw DecodeError("entry out of range");
            c = static_cast<int>(x);
        }
        t.rows[v] = cols;
    }
    r.expect_done();
    return t;
}

// ------------------------------------------------------------- verifiers

const std::vector<std::string> path_fields{"SpanningTree", "Table", "Components", "Pieces", "LongestPaths"};
const std::vector<std::string> constrained_fields{"SpanningTree", "Table",        "Components",
                                                  "Pieces",       "LongestPaths", "ConstrainedPaths"};

std::vector<std::string> split_reason(const std::string& reason)
{
    std::vector<std::string> parts;
    std::stringstream in(reason);
    std::string p;
    while (std::getline(in, p, ':'))
        parts.push_back(p);
    return parts;
}

std::vector<VertexId> parse_ids(const std::string& part)
{
    std::vector<VertexId> ids;
    std::stringstream in(part);
    std::string x;
    while (std::getline(in, x, '-'))
        if (!x.empty())
            ids.push_back(std::stoull(x));
    return ids;
}

namespace {

std::string join(const LabeledGraph& g, const std::vector<int>& path, bool reversed = false)
{
    std::string s;
    auto emit = [&](int x) {
        if (!s.empty())
            s += '-';
        s += std::to_string(g.id(x));
    };
    if (reversed)
        for (auto it = path.rbegin(); it != path.rend(); ++it)
            emit(*it);
    else
        for (int x : path)
            emit(x);
    return s;
}

const EccCell* cell_of(const EccTable& t, VertexId v, int i)
{
    auto it = t.rows.find(v);
    if (it == t.rows.end() || i < 1 || i > static_cast<int>(it->second.size()) || !it->second[i - 1])
        return nullptr;
    return &it->second[i - 1];
}

struct PathCheck {
    LayeredContext ctx;
    std::optional<WitnessedGraph> own;
    Bits mine; // V_<=u as indices of own->graph
    LongestPathsField lp;
    std::vector<int> levels;
    int cap = 0; // path values are stored as min(value, cap)
};

// (i)-(iii): layered map, LongestPaths agreement, shape and recomputation
NodeResult path_preamble(const RadiusView& view, int k, const Epsilon& eps, const std::vector<std::string>& schema,
                         bool multi, PathCheck& pc)
{
    auto r = verify_gu(view, k, eps, schema, pc.ctx);
    if (!r.accept)
        return r;
    auto& ctx = pc.ctx;
    VertexId u = view.center;
    int N = ctx.thresholds->layers();
    pc.levels = multi ? all_levels(N) : (N >= 2 ? std::vector<int>{2} : std::vector<int>{});
    r = check_field_equal(ctx, "LongestPaths");
    if (!r.accept)
        return r;
    try {
        pc.lp = decode_longest_paths(ctx.cert(u).field("LongestPaths"));
    }
    catch (const DecodeError&) {
        return NodeResult::reject("decode");
    }
    for (auto& [key, val] : pc.lp.entries) {
        auto [v, i] = key;
        if (std::find(pc.levels.begin(), pc.levels.end(), i) == pc.levels.end() || !ctx.table.has(v))
            return NodeResult::reject("lp-shape");
        auto& cell = ctx.table.at(v, i);
        if (!cell || cell->dist == 0 || val < 1 || val > ctx.n)
            return NodeResult::reject("lp-shape");
    }
    for (auto& [v, row] : ctx.table.rows)
        for (int i : pc.levels)
            if (row[i - 1] && row[i - 1]->dist >= 1 && !pc.lp.at(v, i))
                return NodeResult::reject("lp-shape");
    std::string why;
    pc.own = ctx.witnessed(u, &why);
    if (!pc.own)
        return NodeResult::reject(why);
    auto& G = pc.own->graph;
    pc.mine = Bits(G.size());
    for (auto v : pc.own->witnessed)
        pc.mine.set(G.index(v));
    // (iii) entries of the halo of each ECC containing u, where every
    // adjacency among the path candidates is known
    int lu = ctx.true_level(u);
    for (int i : pc.levels) {
        if (i > lu)
            continue;
        VertexId c = ctx.table.at(u, i)->id;
        for (auto& [v, row] : ctx.table.rows) {
            auto& cell = row[i - 1];
            if (!cell || cell->id != c || cell->dist == 0)
                continue;
            int iv = G.index(v);
            auto q = near_set(G, ctx.table, i, c, cell->dist - 1);
            Bits all = q;
            all.set(iv);
            if (all.minus(pc.mine).count() > 1)
                continue;
            if (capped(longest_path_from(G, iv, q, -1, nullptr, pc.cap), pc.cap) != *pc.lp.at(v, i))
                return NodeResult::reject("lp-value");
        }
    }
    return NodeResult::ok();
}

// (iv) an induced P_m in G_<=u; vertices outside V_<=u must lie in pairwise
// distinct ECC_2's, or are not allowed at all when `distinct_outside` is off
NodeResult visible_path_step(PathCheck& pc, int m, bool distinct_outside)
{
    auto& G = pc.own->graph;
    auto& t = pc.ctx.table;
    std::vector<int> klass(G.size(), -2);
    std::map<VertexId, int> label_index;
    Bits usable(G.size());
    for (int x = 0; x < G.size(); ++x) {
        if (pc.mine.test(x)) {
            klass[x] = -1;
            usable.set(x);
            continue;
        }
        if (!distinct_outside)
            continue;
        auto c = cell_of(t, G.id(x), 2);
        if (c && (*c)->dist == 0) {
            klass[x] = label_index.emplace((*c)->id, static_cast<int>(label_index.size())).first->second;
            usable.set(x);
        }
    }
    std::vector<int> found;
    for (int s = 0; s < G.size() && found.empty(); ++s) {
        if (!usable.test(s))
            continue;
        enumerate_induced_paths(G, s, usable, [&](const std::vector<int>& p) {
            int last = klass[p.back()];
            if (last >= 0)
                for (std::size_t j = 0; j + 1 < p.size(); ++j)
                    if (klass[p[j]] == last)
                        return Walk::Prune;
            if (static_cast<int>(p.size()) >= m) {
                found = p;
                return Walk::Stop;
            }
            return Walk::Continue;
        });
    }
    if (!found.empty())
        return NodeResult::reject("path:" + join(G, found));
    return NodeResult::ok();
}

bool touches(const std::vector<int>& p, const Bits& set)
{
    for (int x : p)
        if (set.test(x))
            return true;
    return false;
}

// (v) of the m-pathcheck, for u in V_2
NodeResult single_glue_step(PathCheck& pc, int m)
{
    auto& G = pc.own->graph;
    auto& t = pc.ctx.table;
    VertexId cu = t.at(pc.ctx.center(), 2)->id;
    auto own_class = near_set(G, t, 2, cu, 0);
    std::string witness;
    for (int v = 0; v < G.size() && witness.empty(); ++v) {
        auto c = cell_of(t, G.id(v), 2);
        if (!c || (*c)->id == cu || (*c)->dist == 0 || !pc.mine.test(v))
            continue;
        int lpv = *pc.lp.at(G.id(v), 2);
        auto allowed = pc.mine.minus(near_set(G, t, 2, (*c)->id, (*c)->dist));
        int need = m - lpv + 1;
        enumerate_induced_paths(G, v, allowed, [&](const std::vector<int>& p) {
            if (static_cast<int>(p.size()) >= need && touches(p, own_class)) {
                witness = join(G, p, true);
                return Walk::Stop;
            }
            return Walk::Continue;
        });
    }
    if (!witness.empty())
        return NodeResult::reject("glue-v:" + witness);
    return NodeResult::ok();
}

// (v) of the 3k scheme: a path in the view between two vertices close to
// distinct ECC_i's, each the only path vertex that close to its ECC
NodeResult view_glue_step(PathCheck& pc, const RadiusView& view, int k)
{
    auto& V = view.graph;
    auto& t = pc.ctx.table;
    int m = 3 * k - 1;
    std::vector<char> rim(V.size());
    for (int x = 0; x < V.size(); ++x)
        rim[x] = view.dist(V.id(x)) == k;
    auto lp_of = [&](VertexId v, int i, const EccCell& cell) {
        if (cell->dist == 0)
            return 1;
        auto e = pc.lp.at(v, i);
        return e ? *e : 1;
    };
    for (int i : all_levels(t.layers)) {
        for (int a = 0; a < V.size(); ++a) {
            auto c1 = cell_of(t, V.id(a), i);
            if (!c1)
                continue;
            VertexId id1 = (*c1)->id;
            int lp1 = lp_of(V.id(a), i, *c1);
            auto n1 = near_set(V, t, i, id1, (*c1)->dist);
            Bits allowed = V.full_set().minus(n1);
            std::string witness;
            enumerate_induced_paths(V, a, allowed, [&](const std::vector<int>& p) {
                int on_rim = 0;
                for (int x : p)
                    on_rim += rim[x];
                if (on_rim > 1)
                    return Walk::Prune;
                if (p.size() < 2)
                    return Walk::Continue;
                int b = p.back();
                auto c2 = cell_of(t, V.id(b), i);
                if (!c2 || (*c2)->id == id1)
                    return Walk::Continue;
                auto n2 = near_set(V, t, i, (*c2)->id, (*c2)->dist);
                for (std::size_t j = 0; j + 1 < p.size(); ++j)
                    if (n2.test(p[j]))
                        return Walk::Continue;
                int lp2 = lp_of(V.id(b), i, *c2);
                if (static_cast<int>(p.size()) + (lp1 - 1) + (lp2 - 1) >= m) {
                    witness = std::to_string(i) + ":" + join(V, p);
                    return Walk::Stop;
                }
                return Walk::Continue;
            });
            if (!witness.empty())
                return NodeResult::reject("glue-3k:" + witness);
        }
    }
    return NodeResult::ok();
}

// (vii): u in V_2 joins two other ECC_2's through its own
NodeResult three_ecc_step(PathCheck& pc, int m)
{
    auto& G = pc.own->graph;
    auto& t = pc.ctx.table;
    VertexId cu = t.at(pc.ctx.center(), 2)->id;
    auto own_class = near_set(G, t, 2, cu, 0);
    std::string witness;
    for (int v = 0; v < G.size() && witness.empty(); ++v) {
        auto cv = cell_of(t, G.id(v), 2);
        if (!cv || (*cv)->id == cu || (*cv)->dist == 0 || !pc.mine.test(v))
            continue;
        int lpv = *pc.lp.at(G.id(v), 2);
        auto allowed = pc.mine.minus(near_set(G, t, 2, (*cv)->id, (*cv)->dist));
        enumerate_induced_paths(G, v, allowed, [&](const std::vector<int>& p) {
            if (p.size() < 2)
                return Walk::Continue;
            int w = p.back();
            auto cw = cell_of(t, G.id(w), 2);
            if (!cw || (*cw)->id == cu || (*cw)->id == (*cv)->id || (*cw)->dist == 0)
                return Walk::Continue;
            auto nw = near_set(G, t, 2, (*cw)->id, (*cw)->dist);
            for (std::size_t j = 0; j + 1 < p.size(); ++j)
                if (nw.test(p[j]))
                    return Walk::Continue;
            int lpw = *pc.lp.at(G.id(w), 2);
            if (static_cast<int>(p.size()) + (lpv - 1) + (lpw - 1) >= m && touches(p, own_class)) {
                witness = join(G, p);
                return Walk::Stop;
            }
            return Walk::Continue;
        });
    }
    if (!witness.empty())
        return NodeResult::reject("glue-vii:" + witness);
    return NodeResult::ok();
}

// (viii): u in V_1 near C_u, a nearby v close to another ECC_2 C_v, and a
// second vertex v' at the same distance from C_v
NodeResult two_ecc_step(PathCheck& pc, const RadiusView& view, const WitnessedGraph& wg, int m, int k,
                        unsigned cases)
{
    auto& G = wg.graph;
    auto& t = pc.ctx.table;
    VertexId u = view.center;
    VertexId cu = t.at(u, 2)->id;
    Bits B(G.size());
    for (auto x : wg.witnessed)
        B.set(G.index(x));
    for (auto vid : view.graph.ids()) {
        if (view.dist(vid) > k)
            continue;
        auto cv = cell_of(t, vid, 2);
        if (!cv || (*cv)->id == cu || (*cv)->dist == 0 || (*cv)->dist > k - 1)
            continue;
        int v = G.index(vid);
        if (!B.test(v))
            continue;
        std::optional<ConstrainedPathTable> table;
        try {
            auto it = pc.ctx.certs.find(vid);
            if (it == pc.ctx.certs.end())
                continue;
            table = decode_constrained(it->second.field("ConstrainedPaths"));
        }
        catch (const DecodeError&) {
            continue;
        }
        if (!table)
            continue;
        auto nv = near_set(G, t, 2, (*cv)->id, (*cv)->dist);
        auto base = B.minus(nv);
        for (auto& [wid, cols] : table->rows) {
            int w = G.find(wid);
            if (w < 0 || w == v)
                continue;
            Bits closed_w = G.row(w);
            closed_w.set(w);
            // (a) P_start ends in v and avoids N[v']
            if ((cases & 1u) && cols[0] > 0 && !G.adjacent(v, w)) {
                std::vector<int> p;
                int len = longest_path_from(G, v, base.minus(closed_w), -1, &p);
                if (len + cols[0] - 1 >= m)
                    return NodeResult::reject("glue-viii-a:" + std::to_string(wid) + ":" + join(G, p, true));
            }
            // (b) P_start ends in v' and passes through v
            if ((cases & 2u) && cols[1] > 0) {
                Bits allowed = base;
                allowed.set(v);
                int need = m - cols[1] + 1;
                std::string witness;
                enumerate_induced_paths(G, w, allowed, [&](const std::vector<int>& p) {
                    if (static_cast<int>(p.size()) >= need && std::find(p.begin(), p.end(), v) != p.end()) {
                        witness = join(G, p, true);
                        return Walk::Stop;
                    }
                    return Walk::Continue;
                });
                if (!witness.empty())
                    return NodeResult::reject("glue-viii-b:" + std::to_string(vid) + ":" + witness);
            }
            // (c) P_start ends in v, P_end starts in v', the two anticomplete
            if ((cases & 4u) && cols[2] > 0 && !closed_w.test(v)) {
                std::string witness;
                enumerate_induced_paths(G, v, base.minus(closed_w), [&](const std::vector<int>& p) {
                    Bits closed(G.size());
                    for (int x : p) {
                        closed |= G.row(x);
                        closed.set(x);
                    }
                    std::vector<int> end;
                    int len = longest_path_from(G, w, base.minus(closed), -1, &end);
                    if (static_cast<int>(p.size()) + cols[2] - 2 + len >= m) {
                        witness = std::to_string(wid) + ":" + join(G, p, true) + ":" + join(G, end);
                        return Walk::Stop;
                    }
                    return Walk::Continue;
                });
                if (!witness.empty())
                    return NodeResult::reject("glue-viii-c:" + witness);
            }
            // (d) P_start runs from v to v' outside the closer layers
            if ((cases & 8u) && cols[3] > 0) {
                std::vector<int> p;
                int len = longest_path_from(G, v, base, w, &p);
                if (len > 0 && len + cols[3] - 2 >= m)
                    return NodeResult::reject("glue-viii-d:" + join(G, p));
            }
        }
    }
    return NodeResult::ok();
}

CertificateAssignment layered_prover(const LabeledGraph& g, const Epsilon& eps, int k, EccPartition& p)
{
    CertificateAssignment a;
    for (auto v : g.ids())
        a[v];
    p = compute_eccs(g, k, eps);
    add_tg_fields(g, p, a);
    add_piece_fields(g, p, a);
    return a;
}

void add_lp(CertificateAssignment& a, const LongestPathsField& f)
{
    auto bits = encode_longest_paths(f);
    for (auto& [v, c] : a)
        c.add("LongestPaths", bits);
}

int p143_length(int k) { return (14 * k + 2) / 3 - 1; }

} // namespace

std::function<NodeResult(const RadiusView&)> m_pathcheck_verifier(int m, int k)
{
    if (m < 2 || k < 2)
        throw ContractError("m-pathcheck needs m >= 2 and k >= 2");
    return [m, k](const RadiusView& view) {
        PathCheck pc;
        pc.cap = m;
        auto r = path_preamble(view, k, Epsilon::half(), path_fields, false, pc);
        if (!r.accept)
            return r;
        r = visible_path_step(pc, m, true);
        if (!r.accept)
            return r;
        if (pc.ctx.true_level(view.center) >= 2)
            return single_glue_step(pc, m);
        return NodeResult::ok();
    };
}

CertScheme p4k_scheme(int k)
{
    if (k < 2)
        throw ContractError("k must be at least 2");
    CertScheme s;
    s.name = "p4k";
    s.radius = k;
    s.fields = path_fields;
    s.prover = [k](const LabeledGraph& g) {
        EccPartition p;
        auto a = layered_prover(g, Epsilon::half(), k, p);
        add_lp(a, longest_paths_from(g, ecc_table_from(g, p), {2}, 4 * k - 1));
        return a;
    };
    s.verifier = m_pathcheck_verifier(4 * k - 1, k);
    return s;
}

CertScheme p3k_scheme(int k, const Epsilon& eps)
{
    if (k < 2)
        throw ContractError("k must be at least 2");
    CertScheme s;
    s.name = eps.kind == Epsilon::Kind::InverseLog ? "p3k-quasilinear" : "p3k";
    s.radius = k;
    s.fields = path_fields;
    s.prover = [k, eps](const LabeledGraph& g) {
        EccPartition p;
        auto a = layered_prover(g, eps, k, p);
        auto t = ecc_table_from(g, p);
        add_lp(a, longest_paths_from(g, t, all_levels(t.layers), 3 * k - 1));
        return a;
    };
    s.verifier = [k, eps](const RadiusView& view) {
        PathCheck pc;
        pc.cap = 3 * k - 1;
        auto r = path_preamble(view, k, eps, path_fields, true, pc);
        if (!r.accept)
            return r;
        r = visible_path_step(pc, 3 * k - 1, false);
        if (!r.accept)
            return r;
        return view_glue_step(pc, view, k);
    };
    return s;
}

CertScheme p143k_scheme(int k, unsigned two_ecc_cases)
{
    if (k < 2)
        throw ContractError("k must be at least 2");
    int m = p143_length(k);
    CertScheme s;
    s.name = "p143k";
    s.radius = k;
    s.fields = constrained_fields;
    s.prover = [k, m](const LabeledGraph& g) {
        EccPartition p;
        auto a = layered_prover(g, Epsilon::half(), k, p);
        auto t = ecc_table_from(g, p);
        add_lp(a, longest_paths_from(g, t, {2}, m));
        for (auto& [v, c] : a)
            c.add("ConstrainedPaths", encode_constrained(constrained_table(g, t, v, m)));
        return a;
    };
    s.verifier = [k, m, two_ecc_cases](const RadiusView& view) {
        PathCheck pc;
        pc.cap = m;
        auto r = path_preamble(view, k, Epsilon::half(), constrained_fields, false, pc);
        if (!r.accept)
            return r;
        r = visible_path_step(pc, m, true);
        if (!r.accept)
            return r;
        VertexId u = view.center;
        auto& t = pc.ctx.table;
        bool high = pc.ctx.true_level(u) >= 2;
        if (high) {
            r = single_glue_step(pc, m);
            if (!r.accept)
                return r;
        }
        // (vi) own constrained table
        std::optional<ConstrainedPathTable> mine;
        try {
            mine = decode_constrained(pc.ctx.cert(u).field("ConstrainedPaths"));
        }
        catch (const DecodeError&) {
            return NodeResult::reject("decode");
        }
        if (t.layers < 2) {
            if (mine)
                return NodeResult::reject("cp-shape");
            return NodeResult::ok();
        }
        auto& cell = t.at(u, 2);
        if (high ? mine.has_value() : (mine.has_value() != cell.has_value()))
            return NodeResult::reject("cp-shape");
        if (high)
            return three_ecc_step(pc, m);
        if (!mine)
            return NodeResult::ok();
        // a vertex of C_u at distance d_u from u
        std::optional<VertexId> anchor;
        for (auto x : view.graph.ids()) {
            auto c = cell_of(t, x, 2);
            if (c && (*c)->id == cell->id && (*c)->dist == 0 && view.dist(x) == cell->dist) {
                anchor = x;
                break;
            }
        }
        if (!anchor)
            return NodeResult::reject("cp-anchor");
        std::string why;
        auto wg = pc.ctx.witnessed(*anchor, &why);
        if (!wg)
            return NodeResult::reject(why);
        if (constrained_table(wg->graph, t, u, m) != mine)
            return NodeResult::reject("cp-value");
        return two_ecc_step(pc, view, *wg, m, k, two_ecc_cases);
    };
    return s;
}

} // namespace lc
