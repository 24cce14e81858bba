#include "lcert/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace lc {

void Bits::set_all()
{
    std::fill(w_.begin(), w_.end(), ~std::uint64_t{0});
    if (n_ & 63)
        w_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
}

void Bits::clear() { std::fill(w_.begin(), w_.end(), 0); }

int Bits::count() const
{
    int c = 0;
    for (auto w : w_)
        c += __builtin_popcountll(w);
    return c;
}

bool Bits::any() const
{
    for (auto w : w_)
        if (w)
            return true;
    return false;
}

bool Bits::intersects(const Bits& o) const
{
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i] & o.w_[i])
            return true;
    return false;
}

bool Bits::subset_of(const Bits& o) const
{
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i] & ~o.w_[i])
            return false;
    return true;
}

Bits& Bits::operator&=(const Bits& o)
{
    for (std::size_t i = 0; i < w_.size(); ++i)
        w_[i] &= o.w_[i];
    return *this;
}

Bits& Bits::operator|=(const Bits& o)
{
    for (std::size_t i = 0; i < w_.size(); ++i)
        w_[i] |= o.w_[i];
    return *this;
}

Bits& Bits::andnot(const Bits& o)
{
    for (std::size_t i = 0; i < w_.size(); ++i)
        w_[i] &= ~o.w_[i];
    return *this;
}

int Bits::next(int i) const
{
    if (i >= n_)
        return -1;
    std::size_t wi = i >> 6;
    auto w = w_[wi] & (~std::uint64_t{0} << (i & 63));
    while (true) {
        if (w)
            return static_cast<int>(wi * 64 + __builtin_ctzll(w));
        if (++wi >= w_.size())
            return -1;
        w = w_[wi];
    }
}

std::vector<int> Bits::elements() const
{
    std::vector<int> r;
    for_each([&](int i) { r.push_back(i); });
    return r;
}

LabeledGraph LabeledGraph::build(std::vector<VertexId> vertices, const std::vector<Edge>& edges,
                                 bool allow_duplicate_edges)
{
    LabeledGraph g;
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
        throw ContractError("duplicate vertex identifier");
    if (!vertices.empty() && vertices.front() == 0)
        throw ContractError("vertex identifier 0");
    g.ids_ = std::move(vertices);
    int n = g.size();
    g.index_.reserve(n * 2);
    for (int i = 0; i < n; ++i)
        g.index_[g.ids_[i]] = i;
    g.adj_.assign(n, {});
    g.rows_.assign(n, Bits(n));
    for (auto [a, b] : edges) {
        if (a == b)
            throw ContractError("self-loop at " + std::to_string(a));
        int i = g.find(a), j = g.find(b);
        if (i < 0 || j < 0)
            throw ContractError("edge endpoint not a vertex");
        if (g.rows_[i].test(j)) {
            if (allow_duplicate_edges)
                continue;
            throw ContractError("duplicate edge " + std::to_string(a) + " " + std::to_string(b));
        }
        g.rows_[i].set(j);
        g.rows_[j].set(i);
        g.adj_[i].push_back(j);
        g.adj_[j].push_back(i);
        ++g.m_;
    }
    for (auto& a : g.adj_)
        std::sort(a.begin(), a.end());
    return g;
}

int LabeledGraph::index(VertexId v) const
{
    auto it = index_.find(v);
    if (it == index_.end())
        throw LookupError("unknown vertex " + std::to_string(v));
    return it->second;
}

bool LabeledGraph::has_edge(VertexId a, VertexId b) const
{
    int i = find(a), j = find(b);
    return i >= 0 && j >= 0 && rows_[i].test(j);
}

std::vector<VertexId> LabeledGraph::neighbor_ids(VertexId v) const
{
    std::vector<VertexId> r;
    for (int j : adj_[index(v)])
        r.push_back(ids_[j]);
    return r;
}

std::vector<Edge> LabeledGraph::edges() const
{
    std::vector<Edge> r;
    r.reserve(m_);
    for (int i = 0; i < size(); ++i)
        for (int j : adj_[i])
            if (i < j)
                r.emplace_back(ids_[i], ids_[j]);
    return r;
}

Bits LabeledGraph::set_of(const std::vector<VertexId>& vs) const
{
    Bits b(size());
    for (auto v : vs)
        b.set(index(v));
    return b;
}

std::vector<VertexId> LabeledGraph::ids_of(const Bits& b) const
{
    std::vector<VertexId> r;
    b.for_each([&](int i) { r.push_back(ids_[i]); });
    return r;
}

namespace {

std::vector<std::string> tokens(const std::string& line)
{
    std::istringstream ss(line);
    std::vector<std::string> r;
    std::string t;
    while (ss >> t)
        r.push_back(t);
    return r;
}

long long parse_int(const std::string& t, int line_no)
{
    if (t.empty() || !(std::isdigit(static_cast<unsigned char>(t[0])) || t[0] == '-'))
        throw ParseError("malformed line " + std::to_string(line_no));
    std::size_t used = 0;
    long long v;
    try {
        v = std::stoll(t, &used);
    }
    catch (const std::exception&) {
        throw ParseError("malformed line " + std::to_string(line_no));
    }
    if (used != t.size())
        throw ParseError("malformed line " + std::to_string(line_no));
    return v;
}

} // namespace

LabeledGraph parse_graph(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool header = false;
    long long n = 0, m = 0;
    std::set<VertexId> seen;
    std::set<Edge> edge_set;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        auto t = tokens(line);
        if (t.empty() || t[0][0] == 'c' || t[0][0] == '#')
            continue;
        if (!header) {
            if (t[0] == "p") {
                if (t.size() != 4)
                    throw ParseError("malformed header at line " + std::to_string(line_no));
                n = parse_int(t[2], line_no);
                m = parse_int(t[3], line_no);
            }
            else {
                if (t.size() != 2)
                    throw ParseError("malformed header at line " + std::to_string(line_no));
                n = parse_int(t[0], line_no);
                m = parse_int(t[1], line_no);
            }
            if (n < 0 || m < 0)
                throw ParseError("negative count at line " + std::to_string(line_no));
            header = true;
            continue;
        }
        std::size_t off = 0;
        if (t[0] == "e")
            off = 1;
        if (t.size() - off == 1) {
            long long v = parse_int(t[off], line_no);
            if (v <= 0)
                throw ParseError("non-positive identifier at line " + std::to_string(line_no));
            seen.insert(static_cast<VertexId>(v));
            continue;
        }
        if (t.size() - off != 2)
            throw ParseError("malformed line " + std::to_string(line_no));
        long long a = parse_int(t[off], line_no), b = parse_int(t[off + 1], line_no);
        if (a <= 0 || b <= 0)
            throw ParseError("non-positive identifier at line " + std::to_string(line_no));
        if (a == b)
            throw ParseError("self-loop at line " + std::to_string(line_no));
        Edge e{std::min<VertexId>(a, b), std::max<VertexId>(a, b)};
        if (!edge_set.insert(e).second)
            throw ParseError("duplicate edge at line " + std::to_string(line_no));
        edges.push_back(e);
        seen.insert(e.first);
        seen.insert(e.second);
    }
    if (!header)
        throw ParseError("missing header");
    if (static_cast<long long>(edges.size()) != m)
        throw ParseError("expected " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    if (static_cast<long long>(seen.size()) > n)
        throw ParseError("more than " + std::to_string(n) + " distinct identifiers");
    VertexId fill = 1;
    while (static_cast<long long>(seen.size()) < n) {
        while (seen.count(fill))
            ++fill;
        seen.insert(fill);
    }
    return LabeledGraph::build(std::vector<VertexId>(seen.begin(), seen.end()), edges);
}

LabeledGraph load_graph(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_graph(ss.str());
}

std::string serialize_graph(const LabeledGraph& g)
{
    std::ostringstream out;
    out << g.size() << ' ' << g.edge_count() << '\n';
    for (auto [a, b] : g.edges())
        out << a << ' ' << b << '\n';
    for (int i = 0; i < g.size(); ++i)
        if (g.degree(i) == 0)
            out << g.id(i) << '\n';
    return out.str();
}

LabeledGraph induced_subgraph(const LabeledGraph& g, const std::vector<VertexId>& s)
{
    return induced_subgraph(g, g.set_of(s));
}

LabeledGraph induced_subgraph(const LabeledGraph& g, const Bits& s)
{
    std::vector<VertexId> vs = g.ids_of(s);
    std::vector<Edge> es;
    s.for_each([&](int i) {
        for (int j : g.adj(i))
            if (i < j && s.test(j))
                es.emplace_back(g.id(i), g.id(j));
    });
    return LabeledGraph::build(std::move(vs), es);
}

std::vector<int> bfs(const LabeledGraph& g, int source, int limit)
{
    Bits s(g.size());
    s.set(source);
    return bfs_from_set(g, s, limit);
}

std::vector<int> bfs_from_set(const LabeledGraph& g, const Bits& sources, int limit, const Bits* within)
{
    std::vector<int> dist(g.size(), -1);
    std::vector<int> frontier;
    sources.for_each([&](int i) {
        dist[i] = 0;
        frontier.push_back(i);
    });
    int d = 0;
    while (!frontier.empty() && (limit < 0 || d < limit)) {
        std::vector<int> next;
        for (int x : frontier)
            for (int y : g.adj(x))
                if (dist[y] < 0 && (!within || within->test(y))) {
                    dist[y] = d + 1;
                    next.push_back(y);
                }
        frontier.swap(next);
        ++d;
    }
    return dist;
}

std::vector<int> components(const LabeledGraph& g, int* count)
{
    std::vector<int> comp(g.size(), -1);
    int c = 0;
    for (int s = 0; s < g.size(); ++s) {
        if (comp[s] >= 0)
            continue;
        std::vector<int> stack{s};
        comp[s] = c;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : g.adj(x))
                if (comp[y] < 0) {
                    comp[y] = c;
                    stack.push_back(y);
                }
        }
        ++c;
    }
    if (count)
        *count = c;
    return comp;
}

bool is_connected(const LabeledGraph& g)
{
    int c = 0;
    components(g, &c);
    return c <= 1;
}

std::vector<VertexId> RadiusView::vertices_within(int d) const
{
    std::vector<VertexId> r;
    for (auto v : graph.ids())
        if (dist(v) <= d)
            r.push_back(v);
    return r;
}

std::string RadiusView::serialize() const
{
    std::ostringstream out;
    out << "center " << center << " radius " << radius << '\n';
    for (auto v : graph.ids()) {
        out << "v " << v << ' ' << dist(v);
        if (auto c = certificate(v))
            out << ' ' << c->to_hex();
        out << '\n';
    }
    for (auto [a, b] : graph.edges())
        out << "e " << a << ' ' << b << '\n';
    return out.str();
}

RadiusView radius_view(const LabeledGraph& g, VertexId v, int d,
                       const std::map<VertexId, CertificateBits>* certs)
{
    if (d < 0)
        throw ContractError("negative radius");
    int s = g.index(v);
    auto dist = bfs(g, s, d);
    RadiusView view;
    view.center = v;
    view.radius = d;
    std::vector<VertexId> vs;
    std::vector<Edge> es;
    for (int i = 0; i < g.size(); ++i) {
        if (dist[i] < 0)
            continue;
        vs.push_back(g.id(i));
        view.distance[g.id(i)] = dist[i];
        for (int j : g.adj(i))
            if (i < j && dist[j] >= 0 && !(dist[i] == d && dist[j] == d))
                es.emplace_back(g.id(i), g.id(j));
        if (certs) {
            auto it = certs->find(g.id(i));
            if (it != certs->end())
                view.certificates[g.id(i)] = it->second;
        }
    }
    view.graph = LabeledGraph::build(std::move(vs), es);
    return view;
}

} // namespace lc
