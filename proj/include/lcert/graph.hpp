#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lcert/bits.hpp"

namespace lc {

using VertexId = std::uint64_t;
using Edge = std::pair<VertexId, VertexId>;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LookupError : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

// Fixed-size bitset over vertex indices.
class Bits {
public:
    Bits() = default;
    explicit Bits(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int size() const { return n_; }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(int i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void set_all();
    void clear();
    int count() const;
    bool any() const;
    bool none() const { return !any(); }
    bool intersects(const Bits& o) const;
    bool subset_of(const Bits& o) const;
    Bits& operator&=(const Bits& o);
    Bits& operator|=(const Bits& o);
    Bits& andnot(const Bits& o);
    Bits operator&(const Bits& o) const
    {
        Bits r = *this;
        r &= o;
        return r;
    }
    Bits operator|(const Bits& o) const
    {
        Bits r = *this;
        r |= o;
        return r;
    }
    Bits minus(const Bits& o) const
    {
        Bits r = *this;
        r.andnot(o);
        return r;
    }
    bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }
    int first() const { return next(0); }
    // smallest set index >= i, or -1
    int next(int i) const;
    std::vector<int> elements() const;

    template <class F>
    void for_each(F&& f) const
    {
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            auto w = w_[wi];
            while (w) {
                int b = __builtin_ctzll(w);
                f(static_cast<int>(wi * 64 + b));
                w &= w - 1;
            }
        }
    }

private:
    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

// Simple undirected graph over distinct positive identifiers. Vertices are kept
// sorted by identifier; algorithms work on the dense index 0..n-1.
class LabeledGraph {
public:
    LabeledGraph() = default;
    // throws ContractError on self-loops, duplicate edges, id 0, unknown endpoints
    static LabeledGraph build(std::vector<VertexId> vertices, const std::vector<Edge>& edges,
                              bool allow_duplicate_edges = false);

    int size() const { return static_cast<int>(ids_.size()); }
    std::size_t edge_count() const { return m_; }
    VertexId id(int i) const { return ids_[i]; }
    const std::vector<VertexId>& ids() const { return ids_; }
    bool contains(VertexId v) const { return index_.count(v) != 0; }
    int index(VertexId v) const;
    int find(VertexId v) const
    {
        auto it = index_.find(v);
        return it == index_.end() ? -1 : it->second;
    }
    const std::vector<int>& adj(int i) const { return adj_[i]; }
    const Bits& row(int i) const { return rows_[i]; }
    bool adjacent(int i, int j) const { return rows_[i].test(j); }
    bool has_edge(VertexId a, VertexId b) const;
    int degree(int i) const { return static_cast<int>(adj_[i].size()); }
    std::vector<VertexId> neighbor_ids(VertexId v) const;
    std::vector<Edge> edges() const;
    Bits empty_set() const { return Bits(size()); }
    Bits full_set() const
    {
        Bits b(size());
        b.set_all();
        return b;
    }
    Bits set_of(const std::vector<VertexId>& vs) const;
    std::vector<VertexId> ids_of(const Bits& b) const;

    bool operator==(const LabeledGraph& o) const { return ids_ == o.ids_ && edges() == o.edges(); }

private:
    std::vector<VertexId> ids_;
    std::unordered_map<VertexId, int> index_;
    std::vector<std::vector<int>> adj_;
    std::vector<Bits> rows_;
    std::size_t m_ = 0;
};

// "n m" header (or "p edge n m") followed by m lines "u v". Lines starting with
// 'c' or '#' are comments. Vertex identifiers are whatever appears in edges;
// if fewer than n distinct identifiers appear, the smallest unused positive
// integers are added as isolated vertices.
LabeledGraph parse_graph(const std::string& text);
LabeledGraph load_graph(const std::string& path);
// canonical edge-list: "n m", then edges sorted, then "v" lines for isolated
// vertices so identifiers survive the round trip
std::string serialize_graph(const LabeledGraph& g);

LabeledGraph induced_subgraph(const LabeledGraph& g, const std::vector<VertexId>& s);
LabeledGraph induced_subgraph(const LabeledGraph& g, const Bits& s);

// BFS distances by index; -1 unreachable; stops after `limit` layers if limit >= 0
std::vector<int> bfs(const LabeledGraph& g, int source, int limit = -1);
std::vector<int> bfs_from_set(const LabeledGraph& g, const Bits& sources, int limit = -1,
                              const Bits* within = nullptr);
std::vector<int> components(const LabeledGraph& g, int* count = nullptr);
bool is_connected(const LabeledGraph& g);

using CertificateBits = std::shared_ptr<const BitString>;

struct RadiusView {
    VertexId center = 0;
    int radius = 0;
    // the visible subgraph: vertices at distance <= radius, all edges among them
    // except those joining two vertices at distance exactly radius
    LabeledGraph graph;
    std::unordered_map<VertexId, int> distance;
    std::map<VertexId, CertificateBits> certificates;

    int dist(VertexId v) const
    {
        auto it = distance.find(v);
        return it == distance.end() ? -1 : it->second;
    }
    const BitString* certificate(VertexId v) const
    {
        auto it = certificates.find(v);
        return it == certificates.end() ? nullptr : it->second.get();
    }
    // exact degree of v in G; valid only for dist(v) < radius
    int degree(VertexId v) const { return graph.degree(graph.index(v)); }
    std::vector<VertexId> vertices_within(int d) const;
    // deterministic byte serialization, used for bit-identity comparisons
    std::string serialize() const;
};

RadiusView radius_view(const LabeledGraph& g, VertexId v, int d,
                       const std::map<VertexId, CertificateBits>* certs = nullptr);

} // namespace lc
