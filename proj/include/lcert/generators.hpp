#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lcert/graph.hpp"

namespace lc {

// G(n,p) on identifiers 1..n, or on n distinct identifiers drawn from [1, n^2]
// when `spread_ids` is set.
LabeledGraph random_gnp(int n, double p, std::mt19937_64& rng, bool spread_ids = false);
// uniform labelled tree (Pruefer sequence) on 1..n
LabeledGraph random_tree(int n, std::mt19937_64& rng);
// random tree plus `extra` random chords
LabeledGraph random_sparse(int n, int extra, std::mt19937_64& rng);
// same graph, vertex index i renamed to ids[i]
LabeledGraph relabel(const LabeledGraph& g, const std::vector<VertexId>& ids);

// All graphs on n <= 8 vertices up to isomorphism, identifiers 1..n.
std::vector<LabeledGraph> nonisomorphic_graphs(int n);
// canonical adjacency code for n <= 8 (upper triangle, row-major)
std::uint64_t canonical_code(const LabeledGraph& g);

// Incremental construction with automatically numbered vertices.
class GraphBuilder {
public:
    VertexId vertex();
    void edge(VertexId a, VertexId b);
    std::vector<VertexId> clique(int size);
    // center first, then the leaves
    std::vector<VertexId> star(int leaves);
    // a path of `length` new vertices hanging from `from` (0 = free path)
    std::vector<VertexId> path(VertexId from, int length);
    int size() const { return static_cast<int>(next_ - 1); }
    LabeledGraph build() const;

private:
    VertexId next_ = 1;
    std::vector<Edge> edges_;
};

// Two or three high-degree blobs (stars or cliques) linked by low-degree
// paths, with random pendant paths; at most `max_n` vertices. Hubs get at least
// ceil(sqrt(max_n)) neighbors so they land in V_2 at eps = 1/2.
LabeledGraph blob_instance(std::mt19937_64& rng, int max_n, int k);

} // namespace lc
