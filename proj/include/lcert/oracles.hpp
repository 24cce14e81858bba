#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "lcert/epsilon.hpp"
#include "lcert/graph.hpp"

namespace lc {

enum class EmbedMode { Induced, Subgraph };

constexpr std::size_t default_pattern_cap = 16;

using Embedding = std::map<VertexId, VertexId>; // pattern vertex -> host vertex

std::optional<Embedding> find_induced_embedding(const LabeledGraph& g, const LabeledGraph& h, EmbedMode mode,
                                                std::size_t cap = default_pattern_cap);

// Index-level embedding search with optional per-pattern-vertex candidate sets
// (empty Bits = unrestricted), a set the image must touch, and a class
// constraint: host vertices with klass >= 0 must receive pairwise distinct
// classes, klass == -2 marks a host vertex as unusable.
struct EmbeddingQuery {
    const LabeledGraph* host = nullptr;
    const LabeledGraph* pattern = nullptr;
    EmbedMode mode = EmbedMode::Induced;
    std::vector<Bits> candidates;
    std::optional<Bits> must_touch;
    const std::vector<int>* klass = nullptr;
    std::size_t cap = default_pattern_cap;
};

// Calls `found(phi)` (phi[pattern index] = host index) for each embedding until
// it returns false. Returns true if enumeration was stopped by the callback.
bool search_embeddings(const EmbeddingQuery& q, const std::function<bool(const std::vector<int>&)>& found);
bool embedding_exists(const EmbeddingQuery& q);

struct PathConstraint {
    std::optional<VertexId> start;
    std::optional<VertexId> end;
    std::optional<std::vector<VertexId>> allowed; // none = all vertices
    std::optional<VertexId> avoid_closed_neighborhood_of;
    std::optional<VertexId> two_path_partner;
};

struct PathResult {
    int count = 0;
    std::vector<VertexId> path;
    std::vector<VertexId> second; // partner path in the two-path variant
};

// Vertex count of a longest induced path satisfying c (0 if none). Named
// start/end/partner vertices are exempt from `allowed` and from the avoided
// closed neighborhood.
PathResult longest_induced_path(const LabeledGraph& g, const PathConstraint& c);

// Index-level primitives. `target` > 0 stops the search once a value >= target
// is found (the returned value is then a lower bound that already reaches it).
int longest_path_from(const LabeledGraph& g, int start, const Bits& allowed, int end = -1,
                      std::vector<int>* witness = nullptr, int target = 0);
int longest_two_paths(const LabeledGraph& g, int s, int p, const Bits& allowed, std::vector<int>* w1 = nullptr,
                      std::vector<int>* w2 = nullptr, int target = 0);
// longest induced path anywhere inside `allowed`
int longest_path_within(const LabeledGraph& g, const Bits& allowed, std::vector<int>* witness = nullptr,
                        int target = 0);

enum class Walk { Continue, Prune, Stop };
// Depth-first enumeration of the induced paths that start at `start` and use
// only vertices of `allowed` afterwards. Returns true if stopped.
bool enumerate_induced_paths(const LabeledGraph& g, int start, const Bits& allowed,
                             const std::function<Walk(const std::vector<int>&)>& visit);

bool is_induced_path(const LabeledGraph& g, const std::vector<VertexId>& p);

// Classes of the i-linked relation (transitively closed), computed by
// enumerating simple paths; classes sorted by minimum identifier.
std::vector<std::vector<VertexId>> ecc_reference(const LabeledGraph& g, int k, const Epsilon& eps, int i);

// Named small graphs used as patterns.
LabeledGraph path_graph(int n, VertexId first = 1);
LabeledGraph cycle_graph(int n, VertexId first = 1);
LabeledGraph complete_graph(int n, VertexId first = 1);
LabeledGraph star_graph(int leaves); // center 1
LabeledGraph paw_graph();            // triangle 1,2,3 plus pendant 4 on 3
LabeledGraph petersen_graph();
LabeledGraph grid_graph(int rows, int cols);
LabeledGraph complete_bipartite(int a, int b);

} // namespace lc
