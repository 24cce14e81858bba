#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "lcert/epsilon.hpp"
#include "lcert/graph.hpp"

namespace lc {

// Degree layers V_1..V_N; levels are 1-based and stored per vertex index.
struct LayeredPartition {
    Epsilon eps;
    LayerThresholds thresholds{Epsilon::half(), 1};
    std::vector<int> level;

    int layers() const { return thresholds.layers(); }
    bool in_h(int v, int i) const { return level[v] >= i; }
    Bits layer(const LabeledGraph& g, int i) const;  // V_i
    Bits high(const LabeledGraph& g, int i) const;   // H_i
    Bits low(const LabeledGraph& g, int i) const;    // L_i
};

LayeredPartition compute_layer_partition(const LabeledGraph& g, const Epsilon& eps);

// ECC_i classes for every level, as vertex indices. classes[i-1] is sorted by
// minimum identifier; class_of[i-1][v] is the class position or -1.
struct EccPartition {
    int k = 2;
    LayeredPartition layers;
    std::vector<std::vector<std::vector<int>>> classes;
    std::vector<std::vector<int>> class_of;

    VertexId class_id(const LabeledGraph& g, int i, int c) const { return g.id(classes[i - 1][c].front()); }
};

// Components of the auxiliary graph on H_i joining pairs at distance <= 2k-2.
// Asserts that distinct classes are at distance >= 2k-1.
EccPartition compute_eccs(const LabeledGraph& g, int k, const Epsilon& eps);
// the same partition as identifier lists, one entry per level
std::vector<std::vector<std::vector<VertexId>>> ecc_classes(const LabeledGraph& g, int k, const Epsilon& eps);

struct EccEntry {
    VertexId id = 0;
    int dist = 0;
    bool operator==(const EccEntry&) const = default;
};

using EccCell = std::optional<EccEntry>;

struct EccTable {
    int layers = 0;
    std::map<VertexId, std::vector<EccCell>> rows;

    const EccCell& at(VertexId v, int i) const { return rows.at(v).at(i - 1); }
    bool has(VertexId v) const { return rows.count(v) != 0; }
    // the largest i with a distance-0 entry (the level of v); 0 if none
    int level_of(VertexId v) const;
    bool operator==(const EccTable&) const = default;
};

EccTable compute_ecc_table(const LabeledGraph& g, int k, const Epsilon& eps);
EccTable ecc_table_from(const LabeledGraph& g, const EccPartition& p);

// V_{<=u} read off an ECC table: v is witnessed by u when for i = level(v),
// u is in H_i and both carry the same distance-0 label.
std::set<VertexId> witnessed_set_from_table(const EccTable& t, VertexId u);

struct WitnessedGraph {
    VertexId owner = 0;
    std::set<VertexId> witnessed;
    LabeledGraph graph;
    bool operator==(const WitnessedGraph& o) const
    {
        return owner == o.owner && witnessed == o.witnessed && graph == o.graph;
    }
};

WitnessedGraph witnessed_graph(const LabeledGraph& g, int k, const Epsilon& eps, VertexId u);
WitnessedGraph witnessed_graph(const LabeledGraph& g, const EccPartition& p, VertexId u);

struct PieceSet {
    long long pieces = 1;
    int quota = 0;
    std::map<VertexId, std::vector<int>> held; // 1-based piece numbers, sorted
    int attempts = 0;                          // seeded draws used
    bool repaired = false;                     // greedy repair was needed
    int overflow = 0;                          // pieces handed out beyond the quota
};

int coupon_quota(long long n, long long pieces);
// every vertex of degree >= d must see all d pieces in its closed neighborhood
bool coupon_covers(const LabeledGraph& g, const PieceSet& p, long long min_degree);
PieceSet coupon_assignment(const LabeledGraph& g, long long d, std::uint64_t seed);

} // namespace lc
