#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "lcert/cert.hpp"
#include "lcert/layered.hpp"
#include "lcert/oracles.hpp"

namespace lc {

// A subgraph of H (over H's identifiers) with its pointed vertices.
struct PointedGraph {
    LabeledGraph graph;
    std::set<VertexId> pointed;
    bool operator==(const PointedGraph&) const = default;
};

// (H', {h}) with H' induced by h and the components of H - h selected by
// `mask` (bit j = j-th component, components ordered by smallest identifier)
struct PointedColumn {
    VertexId h = 0;
    std::uint32_t mask = 0;
    PointedGraph pg;
};

std::vector<PointedColumn> enumerate_pointed_graphs(const LabeledGraph& h);
// induced by (V(H) \ V(p)) + pointed(p)
PointedGraph complement_in(const LabeledGraph& h, const PointedGraph& p);
// the union of two vertex-disjoint, anticomplete pointed subgraphs of H;
// none when they share a vertex or an edge of H joins them
std::optional<PointedGraph> disjoint_union_in(const LabeledGraph& h, const PointedGraph& a, const PointedGraph& b);

// Rows: vertices with T_G[v, 2] defined (eps = 1/2); one bit per column of
// enumerate_pointed_graphs(H). A bit is set when H' maps into C_v(<= d_v)
// with h on v and the rest in C_v(< d_v).
struct HTable {
    std::size_t columns = 0;
    std::map<VertexId, std::vector<bool>> rows;
    bool operator==(const HTable&) const = default;
};

HTable h_table(const LabeledGraph& g, int k, const LabeledGraph& h, EmbedMode mode);
std::vector<bool> h_table_row(const LabeledGraph& g, const EccTable& t, const std::vector<PointedColumn>& cols,
                              EmbedMode mode, VertexId v);
BitString encode_htable(const HTable& t);
HTable decode_htable(const BitString& b);

extern const std::vector<std::string> hfree_fields; // gu fields + HTable

// H connected with at most 4k-1 vertices, k >= 2. Reasons of the glue steps:
// "glue-h:<v>:<column>:<ids>" and "glue-hh:<v1>:<v2>:<column1>:<column2>:<ids>",
// where <ids> are the images of the start piece in increasing H identifier
// order and columns index enumerate_pointed_graphs(H).
CertScheme h_free_scheme(const LabeledGraph& h, int k, EmbedMode mode);

} // namespace lc
