#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "lcert/cert.hpp"
#include "lcert/layers.hpp"

namespace lc {

// ------------------------------------------------------------ field codecs

// (vertex, parent or 0), sorted by vertex
using TreeList = std::vector<std::pair<VertexId, VertexId>>;

struct ClassTree {
    int level = 1;
    VertexId label = 0;
    // (member, parent or 0, witness or 0), sorted by member
    std::vector<std::tuple<VertexId, VertexId, VertexId>> entries;
    bool operator==(const ClassTree&) const = default;
};

struct Piece {
    int level = 1;
    long long number = 1;
    BitString payload;
    bool operator==(const Piece&) const = default;
};

BitString encode_tree(const TreeList& t);
TreeList decode_tree(const BitString& b);
BitString encode_table(const EccTable& t);
EccTable decode_table(const BitString& b);
BitString encode_components(const std::vector<ClassTree>& c);
std::vector<ClassTree> decode_components(const BitString& b);
BitString encode_pieces(const std::vector<Piece>& p);
std::vector<Piece> decode_pieces(const BitString& b);

// BFS forest rooted at the minimum identifier of each component
TreeList bfs_forest(const LabeledGraph& g);
std::vector<ClassTree> class_trees(const LabeledGraph& g, const EccPartition& p);

// adjacency list of G_i as rows of L_i: gamma(rows), then per row gamma(id),
// gamma(degree), gamma(neighbor)...
BitString encode_adjacency_rows(const LabeledGraph& g, const Bits& rows);
using AdjacencyRows = std::map<VertexId, std::vector<VertexId>>;
AdjacencyRows decode_adjacency_rows(const BitString& b);
std::vector<BitString> cut_pieces(const BitString& b, long long count);

// ------------------------------------------------------------- provers

constexpr std::uint64_t default_piece_seed = 0x5eed;

// SpanningTree, Table, Components (identical at every vertex)
void add_tg_fields(const LabeledGraph& g, const EccPartition& p, CertificateAssignment& a);
// Pieces(u)
void add_piece_fields(const LabeledGraph& g, const EccPartition& p, CertificateAssignment& a,
                      std::uint64_t seed = default_piece_seed, std::vector<PieceSet>* spread = nullptr);

// ------------------------------------------------------- verifier context

// What a vertex has established after running the T_G and G_<=u checks.
struct LayeredContext {
    const RadiusView* view = nullptr;
    int k = 2;
    Epsilon eps;
    std::map<VertexId, Certificate> certs; // decoded certificates in the view
    TreeList tree;
    long long n = 0;
    std::optional<LayerThresholds> thresholds;
    EccTable table;
    std::vector<ClassTree> components;
    // pieces, merged over the view: (level, number) -> payload
    std::map<std::pair<int, long long>, BitString> piece_map;
    std::map<VertexId, std::vector<std::pair<int, long long>>> held;
    std::map<int, AdjacencyRows> rows; // parsed G_j, filled lazily

    VertexId center() const { return view->center; }
    int level(VertexId v) const { return table.level_of(v); }
    // level from the exact degree; only for vertices at distance < k
    int true_level(VertexId v) const { return thresholds->level(view->degree(v)); }
    const Certificate& cert(VertexId v) const { return certs.at(v); }
    const AdjacencyRows* adjacency(int j);
    // G_<=w rebuilt from the pieces in N[w]; w must be within k-1 of the center
    std::optional<WitnessedGraph> witnessed(VertexId w, std::string* why = nullptr);
};

// Decodes the certificates of the view against `schema` and runs the T_G
// checks. `fields_equal` lists the fields that must agree with all neighbors.
NodeResult verify_tg(const RadiusView& view, int k, const Epsilon& eps, const std::vector<std::string>& schema,
                     LayeredContext& ctx);
// T_G checks followed by the piece checks
NodeResult verify_gu(const RadiusView& view, int k, const Epsilon& eps, const std::vector<std::string>& schema,
                     LayeredContext& ctx);
// neighbors must carry bit-identical copies of the named field
NodeResult check_field_equal(const LayeredContext& ctx, const std::string& field);

// ------------------------------------------------------------- schemes

extern const std::vector<std::string> tg_fields;
extern const std::vector<std::string> gu_fields;

ComputationScheme<EccTable> tg_scheme(const Epsilon& eps, int k);
ComputationScheme<WitnessedGraph> gu_scheme(const Epsilon& eps, int k);

enum class SpreadMode { MinDegree, Regular };
// any decidable property at radius 2, by spreading the whole map over the
// neighborhoods; MinDegree uses ceil(n^delta) pieces of the adjacency matrix,
// Regular uses d pieces of the adjacency list
CertScheme spread_universal_scheme(std::function<bool(const LabeledGraph&)> property, SpreadMode mode,
                                   const Epsilon& delta = Epsilon::half());

// new names in [1, n] per component: depth-first preorder with children taken
// in identifier order
struct RenamingRecord {
    VertexId root = 0;
    std::uint64_t dist = 0;
    VertexId parent = 0;
    std::uint64_t size = 0;
    std::uint64_t start = 0;
    std::uint64_t n = 0;
    bool operator==(const RenamingRecord&) const = default;
};
BitString encode_renaming(const RenamingRecord& r);
RenamingRecord decode_renaming(const BitString& b);
std::map<VertexId, RenamingRecord> renaming_records(const LabeledGraph& g);
// checks the renaming field at the center of a radius >= 1 view; on success
// `names` holds the new name of every neighbor and of the center
NodeResult verify_renaming(const RadiusView& view, const std::map<VertexId, Certificate>& certs,
                           std::map<VertexId, std::uint64_t>& names);
ComputationScheme<std::uint64_t> renaming_scheme();

// decodes every certificate of a view; returns false if the center's fails
bool decode_view(const RadiusView& view, const std::vector<std::string>& schema,
                 std::map<VertexId, Certificate>& out);

} // namespace lc
