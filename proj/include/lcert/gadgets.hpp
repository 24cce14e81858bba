#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lcert/cert.hpp"
#include "lcert/graph.hpp"

namespace lc {

struct ShapeError : ContractError {
    using ContractError::ContractError;
};

// unordered pairs {i, j} of [1, n], stored with i < j
struct PairFamily {
    int n = 0;
    std::set<std::pair<int, int>> pairs;

    void add(int i, int j);
    bool contains(int i, int j) const;
    bool operator==(const PairFamily&) const = default;
};

PairFamily complement(const PairFamily& a);
bool intersects(const PairFamily& a, const PairFamily& b);
// each pair kept independently with probability p
PairFamily random_pair_family(int n, double p, std::mt19937_64& rng);
// one "i j" line per pair; blank lines and '#' comments ignored
PairFamily parse_pair_family(int n, const std::string& text);
std::string format_pair_family(const PairFamily& a);

// Parts [1..n] -> identifiers 1..n, [1'..n'] -> identifiers n+1..2n.
LabeledGraph bipartite_encoder(const PairFamily& a);

struct CliqueSlot {
    int side = 0;  // 0 or 1
    int level = 0; // 1..2k
    int position = 0;
    auto operator<=>(const CliqueSlot&) const = default;
};

struct GadgetInstance {
    int k = 0;
    int n = 0;
    LabeledGraph graph;
    std::map<CliqueSlot, VertexId> clique_index;
    // T identifier -> vertex, for the vertices of T kept as single vertices
    // (w and the pendant copies; v0, v1, w when T is a path on 4k + 3 vertices)
    std::map<VertexId, VertexId> extras;
    // clique (side, level) each pendant vertex hangs from; w's component is absent
    std::map<VertexId, std::pair<int, int>> pending;
    VertexId w = 0;

    VertexId at(int side, int level, int position) const { return clique_index.at({side, level, position}); }
    // clique slot of a vertex, none for extras
    std::optional<CliqueSlot> slot_of(VertexId v) const;
};

// Identifiers: K^b_a[i] = b*2k*n + (a-1)*n + i, then the extras in increasing
// T identifier order. T is a path on at least 4k + 3 vertices or a tree of
// diameter >= 4k + 2 without degree-2 vertices; ShapeError otherwise.
GadgetInstance build_gadget(int k, int n, const LabeledGraph& t, const PairFamily& a, const PairFamily& b);

// the 4k-edge path of T replaced by cliques: lexicographically smallest
// identifier sequence among paths with 4k edges and no leaf
std::vector<VertexId> gadget_spine(const LabeledGraph& t, int k);

// "clique <side> <level> <position> <id>" and "extra <T id> <id> [<side> <level>]"
std::string gadget_mapping_text(const GadgetInstance& g);

struct PropositionReport {
    bool contains_t = false;
    bool pairs_intersect = false;
    std::size_t embeddings = 0;
    // every embedding has exactly 4k clique vertices and uses every extra
    bool clique_count_ok = true;
    // at most 2 embedded vertices per clique, never 2 in two antimatched cliques
    bool clique_shape_ok = true;
    std::string detail;

    bool consistent() const { return contains_t == pairs_intersect && clique_count_ok && clique_shape_ok; }
};

// Enumerates the induced copies of T in G_{k,n}(A, B) (at most `cap`).
PropositionReport proposition_check(int k, int n, const LabeledGraph& t, const PairFamily& a, const PairFamily& b,
                                    std::size_t cap = 100000);

struct HybridOptions {
    // certificates: the honest ones of this scheme on G(A, co-A) when set,
    // otherwise seeded random bits per vertex
    const CertScheme* scheme = nullptr;
    std::uint64_t seed = 1;
    // negative control: G(B, co-B) and G(A, co-A) get a shuffled identifier layout
    bool shuffle_layout = false;
    LabeledGraph t; // defaults to P_{4k+3}
};

struct HybridReport {
    bool left_identical = true;  // G(B, co-A) vs G(B, co-B), cliques of level <= k and their pendants
    bool right_identical = true; // G(B, co-A) vs G(A, co-A), level > k, w and their pendants
    std::size_t compared = 0;
    std::string first_difference;

    bool identical() const { return left_identical && right_identical; }
};

HybridReport hybrid_view_experiment(int k, int n, const PairFamily& a, const PairFamily& b,
                                    const HybridOptions& opt = {});

// smallest m with n(n-1)/2 <= m(4kn + |T|): ceil(n(n-1) / (2(4kn + |T|)))
std::uint64_t fooling_bound(std::uint64_t n, std::uint64_t k, std::uint64_t t_size);

} // namespace lc
