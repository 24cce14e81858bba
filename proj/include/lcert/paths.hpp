#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "lcert/cert.hpp"
#include "lcert/layered.hpp"

namespace lc {

// LongestPaths[v, i]: vertex count of a longest induced path starting at v
// whose other vertices are strictly closer than v to the ECC_i near v. Defined
// when T_G[v, i] = (C, d) with 1 <= d <= k-1; absent otherwise.
struct LongestPathsField {
    std::map<std::pair<VertexId, int>, int> entries;
    std::optional<int> at(VertexId v, int i) const;
    bool operator==(const LongestPathsField&) const = default;
};

enum class LpLevels { Single, Multi };

// Single uses layer 2 of eps = 1/2; Multi uses every layer of eps.
LongestPathsField longest_paths_field(const LabeledGraph& g, int k, LpLevels levels,
                                      const Epsilon& eps = Epsilon::half());
// cap > 0 stores min(value, cap); the schemes cap at their m, since every
// verifier test on these values has the form "sum >= m"
LongestPathsField longest_paths_from(const LabeledGraph& g, const EccTable& t, const std::vector<int>& levels,
                                     int cap = 0);
BitString encode_longest_paths(const LongestPathsField& f);
LongestPathsField decode_longest_paths(const BitString& b);

// {w : T_G[w, i] = (c, d) with d <= dmax}, over the vertices of g
Bits near_set(const LabeledGraph& g, const EccTable& t, int i, VertexId c, int dmax);
// the single entry LongestPaths[v, i] computed on g (g may be a witnessed graph)
int longest_path_entry(const LabeledGraph& g, const EccTable& t, VertexId v, int i, int cap = 0);

// Rows v' in C_v(d_v) \ {v}; columns, with Q = the vertices closer than v to
// C_v: (1) from v inside Q + v'; (2) from v' inside Q \ N[v]; (3) from v to v'
// through Q; (4) two anticomplete paths from v and v' inside Q, summed.
// 0 means no such path.
struct ConstrainedPathTable {
    std::map<VertexId, std::array<int, 4>> rows;
    bool operator==(const ConstrainedPathTable&) const = default;
};
using ConstrainedPathField = std::map<VertexId, std::optional<ConstrainedPathTable>>;

// none unless v is in V_1 at distance 1..k-1 from an ECC_2 (eps = 1/2)
std::optional<ConstrainedPathTable> constrained_table(const LabeledGraph& g, const EccTable& t, VertexId v,
                                                     int cap = 0);
ConstrainedPathField constrained_path_field(const LabeledGraph& g, int k);
BitString encode_constrained(const std::optional<ConstrainedPathTable>& t);
std::optional<ConstrainedPathTable> decode_constrained(const BitString& b);

extern const std::vector<std::string> path_fields;       // gu fields + LongestPaths
extern const std::vector<std::string> constrained_fields; // path fields + ConstrainedPaths

// Steps (i)-(v) of the m-pathcheck at radius k, eps = 1/2.
std::function<NodeResult(const RadiusView&)> m_pathcheck_verifier(int m, int k);

CertScheme p4k_scheme(int k);
// eps = Epsilon::inverse_log() selects the quasilinear variant
CertScheme p3k_scheme(int k, const Epsilon& eps);
// bit j of `two_ecc_cases` enables case (a + j) of the two-ECC glue; all
// four are needed for soundness, single cases exist for testing
CertScheme p143k_scheme(int k, unsigned two_ecc_cases = 0xF);

// Rejection reasons of the glue steps carry the paths that were glued, as
// "step:part:part" with parts of '-'-joined identifiers.
std::vector<std::string> split_reason(const std::string& reason);
std::vector<VertexId> parse_ids(const std::string& part);

} // namespace lc
