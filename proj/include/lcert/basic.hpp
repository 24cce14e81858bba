#pragma once

#include "lcert/cert.hpp"
#include "lcert/oracles.hpp"

namespace lc {

// Distance to the minimum identifier of each component; radius 1. A root
// (label 0) needs every neighbor at 1, any other vertex exactly one neighbor
// at label-1 and all others at label+1.
CertScheme acyclicity_scheme();
BitString encode_distance(std::uint64_t label);

// Renaming into [1, n] plus an n-bit vector of neighbor names; radius 1.
CertScheme kk_free_scheme(int q);

// Same certificates at radius d: the boundary edges hidden by the view are
// recovered from the vectors, then an induced copy of H with w on the center
// is searched for.
CertScheme centered_h_scheme(const LabeledGraph& h, VertexId w, int d);

} // namespace lc
