#pragma once

#include "ecpcs/matrix.hpp"
#include "ecpcs/types.hpp"

namespace ecpcs {

/// Conventional co-association matrix A: a_ij is the fraction of members in
/// which objects i and j share a cluster. Symmetric, unit diagonal, [0, 1].
SquareMatrix coassociation(const Ensemble& ensemble);

/// Enhanced co-association matrix B: the same average, except that a member
/// placing i and j in different clusters contributes the cluster-wise
/// similarity z_uv of those two clusters instead of 0. B >= A entrywise.
SquareMatrix enhanced_coassociation(const Ensemble& ensemble, const SquareMatrix& z);

}  // namespace ecpcs
