#pragma once

#include <utility>
#include <vector>

#include "treeharm/tree.hpp"
#include "treeharm/types.hpp"

namespace treeharm {

//============================ Poisson kernel ============================//

/// P^z on a cylinder with the given horocycle index: delta^(z * index / 2).
complex_t poisson_kernel_value(const TreeParams& params, complex_t z,
                               int index);

//====================== boundary strata of a vertex ======================//

/// Cylinders at one depth with the horocycle index each one assigns to a
/// chosen vertex of that depth.
struct BoundaryPartition {
  int depth = 0;
  std::vector<std::pair<Cylinder, int>> cylinders;
};

/// Materializes the depth-n cylinder partition (n = depth of x) with the
/// index of x on each cylinder. Needs the ball to reach depth n.
BoundaryPartition partition_with_indices(const BallEnumeration& ball,
                                         const VertexAddress& x);

/// Total cylinder measure per horocycle index for a depth-r vertex, as
/// exact rationals. Index 2j - r carries weight
///   1/sphere_size(r)                    for j = r,
///   (branching(j) - 1)/sphere_size(j+1) for j < r;
/// the weights telescope to exactly 1. Depends only on r, not on the
/// vertex: sphere transitivity.
std::vector<std::pair<int, rational_t>> index_weights(const TreeParams& params,
                                                      int r);

//========================= boundary integration =========================//

/// Spherical function via its boundary integral: the exact finite sum over
/// index strata of weight * delta^(z * index / 2). Valid at every z,
/// including parameters where the two-exponential decomposition is
/// singular.
complex_t spherical_via_boundary(const TreeParams& params, complex_t z, int r);

/// The same integral at integer z in {0, 1}, in exact rational arithmetic.
/// Both are Radon-Nikodym mass computations and must equal exactly 1.
rational_t boundary_mass_exact(const TreeParams& params, int z_integer, int r);

}  // namespace treeharm
