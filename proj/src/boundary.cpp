#include "treeharm/boundary.hpp"

#include <cmath>
#include <string>

namespace treeharm {

namespace {

// delta^(e2/2) as an exact rational. For kappa = 1 the degrees coincide and
// delta^(1/2) = d0 - 1 is an integer; for kappa = 2 only even e2 occurs.
rational_t half_power_exact(const TreeParams& params, int e2) {
  bigint_t base;
  int e;
  if (params.kappa == 1) {
    base = params.d0 - 1;
    e = e2;
  } else {
    if (e2 % 2 != 0) {
      throw ValidationError("odd half-exponent with kappa = 2");
    }
    base = params.delta;
    e = e2 / 2;
  }
  bigint_t p = boost::multiprecision::pow(base, std::abs(e));
  return e >= 0 ? rational_t(p) : rational_t(1) / rational_t(p);
}

}  // namespace

//============================ Poisson kernel ============================//

complex_t poisson_kernel_value(const TreeParams& params, complex_t z,
                               int index) {
  double log_delta = std::log(static_cast<double>(params.delta));
  return std::exp(z * (0.5 * index * log_delta));
}

//====================== boundary strata of a vertex ======================//

BoundaryPartition partition_with_indices(const BallEnumeration& ball,
                                         const VertexAddress& x) {
  if (x.depth() > ball.radius()) {
    throw ValidationError("ball too small: cannot partition at depth " +
                          std::to_string(x.depth()));
  }
  if (!ball.contains(x)) {
    throw ValidationError("vertex outside the enumerated ball");
  }
  int n = x.depth();
  BoundaryPartition out;
  out.depth = n;
  if (n == 0) {
    // The whole boundary: one trivial stratum of full measure, index 0.
    out.cylinders.push_back({Cylinder{VertexAddress{}, rational_t(1)}, 0});
    return out;
  }
  rational_t measure = rational_t(1) / rational_t(sphere_size_exact(ball.params(), n));
  out.cylinders.reserve(static_cast<std::size_t>(ball.sphere_count(n)));
  for (long long idx = ball.sphere_begin(n); idx < ball.sphere_end(n); ++idx) {
    Cylinder cyl{ball.address_of(idx), measure};
    int index = horocycle_index(x, cyl);
    out.cylinders.push_back({std::move(cyl), index});
  }
  return out;
}

std::vector<std::pair<int, rational_t>> index_weights(const TreeParams& params,
                                                      int r) {
  if (r < 0) throw ValidationError("negative radius");
  std::vector<std::pair<int, rational_t>> out;
  out.reserve(r + 1);
  // Rays through the vertex itself: one stratum of measure 1/|sphere r|.
  out.push_back({r, rational_t(1) / rational_t(sphere_size_exact(params, r))});
  // Rays diverging at depth j < r: the divergence vertex keeps
  // branching(j) - 1 subtrees away from the vertex, each of measure
  // 1/|sphere j+1|.
  for (int j = r - 1; j >= 0; --j) {
    rational_t w = rational_t(branching(params, j) - 1) /
                   rational_t(sphere_size_exact(params, j + 1));
    out.push_back({2 * j - r, w});
  }
  return out;
}

//========================= boundary integration =========================//

complex_t spherical_via_boundary(const TreeParams& params, complex_t z,
                                 int r) {
  if (r < 0 || r % params.kappa != 0) {
    throw ValidationError("radius must be a nonnegative multiple of kappa");
  }
  if (r == 0) return complex_t(1.0, 0.0);
  double log_delta = std::log(static_cast<double>(params.delta));
  complex_t total(0.0, 0.0);
  for (const auto& [index, weight] : index_weights(params, r)) {
    total += weight.convert_to<double>() *
             std::exp(z * (0.5 * index * log_delta));
  }
  return total;
}

rational_t boundary_mass_exact(const TreeParams& params, int z_integer,
                               int r) {
  if (z_integer != 0 && z_integer != 1) {
    throw ValidationError("exact boundary mass is defined for z in {0, 1}");
  }
  if (r < 0 || r % params.kappa != 0) {
    throw ValidationError("radius must be a nonnegative multiple of kappa");
  }
  rational_t total = 0;
  for (const auto& [index, weight] : index_weights(params, r)) {
    total += z_integer == 0 ? weight
                            : weight * half_power_exact(params, index);
  }
  return total;
}

}  // namespace treeharm
