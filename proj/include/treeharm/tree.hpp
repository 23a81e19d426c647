#pragma once

#include <optional>
#include <vector>

#include "treeharm/types.hpp"

namespace treeharm {

//============================== parameters ==============================//

/// Degrees of the two vertex types, the orbit count of the acting group,
/// and the growth constant delta = (d0-1)(d1-1). The root has degree d0.
struct TreeParams {
  int d0 = 0;
  int d1 = 0;
  int kappa = 0;
  long long delta = 0;

  bool operator==(const TreeParams&) const = default;
};

/// Validates degrees and orbit count.
/// Requires d0 >= 2, d1 >= 2, d0+d1 >= 5, kappa in {1,2}; kappa = 1 needs
/// d0 = d1 (with two distinct degrees no automorphism exchanges the two
/// vertex types, so the vertex orbit count is necessarily 2).
TreeParams make_tree_params(int d0, int d1, int kappa);

/// Children below one vertex at the given depth. The root spends no edge on
/// a parent, so branching(0) = d0; below, degree alternates with parity.
long long branching(const TreeParams& params, int depth);

/// |sphere of radius r|: 1 for r = 0, else
/// d0 * (d1-1)^ceil((r-1)/2) * (d0-1)^floor((r-1)/2).
/// For r in kappa*N, r >= kappa, this equals (d0/(d0-1)) * delta^(r/2).
long long sphere_size(const TreeParams& params, int r);

/// Same quantity without the 64-bit range restriction.
bigint_t sphere_size_exact(const TreeParams& params, int r);

//=============================== vertices ===============================//

/// Root-based path of child indices; the root is the empty path.
struct VertexAddress {
  std::vector<int> path;

  int depth() const { return static_cast<int>(path.size()); }
  bool operator==(const VertexAddress&) const = default;
};

/// True when every child index lies below the branching of its depth.
bool valid_address(const TreeParams& params, const VertexAddress& v);

/// Length of the longest common initial segment of the two paths.
int common_prefix_length(const VertexAddress& x, const VertexAddress& y);

/// Shortest-path metric: depth(x) + depth(y) - 2 * common prefix length.
int distance(const VertexAddress& x, const VertexAddress& y);

//================================= balls =================================//

/// Ball of radius R around the root, in breadth-first order. Spheres are
/// contiguous index ranges and all vertices at one depth share a branching
/// count, so parent/child relations and addresses are index arithmetic;
/// nothing is stored per vertex. The budget caps the total vertex count,
/// which in turn bounds any whole-ball scan.
class BallEnumeration {
 public:
  BallEnumeration(TreeParams params, int radius, std::vector<long long> offsets)
      : params_(params), radius_(radius), offsets_(std::move(offsets)) {}

  const TreeParams& params() const { return params_; }
  int radius() const { return radius_; }
  long long size() const { return offsets_.back(); }

  long long sphere_begin(int r) const { return offsets_[r]; }
  long long sphere_end(int r) const { return offsets_[r + 1]; }
  long long sphere_count(int r) const { return offsets_[r + 1] - offsets_[r]; }

  int depth_of(long long index) const;
  long long parent_of(long long index) const;
  int child_index_of(long long index) const;
  long long first_child_of(long long index) const;

  VertexAddress address_of(long long index) const;
  std::optional<long long> index_of(const VertexAddress& v) const;
  bool contains(const VertexAddress& v) const { return index_of(v).has_value(); }

 private:
  TreeParams params_;
  int radius_ = 0;
  std::vector<long long> offsets_;  // offsets_[r] = first index at depth r
};

BallEnumeration enumerate_ball(const TreeParams& params, int radius);
BallEnumeration enumerate_ball(const TreeParams& params, int radius,
                               long long vertex_budget);

/// Membership-checked metric on an enumerated ball.
int distance(const BallEnumeration& ball, const VertexAddress& x,
             const VertexAddress& y);

//========================= boundary cylinders =========================//

/// Set of boundary rays passing through `base`; its measure under the
/// K-invariant probability measure is exactly 1/sphere_size(depth(base)).
struct Cylinder {
  VertexAddress base;
  rational_t measure;
};

/// One cylinder per vertex at depth n; measures sum to exactly 1.
/// Guarded by the vertex budget (the list has sphere_size(n) entries).
std::vector<Cylinder> cylinders_at_depth(const TreeParams& params, int n);
std::vector<Cylinder> cylinders_at_depth(const TreeParams& params, int n,
                                         long long vertex_budget);

/// Horocycle index of x against every ray in the cylinder: 2j - depth(x)
/// where j is the common prefix length of x and the cylinder base. Constant
/// on the cylinder only when the base is at least as deep as x; shallower
/// cylinders are rejected rather than guessed at.
int horocycle_index(const VertexAddress& x, const Cylinder& cyl);

}  // namespace treeharm
