#include "treeharm/tree.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

namespace treeharm {

//=============================== budget ===============================//

long long default_vertex_budget() {
  static const long long kDefault = 10'000'000;
  if (const char* env = std::getenv("TREEHARM_BUDGET")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefault;
}

//============================== parameters ==============================//

TreeParams make_tree_params(int d0, int d1, int kappa) {
  if (d0 < 2 || d1 < 2) {
    throw ValidationError("degrees must satisfy d0 >= 2 and d1 >= 2, got (" +
                          std::to_string(d0) + "," + std::to_string(d1) + ")");
  }
  if (d0 + d1 < 5) {
    throw ValidationError(
        "degenerate degrees: d0 + d1 >= 5 required, got (" + std::to_string(d0) +
        "," + std::to_string(d1) + ") whose tree is a line");
  }
  if (kappa != 1 && kappa != 2) {
    throw ValidationError("orbit count kappa must be 1 or 2, got " +
                          std::to_string(kappa));
  }
  if (kappa == 1 && d0 != d1) {
    throw ValidationError(
        "kappa = 1 requires d0 = d1: distinct degrees split the vertices "
        "into two orbits");
  }
  TreeParams p;
  p.d0 = d0;
  p.d1 = d1;
  p.kappa = kappa;
  p.delta = static_cast<long long>(d0 - 1) * static_cast<long long>(d1 - 1);
  return p;
}

long long branching(const TreeParams& params, int depth) {
  if (depth < 0) throw ValidationError("negative depth");
  if (depth == 0) return params.d0;
  return (depth % 2 == 1) ? params.d1 - 1 : params.d0 - 1;
}

bigint_t sphere_size_exact(const TreeParams& params, int r) {
  if (r < 0) throw ValidationError("negative radius");
  if (r == 0) return 1;
  bigint_t n = params.d0;
  n *= boost::multiprecision::pow(bigint_t(params.d1 - 1), (r - 1 + 1) / 2);
  n *= boost::multiprecision::pow(bigint_t(params.d0 - 1), (r - 1) / 2);
  return n;
}

long long sphere_size(const TreeParams& params, int r) {
  bigint_t n = sphere_size_exact(params, r);
  if (n > std::numeric_limits<long long>::max()) {
    throw ValidationError("sphere size at radius " + std::to_string(r) +
                          " exceeds the 64-bit range");
  }
  return static_cast<long long>(n);
}

//=============================== vertices ===============================//

bool valid_address(const TreeParams& params, const VertexAddress& v) {
  for (int i = 0; i < v.depth(); ++i) {
    if (v.path[i] < 0 || v.path[i] >= branching(params, i)) return false;
  }
  return true;
}

int common_prefix_length(const VertexAddress& x, const VertexAddress& y) {
  int n = std::min(x.depth(), y.depth());
  int j = 0;
  while (j < n && x.path[j] == y.path[j]) ++j;
  return j;
}

int distance(const VertexAddress& x, const VertexAddress& y) {
  return x.depth() + y.depth() - 2 * common_prefix_length(x, y);
}

//================================= balls =================================//

int BallEnumeration::depth_of(long long index) const {
  // offsets_ is strictly increasing; find r with offsets_[r] <= index.
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

long long BallEnumeration::parent_of(long long index) const {
  int r = depth_of(index);
  if (r == 0) throw ValidationError("the root has no parent");
  return offsets_[r - 1] + (index - offsets_[r]) / branching(params_, r - 1);
}

int BallEnumeration::child_index_of(long long index) const {
  int r = depth_of(index);
  if (r == 0) throw ValidationError("the root has no child index");
  return static_cast<int>((index - offsets_[r]) % branching(params_, r - 1));
}

long long BallEnumeration::first_child_of(long long index) const {
  int r = depth_of(index);
  if (r >= radius_) throw ValidationError("vertex is on the outermost sphere");
  return offsets_[r + 1] + (index - offsets_[r]) * branching(params_, r);
}

VertexAddress BallEnumeration::address_of(long long index) const {
  int r = depth_of(index);
  VertexAddress v;
  v.path.resize(r);
  for (int d = r; d > 0; --d) {
    v.path[d - 1] = child_index_of(index);
    index = parent_of(index);
  }
  return v;
}

std::optional<long long> BallEnumeration::index_of(const VertexAddress& v) const {
  if (v.depth() > radius_ || !valid_address(params_, v)) return std::nullopt;
  long long index = 0;
  for (int d = 0; d < v.depth(); ++d) {
    index = offsets_[d + 1] + (index - offsets_[d]) * branching(params_, d) +
            v.path[d];
  }
  return index;
}

BallEnumeration enumerate_ball(const TreeParams& params, int radius) {
  return enumerate_ball(params, radius, default_vertex_budget());
}

BallEnumeration enumerate_ball(const TreeParams& params, int radius,
                               long long vertex_budget) {
  if (radius < 0) throw ValidationError("negative ball radius");
  std::vector<long long> offsets;
  offsets.reserve(radius + 2);
  offsets.push_back(0);
  bigint_t total = 0;
  for (int r = 0; r <= radius; ++r) {
    total += sphere_size_exact(params, r);
    if (total > vertex_budget) {
      throw BudgetExceededError(
          "ball of radius " + std::to_string(radius) + " needs more than " +
          std::to_string(vertex_budget) + " vertices at radius " +
          std::to_string(r));
    }
    offsets.push_back(static_cast<long long>(total));
  }
  return BallEnumeration(params, radius, std::move(offsets));
}

int distance(const BallEnumeration& ball, const VertexAddress& x,
             const VertexAddress& y) {
  if (!ball.contains(x) || !ball.contains(y)) {
    throw ValidationError("vertex outside the enumerated ball");
  }
  return distance(x, y);
}

//========================= boundary cylinders =========================//

std::vector<Cylinder> cylinders_at_depth(const TreeParams& params, int n) {
  return cylinders_at_depth(params, n, default_vertex_budget());
}

std::vector<Cylinder> cylinders_at_depth(const TreeParams& params, int n,
                                         long long vertex_budget) {
  if (n < 1) throw ValidationError("cylinder depth must be >= 1");
  bigint_t count = sphere_size_exact(params, n);
  if (count > vertex_budget) {
    throw BudgetExceededError("depth " + std::to_string(n) + " has " +
                              count.str() + " cylinders, over the budget");
  }
  rational_t measure = rational_t(1) / rational_t(count);
  std::vector<Cylinder> out;
  out.reserve(static_cast<std::size_t>(count));

  // Odometer over per-depth child index limits.
  VertexAddress v;
  v.path.assign(n, 0);
  while (true) {
    out.push_back(Cylinder{v, measure});
    int d = n - 1;
    while (d >= 0 && v.path[d] + 1 == branching(params, d)) {
      v.path[d] = 0;
      --d;
    }
    if (d < 0) break;
    ++v.path[d];
  }
  return out;
}

int horocycle_index(const VertexAddress& x, const Cylinder& cyl) {
  if (cyl.base.depth() < x.depth()) {
    throw ValidationError(
        "cylinder base shallower than the vertex: the horocycle index is "
        "not constant on such a cylinder");
  }
  return 2 * common_prefix_length(x, cyl.base) - x.depth();
}

}  // namespace treeharm
