#include "doctest.h"

#include <boost/multiprecision/cpp_int.hpp>

#include "treeharm/tree.hpp"

using namespace treeharm;

//============================== parameters ==============================//

TEST_CASE("tree params accept the supported geometries") {
  TreeParams h3 = make_tree_params(3, 3, 1);
  CHECK(h3.delta == 4);
  TreeParams s23 = make_tree_params(2, 3, 2);
  CHECK(s23.delta == 2);
  TreeParams s45 = make_tree_params(4, 5, 2);
  CHECK(s45.delta == 12);
}

TEST_CASE("tree params reject degenerate input") {
  // (2,2): delta = 1, the tree is a line and the growth constant collapses.
  CHECK_THROWS_AS(make_tree_params(2, 2, 1), ValidationError);
  CHECK_THROWS_AS(make_tree_params(2, 2, 2), ValidationError);
  // One orbit forces equal degrees.
  CHECK_THROWS_AS(make_tree_params(3, 4, 1), ValidationError);
  CHECK_THROWS_AS(make_tree_params(1, 5, 2), ValidationError);
  CHECK_THROWS_AS(make_tree_params(5, 1, 2), ValidationError);
  CHECK_THROWS_AS(make_tree_params(3, 3, 0), ValidationError);
  CHECK_THROWS_AS(make_tree_params(3, 3, 3), ValidationError);
}

TEST_CASE("branching alternates with depth parity") {
  TreeParams s23 = make_tree_params(2, 3, 2);
  CHECK(branching(s23, 0) == 2);  // root keeps all d0 edges
  CHECK(branching(s23, 1) == 2);  // d1 - 1
  CHECK(branching(s23, 2) == 1);  // d0 - 1
  CHECK(branching(s23, 3) == 2);
  CHECK(branching(s23, 4) == 1);

  TreeParams h3 = make_tree_params(3, 3, 1);
  CHECK(branching(h3, 0) == 3);
  for (int d = 1; d <= 6; ++d) CHECK(branching(h3, d) == 2);
}

TEST_CASE("sphere sizes match frozen values and the product of branchings") {
  TreeParams h3 = make_tree_params(3, 3, 1);
  long long h3_sizes[] = {1, 3, 6, 12, 24, 48};
  TreeParams s23 = make_tree_params(2, 3, 2);
  long long s23_sizes[] = {1, 2, 4, 4, 8, 8};
  for (int r = 0; r <= 5; ++r) {
    CHECK(sphere_size(h3, r) == h3_sizes[r]);
    CHECK(sphere_size(s23, r) == s23_sizes[r]);
  }
  TreeParams s45 = make_tree_params(4, 5, 2);
  CHECK(sphere_size(s45, 4) == 192);

  // |S_r| = branching(0) * ... * branching(r-1).
  for (const TreeParams& p : {h3, s23, s45}) {
    long long prod = 1;
    for (int r = 1; r <= 8; ++r) {
      prod *= branching(p, r - 1);
      CHECK(sphere_size(p, r) == prod);
      CHECK(sphere_size_exact(p, r) == prod);
    }
  }
  CHECK_THROWS_AS(sphere_size(h3, -1), ValidationError);
}

TEST_CASE("sphere sizes follow the growth constant on the orbit radii") {
  // For r in kappa*N: |S_r| = (d0/(d0-1)) * delta^(r/2), checked exactly.
  // At kappa = 1 the half power is (d0-1)^r since delta = (d0-1)^2.
  for (auto [d0, d1, kappa] : {std::tuple{3, 3, 1}, {2, 3, 2}, {4, 5, 2}}) {
    TreeParams p = make_tree_params(d0, d1, kappa);
    for (int r = kappa; r <= 20; r += kappa) {
      bigint_t half_power = kappa == 1 ? pow(bigint_t(d0 - 1), r)
                                       : pow(bigint_t(p.delta), r / 2);
      CHECK(sphere_size_exact(p, r) * (d0 - 1) == bigint_t(d0) * half_power);
    }
  }
}

TEST_CASE("exact sphere sizes survive far past the 64-bit range") {
  TreeParams h3 = make_tree_params(3, 3, 1);
  CHECK(sphere_size_exact(h3, 81) == bigint_t(3) * pow(bigint_t(2), 80));
}

//=============================== vertices ===============================//

TEST_CASE("address validity tracks per-depth branching") {
  TreeParams h3 = make_tree_params(3, 3, 1);
  CHECK(valid_address(h3, VertexAddress{{}}));
  CHECK(valid_address(h3, VertexAddress{{2, 1, 0}}));
  CHECK_FALSE(valid_address(h3, VertexAddress{{3}}));     // root has 3 children
  CHECK_FALSE(valid_address(h3, VertexAddress{{0, 2}}));  // inner vertices have 2
  CHECK_FALSE(valid_address(h3, VertexAddress{{0, -1}}));

  TreeParams s23 = make_tree_params(2, 3, 2);
  CHECK(valid_address(s23, VertexAddress{{1, 1, 0, 1}}));
  CHECK_FALSE(valid_address(s23, VertexAddress{{1, 1, 1}}));  // depth 2 branches once
}

TEST_CASE("tree metric from common prefixes") {
  VertexAddress x{{0, 1}};
  VertexAddress y{{0, 0, 1}};
  CHECK(common_prefix_length(x, y) == 1);
  CHECK(distance(x, y) == 3);
  CHECK(distance(y, x) == 3);
  CHECK(distance(x, x) == 0);
  CHECK(distance(VertexAddress{{}}, y) == 3);
}

//================================= balls =================================//

TEST_CASE("ball enumeration indexes spheres contiguously") {
  TreeParams h3 = make_tree_params(3, 3, 1);
  BallEnumeration ball = enumerate_ball(h3, 3);
  CHECK(ball.size() == 22);
  CHECK(ball.sphere_begin(0) == 0);
  CHECK(ball.sphere_count(1) == 3);
  CHECK(ball.sphere_count(2) == 6);
  CHECK(ball.sphere_end(3) == 22);

  BallEnumeration small = enumerate_ball(make_tree_params(2, 3, 2), 2);
  CHECK(small.size() == 7);
}

TEST_CASE("index arithmetic and addresses agree on every vertex") {
  for (auto [d0, d1, kappa] : {std::tuple{3, 3, 1}, {2, 3, 2}, {4, 5, 2}}) {
    TreeParams p = make_tree_params(d0, d1, kappa);
    BallEnumeration ball = enumerate_ball(p, 4);
    for (long long i = 0; i < ball.size(); ++i) {
      VertexAddress v = ball.address_of(i);
      CHECK(valid_address(p, v));
      CHECK(ball.depth_of(i) == v.depth());
      auto back = ball.index_of(v);
      REQUIRE(back.has_value());
      CHECK(*back == i);
      if (i > 0) {
        long long parent = ball.parent_of(i);
        VertexAddress pv = ball.address_of(parent);
        CHECK(pv.depth() == v.depth() - 1);
        CHECK(common_prefix_length(pv, v) == pv.depth());
        CHECK(v.path.back() == ball.child_index_of(i));
      }
      if (ball.depth_of(i) < ball.radius()) {
        long long child = ball.first_child_of(i);
        CHECK(ball.parent_of(child) == i);
        CHECK(ball.child_index_of(child) == 0);
      }
    }
  }
}

TEST_CASE("membership-checked metric satisfies the axioms exhaustively") {
  TreeParams s23 = make_tree_params(2, 3, 2);
  BallEnumeration ball = enumerate_ball(s23, 4);
  long long n = ball.size();
  REQUIRE(n == 19);
  std::vector<VertexAddress> vs;
  for (long long i = 0; i < n; ++i) vs.push_back(ball.address_of(i));

  std::vector<std::vector<int>> d(n, std::vector<int>(n));
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j) d[i][j] = distance(ball, vs[i], vs[j]);

  for (long long i = 0; i < n; ++i) {
    CHECK(d[i][i] == 0);
    for (long long j = 0; j < n; ++j) {
      if (i != j) CHECK(d[i][j] > 0);
      CHECK(d[i][j] == d[j][i]);
      for (long long k = 0; k < n; ++k) {
        CHECK(d[i][k] <= d[i][j] + d[j][k]);
      }
    }
  }

  VertexAddress outside{{0, 0, 0, 0, 0}};
  CHECK_THROWS_AS(distance(ball, outside, vs[0]), ValidationError);
}

TEST_CASE("vertex budget caps enumeration") {
  TreeParams h3 = make_tree_params(3, 3, 1);
  CHECK_NOTHROW(enumerate_ball(h3, 3, 22));
  CHECK_THROWS_AS(enumerate_ball(h3, 3, 21), BudgetExceededError);
  // (4,5) grows fast enough that radius 12 blows any small budget.
  TreeParams s45 = make_tree_params(4, 5, 2);
  CHECK_THROWS_AS(enumerate_ball(s45, 12, 100'000), BudgetExceededError);
}

//========================= boundary cylinders =========================//

TEST_CASE("cylinder partition at a depth is an exact probability partition") {
  TreeParams h3 = make_tree_params(3, 3, 1);
  auto cyls = cylinders_at_depth(h3, 3);
  CHECK(cyls.size() == 12);
  rational_t total = 0;
  for (const Cylinder& c : cyls) {
    CHECK(c.base.depth() == 3);
    CHECK(c.measure == rational_t(1, 12));
    total += c.measure;
  }
  CHECK(total == 1);

  CHECK_THROWS_AS(cylinders_at_depth(h3, 0), ValidationError);
  CHECK_THROWS_AS(cylinders_at_depth(h3, 20, 1000), BudgetExceededError);
}

TEST_CASE("horocycle index is prefix length against the cylinder base") {
  TreeParams h3 = make_tree_params(3, 3, 1);
  auto cyls = cylinders_at_depth(h3, 3);
  VertexAddress x{{0, 1}};
  for (const Cylinder& c : cyls) {
    int j = common_prefix_length(x, c.base);
    CHECK(horocycle_index(x, c) == 2 * j - 2);
  }
  // A shallower base does not pin the index down; rejected.
  Cylinder shallow{VertexAddress{{0}}, rational_t(1, 3)};
  CHECK_THROWS_AS(horocycle_index(x, shallow), ValidationError);
}
