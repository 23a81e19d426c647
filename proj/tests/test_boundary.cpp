#include "doctest.h"

#include <cmath>
#include <map>

#include "treeharm/boundary.hpp"
#include "treeharm/spherical.hpp"

using namespace treeharm;

namespace {

const TreeParams kH3 = make_tree_params(3, 3, 1);
const TreeParams kS23 = make_tree_params(2, 3, 2);
const TreeParams kS45 = make_tree_params(4, 5, 2);

}  // namespace

//============================ Poisson kernel ============================//

TEST_CASE("Poisson kernel is the index power of the growth constant") {
  CHECK(std::abs(poisson_kernel_value(kH3, 1.0, 2) - complex_t(4.0, 0.0)) <
        1e-15);
  CHECK(std::abs(poisson_kernel_value(kH3, 0.5, 2) - complex_t(2.0, 0.0)) <
        1e-15);
  CHECK(std::abs(poisson_kernel_value(kH3, 1.0, -2) - complex_t(0.25, 0.0)) <
        1e-15);
  CHECK(std::abs(poisson_kernel_value(kH3, 0.0, 7) - complex_t(1.0, 0.0)) <
        1e-15);
  // Purely imaginary exponent lands on the unit circle.
  complex_t z(0.0, 1.7);
  CHECK(std::abs(std::abs(poisson_kernel_value(kS45, z, 4)) - 1.0) < 1e-15);
}

//====================== boundary strata of a vertex ======================//

TEST_CASE("index weights telescope to exactly 1") {
  for (const TreeParams& p : {kH3, kS23, kS45}) {
    for (int r = 0; r <= 7; ++r) {
      rational_t total = 0;
      // Degree-2 vertices contribute empty strata, so weights may be 0.
      for (const auto& [index, w] : index_weights(p, r)) {
        CHECK(w >= 0);
        CHECK((index + r) % 2 == 0);
        CHECK(index >= -r);
        CHECK(index <= r);
        total += w;
      }
      CHECK(total == 1);
    }
  }
}

TEST_CASE("index weights at depth 2 on the homogeneous tree") {
  auto weights = index_weights(kH3, 2);
  std::map<int, rational_t> by_index(weights.begin(), weights.end());
  REQUIRE(by_index.size() == 3);
  CHECK(by_index[2] == rational_t(1, 6));
  CHECK(by_index[0] == rational_t(1, 6));
  CHECK(by_index[-2] == rational_t(2, 3));
}

TEST_CASE("index weights at depth 2 on the (2,3) tree") {
  auto weights = index_weights(kS23, 2);
  std::map<int, rational_t> by_index(weights.begin(), weights.end());
  CHECK(by_index[2] == rational_t(1, 4));
  CHECK(by_index[0] == rational_t(1, 4));
  CHECK(by_index[-2] == rational_t(1, 2));
}

TEST_CASE("materialized partition agrees with the weight table") {
  BallEnumeration ball = enumerate_ball(kH3, 3);
  VertexAddress x{{1, 0}};
  BoundaryPartition part = partition_with_indices(ball, x);
  CHECK(part.depth == 2);
  CHECK(part.cylinders.size() == 6);

  std::map<int, rational_t> mass;
  for (const auto& [cyl, index] : part.cylinders) {
    CHECK(cyl.measure == rational_t(1, 6));
    CHECK(index == horocycle_index(x, cyl));
    mass[index] += cyl.measure;
  }
  std::map<int, rational_t> expected;
  for (const auto& [index, w] : index_weights(kH3, 2)) expected[index] = w;
  CHECK(mass == expected);
}

TEST_CASE("partition needs the ball to reach the vertex depth") {
  BallEnumeration ball = enumerate_ball(kH3, 1);
  CHECK_THROWS_AS(partition_with_indices(ball, VertexAddress{{0, 1}}),
                  ValidationError);
}

//========================= boundary integration =========================//

TEST_CASE("boundary mass is exactly 1 at the integer parameters") {
  for (const TreeParams& p : {kH3, kS23, kS45}) {
    for (int r = 0; r <= 3 * p.kappa; r += p.kappa) {
      CHECK(boundary_mass_exact(p, 0, r) == 1);
      CHECK(boundary_mass_exact(p, 1, r) == 1);
    }
  }
  CHECK_THROWS_AS(boundary_mass_exact(kS23, 0, 3), ValidationError);
  CHECK_THROWS_AS(boundary_mass_exact(kS23, 2, 2), ValidationError);
}

TEST_CASE("boundary integral normalizes to 1 at the root and at z = 0") {
  for (const TreeParams& p : {kH3, kS23, kS45}) {
    CHECK(std::abs(spherical_via_boundary(p, complex_t(0.37, 1.1), 0) -
                   complex_t(1.0, 0.0)) < 1e-15);
    for (int r = p.kappa; r <= 3 * p.kappa; r += p.kappa) {
      CHECK(std::abs(spherical_via_boundary(p, complex_t(0.0, 0.0), r) -
                     complex_t(1.0, 0.0)) < 1e-13);
    }
  }
}

TEST_CASE("boundary integral at a frozen singular-line parameter") {
  // z = 1/2 + i pi/ln 2 on the (2,3) tree: strata values -sqrt(2), 1,
  // -1/sqrt(2) with weights 1/4, 1/4, 1/2, so the integral is 1/4 - sqrt(2)/2.
  complex_t z(0.5, M_PI / std::log(2.0));
  complex_t value = spherical_via_boundary(kS23, z, 2);
  CHECK(std::abs(value - complex_t(0.25 - std::sqrt(2.0) / 2.0, 0.0)) < 1e-13);
}

TEST_CASE("boundary route matches the mixing route off the singular set") {
  for (const TreeParams& p : {kH3, kS23, kS45}) {
    for (complex_t z : {complex_t(0.3, 0.0), complex_t(0.8, 0.4),
                        complex_t(0.15, -1.2)}) {
      for (int r = 0; r <= 4 * p.kappa; r += p.kappa) {
        complex_t via_boundary = spherical_via_boundary(p, z, r);
        complex_t via_mixing = spherical_eval(p, z, r);
        CHECK(std::abs(via_boundary - via_mixing) < 1e-10);
      }
    }
  }
}

TEST_CASE("boundary integral rejects off-orbit radii") {
  CHECK_THROWS_AS(spherical_via_boundary(kS23, complex_t(0.3, 0.0), 3),
                  ValidationError);
  CHECK_THROWS_AS(spherical_via_boundary(kS23, complex_t(0.3, 0.0), -2),
                  ValidationError);
}
