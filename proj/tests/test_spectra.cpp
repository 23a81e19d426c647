#include "doctest.h"

#include <cmath>
#include <limits>

#include "treeharm/spectra.hpp"
#include "treeharm/spherical.hpp"

using namespace treeharm;

namespace {

const TreeParams kH3 = make_tree_params(3, 3, 1);
const TreeParams kS23 = make_tree_params(2, 3, 2);
const TreeParams kS45 = make_tree_params(4, 5, 2);
const real_t kInf = std::numeric_limits<real_t>::infinity();

}  // namespace

//============================ interval unions ============================//

TEST_CASE("interval unions sort and merge overlaps") {
  IntervalUnion u = IntervalUnion::from_intervals(
      {{0.5, 2.0}, {0.0, 1.0}, {3.0, 4.0}});
  REQUIRE(u.components().size() == 2);
  CHECK(u.components()[0].lo == 0.0);
  CHECK(u.components()[0].hi == 2.0);
  CHECK(u.min() == 0.0);
  CHECK(u.max() == 4.0);
  CHECK(u.contains(1.7));
  CHECK_FALSE(u.contains(2.5));
  CHECK(u.contains(2.5, 0.6));

  IntervalUnion v = IntervalUnion::from_intervals({{0.0, 1.0}, {3.1, 3.5}});
  CHECK(u.contains(v));
  CHECK_FALSE(v.contains(u));

  CHECK(IntervalUnion::from_intervals({}).empty());
  CHECK_THROWS_AS(IntervalUnion::from_intervals({{1.0, 0.0}}),
                  ValidationError);
}

TEST_CASE("merge tolerance closes hairline gaps") {
  IntervalUnion split =
      IntervalUnion::from_intervals({{0.0, 1.0}, {1.0 + 1e-13, 2.0}});
  CHECK(split.components().size() == 2);
  IntervalUnion merged = IntervalUnion::from_intervals(
      {{0.0, 1.0}, {1.0 + 1e-13, 2.0}}, 1e-12);
  CHECK(merged.components().size() == 1);
}

//============================ full spectrum ============================//

TEST_CASE("full spectrum endpoints are exact on the three presets") {
  IntervalUnion h3 = full_spectrum(kH3);
  REQUIRE(h3.components().size() == 1);
  CHECK(h3.min() == -1.0);
  CHECK(h3.max() == 1.0);

  IntervalUnion s23 = full_spectrum(kS23);
  REQUIRE(s23.components().size() == 1);
  CHECK(s23.min() == -0.5);
  CHECK(s23.max() == 1.0);

  IntervalUnion s45 = full_spectrum(kS45);
  REQUIRE(s45.components().size() == 1);
  CHECK(s45.min() == -0.625);
  CHECK(s45.max() == 1.0);
}

TEST_CASE("classification gate throws without the independence property") {
  CHECK_THROWS_AS(full_spectrum(kH3, false), ClassificationUnavailableError);
  CHECK_THROWS_AS(lp_spectrum(kH3, 4.0, false),
                  ClassificationUnavailableError);
  CHECK_THROWS_AS(nesting_report(kH3, {2.0, kInf}, false),
                  ClassificationUnavailableError);
}

TEST_CASE("critical spectrum is available without the classification") {
  IntervalUnion crit = critical_spectrum(kH3);
  REQUIRE(crit.components().size() == 1);
  real_t edge = 2.0 * std::sqrt(2.0) / 3.0;
  CHECK(crit.min() == doctest::Approx(-edge).epsilon(1e-13));
  CHECK(crit.max() == doctest::Approx(edge).epsilon(1e-13));
}

//============================= L^p spectra =============================//

TEST_CASE("p = 2 spectrum is the critical image, p = inf the full one") {
  IntervalUnion l2 = lp_spectrum(kH3, 2.0);
  real_t edge = 2.0 * std::sqrt(2.0) / 3.0;
  CHECK(l2.min() == doctest::Approx(-edge).epsilon(1e-12));
  CHECK(l2.max() == doctest::Approx(edge).epsilon(1e-12));

  IntervalUnion linf = lp_spectrum(kH3, kInf);
  IntervalUnion full = full_spectrum(kH3);
  CHECK(linf.min() == doctest::Approx(full.min()).epsilon(1e-12));
  CHECK(linf.max() == doctest::Approx(full.max()).epsilon(1e-12));
}

TEST_CASE("intermediate exponents stop at the dual-strip eigenvalue") {
  // Upper endpoint for L^p is the eigenvalue at z = 1/p on the decaying edge.
  for (real_t p : {3.0, 4.0, 10.0}) {
    IntervalUnion u = lp_spectrum(kH3, p);
    real_t expected =
        spherical_eigenvalue(kH3, complex_t(1.0 / p, 0.0)).real();
    CHECK(u.max() == doctest::Approx(expected).epsilon(1e-12));
    // kappa = 1: the top edge mirrors the bottom one.
    CHECK(u.min() == doctest::Approx(-expected).epsilon(1e-12));
  }
  CHECK(lp_spectrum(kH3, 3.0).max() ==
        doctest::Approx(0.949107367287).epsilon(1e-10));
}

TEST_CASE("exponents below 2 are rejected") {
  CHECK_THROWS_AS(lp_spectrum(kH3, 1.5), ValidationError);
  CHECK_THROWS_AS(lp_spectrum(kH3, -3.0), ValidationError);
  CHECK_THROWS_AS(nesting_report(kH3, {1.0, 2.0}), ValidationError);
}

//=============================== nesting ===============================//

TEST_CASE("spectra nest strictly along the exponent ladder") {
  NestingReport report = nesting_report(kH3, {2.0, 3.0, 4.0, 10.0, kInf});
  CHECK(report.all_strict);
  REQUIRE(report.steps.size() == 4);

  real_t min_margin = kInf;
  for (const NestingStep& step : report.steps) {
    CHECK(step.strict);
    CHECK(step.margin_upper > 0);
    CHECK(step.margin_lower > 0);
    CHECK(step.spectrum_to.contains(step.spectrum_from, 1e-12));
    // The witness eigenvalue enters exactly at the larger exponent.
    CHECK(step.spectrum_to.contains(step.witness_eigenvalue, 1e-12));
    CHECK_FALSE(step.spectrum_from.contains(step.witness_eigenvalue, 1e-12));
    min_margin = std::min(min_margin, step.margin_upper);
  }
  CHECK(min_margin == doctest::Approx(0.00629832570562772).epsilon(1e-9));
}

TEST_CASE("nesting requires a strictly ascending exponent list") {
  CHECK_THROWS_AS(nesting_report(kH3, {2.0, 2.0, 4.0}), ValidationError);
  CHECK_THROWS_AS(nesting_report(kH3, {4.0, 2.0}), ValidationError);
  // A single exponent is legal: nothing to compare, trivially strict.
  NestingReport single = nesting_report(kH3, {2.0});
  CHECK(single.steps.empty());
  CHECK(single.all_strict);
}

TEST_CASE("nesting holds on the semi-homogeneous presets too") {
  for (const TreeParams& p : {kS23, kS45}) {
    NestingReport report = nesting_report(p, {2.0, 4.0, kInf});
    CHECK(report.all_strict);
    for (const NestingStep& step : report.steps) {
      CHECK(step.spectrum_to.contains(step.spectrum_from, 1e-12));
    }
  }
}

//========================== parameter recovery ==========================//

TEST_CASE("eigenvalues in a spectrum are realized by a parameter") {
  for (const TreeParams& p : {kH3, kS45}) {
    IntervalUnion u = lp_spectrum(p, 4.0);
    for (real_t f : {0.0, 0.21, 0.5, 0.83, 1.0}) {
      real_t target = u.min() + f * (u.max() - u.min());
      if (!u.contains(target, 1e-12)) continue;  // gap in a split spectrum
      complex_t z = find_parameter_for_eigenvalue(p, 4.0, target);
      CHECK(std::abs(spherical_eigenvalue(p, z).real() - target) < 1e-9);
      CHECK(std::abs(spherical_eigenvalue(p, z).imag()) < 1e-9);
    }
  }
}

TEST_CASE("eigenvalues outside the spectrum are rejected") {
  CHECK_THROWS_AS(find_parameter_for_eigenvalue(kH3, 2.0, 0.99),
                  ValidationError);
  CHECK_THROWS_AS(find_parameter_for_eigenvalue(kH3, kInf, 1.01),
                  ValidationError);
}
