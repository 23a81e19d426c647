#pragma once

#include <vector>

#include "treeharm/tree.hpp"
#include "treeharm/types.hpp"

namespace treeharm {

//============================ interval unions ============================//

struct Interval {
  real_t lo = 0;
  real_t hi = 0;
};

/// Sorted disjoint closed intervals. Construction sorts and merges; the
/// component count is whatever the inputs produce, never assumed.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  static IntervalUnion from_intervals(std::vector<Interval> parts,
                                      real_t merge_tol = 0);

  const std::vector<Interval>& components() const { return components_; }
  bool empty() const { return components_.empty(); }
  real_t min() const;
  real_t max() const;
  bool contains(real_t x, real_t tol = 0) const;
  bool contains(const IntervalUnion& other, real_t tol = 0) const;

 private:
  std::vector<Interval> components_;
};

//============================ spectrum maps ============================//

/// Spectrum of the generator in the full radial C*-algebra:
///   kappa = 1: [-1, 1]
///   kappa = 2: [-(2 + (d0-2)(d1-1)) / (d0 (d1-1)), 1].
/// Computed both from the closed-form endpoints and as the image of the
/// positive-definite parameter set under the eigenvalue map (monotone
/// arcs, cross-checked by dense sampling); the two must agree to 1e-9.
/// The classification behind this needs the independence property.
IntervalUnion full_spectrum(const TreeParams& params,
                            bool tits_independence = true);

/// Spectrum of the generator in the L^(p+) completion, p in [2, inf]:
/// the eigenvalue image of the parameter set restricted to
/// Re z in [1/p, 1/q]. p = 2 gives the critical-segment image; p = inf
/// recovers the full spectrum.
IntervalUnion lp_spectrum(const TreeParams& params, real_t p,
                          bool tits_independence = true);

/// The p = 2 image alone. Positive definiteness on the critical segment
/// comes from the boundary construction and needs no independence flag, so
/// this serves as the certified lower bound when the flag is off.
IntervalUnion critical_spectrum(const TreeParams& params);

//============================ nesting report ============================//

struct NestingStep {
  real_t p_from = 0;  // smaller exponent q
  real_t p_to = 0;    // larger exponent p
  IntervalUnion spectrum_from;
  IntervalUnion spectrum_to;
  bool strict = false;
  /// Eigenvalue realized at exponent p but unreachable at exponent q.
  real_t witness_eigenvalue = 0;
  complex_t witness_parameter;
  real_t margin_upper = 0;  // max(to) - max(from)
  real_t margin_lower = 0;  // min(from) - min(to)
};

struct NestingReport {
  std::vector<real_t> exponents;
  std::vector<NestingStep> steps;
  bool all_strict = true;
};

/// Strict growth of the L^(p+) spectra along an ascending exponent grid.
/// Containment failing in the forward direction would mean an
/// implementation bug and throws logic_error.
NestingReport nesting_report(const TreeParams& params, std::vector<real_t> ps,
                             bool tits_independence = true);

//========================== eigenvalue preimages ==========================//

/// A parameter z in the positive-definite set with Re z in [1/p, 1/q] whose
/// eigenvalue hits the target to 1e-12, found by bisection on the monotone
/// arc containing the target. Throws ValidationError when the target lies
/// outside lp_spectrum(p).
complex_t find_parameter_for_eigenvalue(const TreeParams& params, real_t p,
                                        real_t target,
                                        bool tits_independence = true);

}  // namespace treeharm
