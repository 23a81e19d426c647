#include "treeharm/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "treeharm/spherical.hpp"

namespace treeharm {

namespace {

constexpr real_t kAgreementTol = 1e-9;

bool is_inf(real_t p) { return std::isinf(p) && p > 0; }

void require_classification(bool tits_independence) {
  if (!tits_independence) {
    throw ClassificationUnavailableError(
        "the spectrum classification assumes the independence property; "
        "without it only the critical-segment lower bound is certified");
  }
}

real_t top_height(const TreeParams& params) {
  return pd_parameter_set(params).top_height;
}

// Real part of the eigenvalue map; the imaginary part must vanish on the
// three arcs and is treated as solver noise.
real_t gamma_on_arc(const TreeParams& params, complex_t z) {
  complex_t g = spherical_eigenvalue(params, z);
  if (std::abs(g.imag()) > kAgreementTol) {
    throw std::logic_error("eigenvalue map not real on a parameter arc");
  }
  return g.real();
}

// Monotonicity of the eigenvalue map on each arc, established by sign
// sampling; a violation would invalidate the interval extraction.
void verify_arc_monotonicity(const TreeParams& params) {
  const int n = 1000;
  real_t t_top = top_height(params);
  real_t prev_bottom = gamma_on_arc(params, complex_t(0.0, 0.0));
  real_t prev_top = gamma_on_arc(params, complex_t(0.0, t_top));
  real_t prev_crit = gamma_on_arc(params, complex_t(0.5, 0.0));
  for (int i = 1; i <= n; ++i) {
    real_t frac = static_cast<real_t>(i) / n;
    real_t b = gamma_on_arc(params, complex_t(0.5 * frac, 0.0));
    real_t t = gamma_on_arc(params, complex_t(0.5 * frac, t_top));
    real_t c = gamma_on_arc(params, complex_t(0.5, frac * t_top));
    if (b >= prev_bottom || t <= prev_top || c >= prev_crit) {
      throw std::logic_error("eigenvalue map not monotone on a parameter arc");
    }
    prev_bottom = b;
    prev_top = t;
    prev_crit = c;
  }
}

// Eigenvalue image of the parameter set restricted to Re z in [re_min, 1/2],
// as the merge of the three monotone arc images.
IntervalUnion arc_image(const TreeParams& params, real_t re_min) {
  verify_arc_monotonicity(params);
  real_t t_top = top_height(params);
  real_t crit_hi = gamma_on_arc(params, complex_t(0.5, 0.0));
  real_t crit_lo = gamma_on_arc(params, complex_t(0.5, t_top));
  std::vector<Interval> parts{{crit_lo, crit_hi}};
  if (re_min < 0.5) {
    parts.push_back({crit_hi, gamma_on_arc(params, complex_t(re_min, 0.0))});
    parts.push_back({gamma_on_arc(params, complex_t(re_min, t_top)), crit_lo});
  }
  return IntervalUnion::from_intervals(std::move(parts), 1e-12);
}

// Dense sampling of the restricted arcs; every sampled eigenvalue must land
// inside the union and the union endpoints must be attained.
void verify_by_sampling(const TreeParams& params, real_t re_min,
                        const IntervalUnion& u, int n) {
  real_t t_top = top_height(params);
  real_t seen_min = std::numeric_limits<real_t>::infinity();
  real_t seen_max = -seen_min;
  auto probe = [&](complex_t z) {
    real_t g = gamma_on_arc(params, z);
    seen_min = std::min(seen_min, g);
    seen_max = std::max(seen_max, g);
    if (!u.contains(g, kAgreementTol)) {
      throw std::logic_error("sampled eigenvalue escapes the spectrum");
    }
  };
  for (int i = 0; i <= n; ++i) {
    real_t frac = static_cast<real_t>(i) / n;
    probe(complex_t(0.5, frac * t_top));
    real_t s = re_min + frac * (0.5 - re_min);
    probe(complex_t(s, 0.0));
    probe(complex_t(s, t_top));
  }
  if (std::abs(seen_min - u.min()) > kAgreementTol ||
      std::abs(seen_max - u.max()) > kAgreementTol) {
    throw std::logic_error("sampled spectrum does not attain the endpoints");
  }
}

}  // namespace

//============================ interval unions ============================//

IntervalUnion IntervalUnion::from_intervals(std::vector<Interval> parts,
                                            real_t merge_tol) {
  for (const auto& part : parts) {
    if (!(part.lo <= part.hi)) {
      throw ValidationError("interval with lo > hi");
    }
  }
  std::sort(parts.begin(), parts.end(),
            [](const Interval& a, const Interval& b) {
              return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
            });
  IntervalUnion u;
  for (const auto& part : parts) {
    if (!u.components_.empty() &&
        part.lo <= u.components_.back().hi + merge_tol) {
      u.components_.back().hi = std::max(u.components_.back().hi, part.hi);
    } else {
      u.components_.push_back(part);
    }
  }
  return u;
}

real_t IntervalUnion::min() const {
  if (components_.empty()) throw std::logic_error("empty interval union");
  return components_.front().lo;
}

real_t IntervalUnion::max() const {
  if (components_.empty()) throw std::logic_error("empty interval union");
  return components_.back().hi;
}

bool IntervalUnion::contains(real_t x, real_t tol) const {
  for (const auto& c : components_) {
    if (x >= c.lo - tol && x <= c.hi + tol) return true;
  }
  return false;
}

bool IntervalUnion::contains(const IntervalUnion& other, real_t tol) const {
  for (const auto& c : other.components_) {
    bool covered = false;
    for (const auto& d : components_) {
      if (c.lo >= d.lo - tol && c.hi <= d.hi + tol) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

//============================ spectrum maps ============================//

IntervalUnion critical_spectrum(const TreeParams& params) {
  real_t t_top = top_height(params);
  real_t hi = gamma_on_arc(params, complex_t(0.5, 0.0));
  real_t lo = gamma_on_arc(params, complex_t(0.5, t_top));
  return IntervalUnion::from_intervals({{lo, hi}});
}

IntervalUnion full_spectrum(const TreeParams& params, bool tits_independence) {
  require_classification(tits_independence);

  // Closed-form endpoints.
  real_t lo;
  if (params.kappa == 1) {
    lo = -1.0;
  } else {
    lo = -(2.0 + (params.d0 - 2.0) * (params.d1 - 1.0)) /
         (params.d0 * (params.d1 - 1.0));
  }
  IntervalUnion closed = IntervalUnion::from_intervals({{lo, 1.0}});

  // Independent route: image of the parameter set under the eigenvalue map.
  IntervalUnion image = arc_image(params, 0.0);
  verify_by_sampling(params, 0.0, image, 2048);
  if (image.components().size() != closed.components().size() ||
      std::abs(image.min() - closed.min()) > kAgreementTol ||
      std::abs(image.max() - closed.max()) > kAgreementTol) {
    throw std::logic_error(
        "closed-form spectrum endpoints disagree with the parameter-set "
        "image");
  }
  return closed;
}

IntervalUnion lp_spectrum(const TreeParams& params, real_t p,
                          bool tits_independence) {
  if (std::isnan(p) || (!is_inf(p) && p < 2.0)) {
    throw ValidationError("exponent p must lie in [2, inf]");
  }
  require_classification(tits_independence);
  real_t re_min = is_inf(p) ? 0.0 : 1.0 / p;
  IntervalUnion image = arc_image(params, re_min);
  verify_by_sampling(params, re_min, image, 2048);
  return image;
}

//============================ nesting report ============================//

NestingReport nesting_report(const TreeParams& params, std::vector<real_t> ps,
                             bool tits_independence) {
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (std::isnan(ps[i]) || (!is_inf(ps[i]) && ps[i] < 2.0)) {
      throw ValidationError("every exponent must lie in [2, inf]");
    }
    if (i > 0 && !(ps[i] > ps[i - 1])) {
      throw ValidationError("exponents must be strictly ascending");
    }
  }
  require_classification(tits_independence);

  // A single exponent compares nothing and nests trivially.
  NestingReport report;
  report.exponents = ps;
  if (ps.size() < 2) return report;

  std::vector<IntervalUnion> spectra;
  spectra.reserve(ps.size());
  for (real_t p : ps) spectra.push_back(lp_spectrum(params, p, true));

  for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
    NestingStep step;
    step.p_from = ps[i];
    step.p_to = ps[i + 1];
    step.spectrum_from = spectra[i];
    step.spectrum_to = spectra[i + 1];
    if (!step.spectrum_to.contains(step.spectrum_from, kAgreementTol)) {
      throw std::logic_error(
          "spectrum inclusion monotonicity violated along the exponent grid");
    }
    step.margin_upper = step.spectrum_to.max() - step.spectrum_from.max();
    step.margin_lower = step.spectrum_from.min() - step.spectrum_to.min();
    real_t rp = is_inf(ps[i + 1]) ? 0.0 : 1.0 / ps[i + 1];
    step.witness_parameter = complex_t(rp, 0.0);
    step.witness_eigenvalue = gamma_on_arc(params, step.witness_parameter);
    step.strict = step.margin_upper > kAgreementTol &&
                  !step.spectrum_from.contains(step.witness_eigenvalue,
                                               kAgreementTol);
    report.all_strict = report.all_strict && step.strict;
    report.steps.push_back(std::move(step));
  }
  return report;
}

//========================== eigenvalue preimages ==========================//

complex_t find_parameter_for_eigenvalue(const TreeParams& params, real_t p,
                                        real_t target,
                                        bool tits_independence) {
  IntervalUnion u = lp_spectrum(params, p, tits_independence);
  if (!u.contains(target, kAgreementTol)) {
    throw ValidationError("target eigenvalue lies outside the spectrum");
  }
  real_t re_min = is_inf(p) ? 0.0 : 1.0 / p;
  real_t t_top = top_height(params);
  real_t crit_hi = gamma_on_arc(params, complex_t(0.5, 0.0));
  real_t crit_lo = gamma_on_arc(params, complex_t(0.5, t_top));

  // Bisection on the monotone arc whose image holds the target.
  auto bisect = [&](auto z_of, real_t a, real_t b, bool decreasing) {
    for (int iter = 0; iter < 200; ++iter) {
      real_t mid = 0.5 * (a + b);
      real_t g = gamma_on_arc(params, z_of(mid));
      if ((g > target) == decreasing) {
        a = mid;
      } else {
        b = mid;
      }
    }
    return z_of(0.5 * (a + b));
  };

  if (target > crit_hi) {
    auto z_of = [](real_t s) { return complex_t(s, 0.0); };
    // gamma decreasing in s: larger target sits at smaller s.
    return bisect(z_of, re_min, 0.5, true);
  }
  if (target < crit_lo) {
    auto z_of = [t_top](real_t s) { return complex_t(s, t_top); };
    // increasing in s
    return bisect(z_of, re_min, 0.5, false);
  }
  auto z_of = [t_top](real_t frac) { return complex_t(0.5, frac * t_top); };
  // decreasing in t
  return bisect(z_of, 0.0, 1.0, true);
}

}  // namespace treeharm
