#pragma once

#include <functional>
#include <map>
#include <vector>

#include "treeharm/tree.hpp"
#include "treeharm/types.hpp"

namespace treeharm {

//=========================== radial functions ===========================//

/// Finitely supported radial profile: values on radii in kappa*N0.
/// Absent radii are zero.
struct RadialFunction {
  TreeParams params;
  std::map<int, complex_t> coeffs;

  complex_t at(int r) const {
    auto it = coeffs.find(r);
    return it == coeffs.end() ? complex_t(0.0, 0.0) : it->second;
  }
  /// Largest support radius, or -1 when the function is zero.
  int max_support() const;
  void set(int r, complex_t value);
};

RadialFunction make_radial(const TreeParams& params,
                           std::map<int, complex_t> coeffs);

/// mu_m: the double-coset indicator at radius m normalized to total mass 1,
/// i.e. the profile with value 1/sphere_size(m) at radius m.
RadialFunction coset_indicator(const TreeParams& params, int m);

/// Haar-weighted total: f(0) + (d0/(d0-1)) * sum over r in kappa*N of
/// delta^(r/2) * f(r). Equals the plain vertex sum over the root orbit.
complex_t integrate(const RadialFunction& f);

/// f*(r) = conj(f(r)). Radii are fixed because distance-m double cosets
/// are symmetric (Gelfand pair).
RadialFunction adjoint(const RadialFunction& f);

RadialFunction add(const RadialFunction& f, const RadialFunction& g);
RadialFunction scale(const RadialFunction& f, complex_t factor);

//========================== generator structure ==========================//

/// One convolution step by the generator X = mu_kappa. The same three
/// numbers serve twice:
///   in the mu-basis,  X * mu_{kkappa} = down mu_{(k-1)kappa} + stay mu_{kkappa}
///                                       + up mu_{(k+1)kappa}   for k >= 1,
///   on radial values, (X * f)(r) = up f(r+kappa) + stay f(r) + down f(r-kappa)
///                                                              for r >= kappa,
/// with X * mu_0 = X and (X * f)(0) = f(kappa). down + stay + up = 1.
struct GeneratorStep {
  rational_t down, stay, up;
};

GeneratorStep generator_step(const TreeParams& params);

/// (X * f)(r) for radial values supplied as a callable. The callable is
/// queried at r+kappa, r, r-kappa (only at r = kappa and above for the
/// last), so it must cover radius r+kappa.
complex_t apply_generator(const TreeParams& params,
                          const std::function<complex_t(int)>& f, int r);

/// Coefficients a_0..a_n of sum a_i X^i expressing mu_m as a polynomial of
/// degree m/kappa in the generator, obtained by inverting the three-term
/// recurrence.
struct GeneratorPolynomial {
  TreeParams params;
  std::vector<complex_t> coefficients;
};

GeneratorPolynomial expand_in_generator(const TreeParams& params, int m);

/// Algebra product via generator polynomials: expand both factors, multiply
/// the polynomials, re-expand the product in the polynomial basis. The
/// basis polynomials and their leading coefficients are exact rationals.
RadialFunction convolve(const RadialFunction& f, const RadialFunction& g);

//=========================== brute-force oracle ===========================//

struct OracleOptions {
  /// Extra evaluation rays checked against the primary one at every radius.
  int verification_rays = 2;
  /// Per-vertex radiality sweep runs while |sphere| * |ball scan| stays
  /// under this many steps.
  long long exhaustive_cost_limit = 20'000'000;
  real_t radiality_tol = 1e-12;
};

/// Literal convolution sum (f*g)(x) = sum over ball vertices y in the root
/// orbit of f(|y|) g(d(y,x)), evaluated at representatives x along fixed
/// rays. Radiality is verified, not assumed: rays must agree at every
/// radius, and where the sweep is affordable every vertex of a sphere is
/// checked. Needs the ball to cover the support of f.
RadialFunction convolve_oracle(const BallEnumeration& ball,
                               const RadialFunction& f,
                               const RadialFunction& g);
RadialFunction convolve_oracle(const BallEnumeration& ball,
                               const RadialFunction& f,
                               const RadialFunction& g,
                               const OracleOptions& options);

//============================ exact internals ============================//

namespace detail {

/// P_0..P_kmax with mu_{kkappa} = P_k(X): P_0 = 1, P_1 = X,
/// P_{k+1} = ((X - stay) P_k - down P_{k-1}) / up. Entry k is the
/// coefficient list of P_k, constant term first.
std::vector<std::vector<rational_t>> generator_basis_polynomials(
    const TreeParams& params, int k_max);

/// X applied to exact mu-basis coordinates (index k = radius k*kappa).
std::vector<rational_t> apply_generator_mu_basis(
    const TreeParams& params, const std::vector<rational_t>& mu_coords);

}  // namespace detail

}  // namespace treeharm
