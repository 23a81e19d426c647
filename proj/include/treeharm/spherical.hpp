#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "treeharm/tree.hpp"
#include "treeharm/types.hpp"

namespace treeharm {

//========================= elementary evaluations =========================//

/// The length exponential at parameter z: delta^(-z r / 2).
complex_t length_exponential(const TreeParams& params, complex_t z, int r);

/// Eigenvalue of convolution by the generator on the parameter-z family:
///   kappa = 1: ((d0-1)^z + (d0-1)^(1-z)) / d0
///   kappa = 2: (delta^z + delta^(1-z) + d1 - 2) / (d0 (d1-1)).
/// Symmetric under z -> 1-z and periodic with period i*4pi/(kappa ln delta).
complex_t spherical_eigenvalue(const TreeParams& params, complex_t z);

//========================= mixing decomposition =========================//

/// True when the two-point system below is numerically singular at z,
/// i.e. |delta^(-kappa z/2) - delta^(-kappa (1-z)/2)| < tol.
bool is_singular_parameter(const TreeParams& params, complex_t z,
                           real_t tol = Tolerances{}.singular);

/// c(z) solving  x + y = 1,
///               delta^(-kappa z/2) x + delta^(-kappa (1-z)/2) y
///                 = spherical_eigenvalue(z),
/// so that the spherical function is c(z) h_z + c(1-z) h_{1-z} with
/// c(z) + c(1-z) = 1. Throws SingularParameterError at singular z.
complex_t mixing_coefficient(const TreeParams& params, complex_t z,
                             real_t tol = Tolerances{}.singular);

//========================= spherical functions =========================//

enum class SphericalRoute { MixingDecomposition, BoundaryIntegral };

struct SphericalValue {
  complex_t value;
  SphericalRoute route;
};

/// Normalized eigenfunction value at radius r for the eigenvalue attached
/// to z. Non-singular parameters use the two-exponential decomposition;
/// singular ones fall back to the exact boundary integral. Value at r = 0
/// is exactly 1.
SphericalValue spherical_eval_traced(const TreeParams& params, complex_t z,
                                     int r,
                                     real_t tol = Tolerances{}.singular);
complex_t spherical_eval(const TreeParams& params, complex_t z, int r);

/// Values at radii 0, kappa, ..., <= r_max of the radial eigenfunction with
/// the given eigenvalue, normalized to 1 at the root, generated by the
/// three-term recurrence (the eigenfunction is determined by its
/// eigenvalue). Written with integer-scaled coefficients so that integer
/// eigenvalues propagate exactly.
std::vector<complex_t> spherical_from_eigenvalue(const TreeParams& params,
                                                 complex_t eigenvalue,
                                                 int r_max);

/// Worst eigen-equation defect over kappa <= r <= r_max for the length
/// exponential and over 0 <= r <= r_max for the spherical function:
/// |(X*f)(r) - eigenvalue * f(r)|.
real_t eigen_residual(const TreeParams& params, complex_t z, int r_max);

//=========================== L^p classification ===========================//

enum class LpMode { LengthExponential, SphericalFunction };

struct LpVerdict {
  real_t p = 0;
  bool member = false;
  real_t threshold_re = 0;
  LpMode mode = LpMode::LengthExponential;
  /// Closed-form integral of |f|^p (length-exponential mode, finite p,
  /// convergent case only):
  /// 1 + (d0/(d0-1)) * x/(1-x) with x = delta^(kappa (1 - Re z * p)/2).
  std::optional<real_t> integral;
};

/// Membership of the parameter-z function in L^p:
///   length exponential: Re z > 1/p for finite p, Re z >= 0 for p = inf
///                       (boundedness),
///   spherical function: Re z strictly inside (1/p, 1/q) for finite p > 2,
///                       never for p <= 2, and Re z in [0,1] for p = inf.
LpVerdict lp_class(const TreeParams& params, complex_t z, real_t p,
                   LpMode mode);

/// Truncated integral sum_{r <= r_cap} weight(r) |f(r)|^p with the Haar
/// sphere weights, as a growth diagnostic for the classifier.
real_t lp_partial_sum(const TreeParams& params, complex_t z, real_t p,
                      LpMode mode, int r_cap);

//====================== positive definiteness check ======================//

struct PDReport {
  int radius = 0;
  real_t min_eigenvalue = 0;
  long long matrix_dim = 0;
};

using RadialKernel = std::function<complex_t(int)>;

/// Minimum eigenvalue of the Hermitian part of the Gram matrix
/// [kernel(d(x,y))] over root-orbit vertices of depth <= radius. A negative
/// result certifies that the kernel is not positive definite; kernels that
/// cannot cover a required distance must throw KernelDomainError.
PDReport pd_check(const BallEnumeration& ball, const RadialKernel& kernel,
                  int radius, long long dim_cap = 4096);

/// Kernel backed by a finite table; throws KernelDomainError off the table.
RadialKernel tabulated_kernel(std::vector<std::pair<int, complex_t>> table);

//========================== parameter set for PD ==========================//

/// Parameters carrying the spherical characters of the universal radial
/// completion (under the independence property): the critical segment
/// Re z = 1/2 plus the two horizontal edges at heights 0 and
/// 2pi/(kappa ln delta), Re z in [0,1/2). Spherical functions on the
/// critical segment and the height-0 edge are positive definite on the
/// group; on the top edge that holds for kappa = 1 only (for kappa = 2,
/// d0 > 2 the top-edge kernels fail finite Gram tests while still defining
/// bounded Hermitian characters of the radial algebra).
struct PdParameterSet {
  real_t critical_re = 0.5;
  real_t top_height = 0;  // 2pi / (kappa ln delta)

  /// Deterministic sample of n parameters covering all three arcs; the four
  /// corner points come first, so any n >= 4 includes z = 0 and z = 1/2.
  std::vector<complex_t> sample(int n) const;
  std::string describe() const;
};

PdParameterSet pd_parameter_set(const TreeParams& params);

}  // namespace treeharm
