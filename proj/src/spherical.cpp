#include "treeharm/spherical.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "treeharm/boundary.hpp"
#include "treeharm/radial.hpp"

namespace treeharm {

namespace {

double log_delta(const TreeParams& params) {
  return std::log(static_cast<double>(params.delta));
}

bool is_inf(real_t p) { return std::isinf(p) && p > 0; }

}  // namespace

//========================= elementary evaluations =========================//

complex_t length_exponential(const TreeParams& params, complex_t z, int r) {
  if (r < 0 || r % params.kappa != 0) {
    throw ValidationError("radius must be a nonnegative multiple of kappa");
  }
  return std::exp(-z * (0.5 * r * log_delta(params)));
}

complex_t spherical_eigenvalue(const TreeParams& params, complex_t z) {
  if (params.kappa == 1) {
    double lb = std::log(static_cast<double>(params.d0 - 1));
    return (std::exp(z * lb) + std::exp((1.0 - z) * lb)) /
           static_cast<double>(params.d0);
  }
  double ld = log_delta(params);
  return (std::exp(z * ld) + std::exp((1.0 - z) * ld) +
          static_cast<double>(params.d1 - 2)) /
         static_cast<double>(params.d0 * (params.d1 - 1));
}

//========================= mixing decomposition =========================//

bool is_singular_parameter(const TreeParams& params, complex_t z, real_t tol) {
  complex_t a = length_exponential(params, z, params.kappa);
  complex_t b = length_exponential(params, 1.0 - z, params.kappa);
  return std::abs(a - b) < tol;
}

complex_t mixing_coefficient(const TreeParams& params, complex_t z,
                             real_t tol) {
  complex_t a = length_exponential(params, z, params.kappa);
  complex_t b = length_exponential(params, 1.0 - z, params.kappa);
  if (std::abs(a - b) < tol) {
    throw SingularParameterError(
        "the two-point system for the mixing coefficient is singular at "
        "this parameter; use the boundary evaluator");
  }
  return (spherical_eigenvalue(params, z) - b) / (a - b);
}

//========================= spherical functions =========================//

SphericalValue spherical_eval_traced(const TreeParams& params, complex_t z,
                                     int r, real_t tol) {
  if (r < 0 || r % params.kappa != 0) {
    throw ValidationError("radius must be a nonnegative multiple of kappa");
  }
  if (is_singular_parameter(params, z, tol)) {
    return {r == 0 ? complex_t(1.0, 0.0) : spherical_via_boundary(params, z, r),
            SphericalRoute::BoundaryIntegral};
  }
  if (r == 0) return {complex_t(1.0, 0.0), SphericalRoute::MixingDecomposition};
  complex_t c = mixing_coefficient(params, z, tol);
  complex_t value = c * length_exponential(params, z, r) +
                    (complex_t(1.0, 0.0) - c) *
                        length_exponential(params, 1.0 - z, r);
  return {value, SphericalRoute::MixingDecomposition};
}

complex_t spherical_eval(const TreeParams& params, complex_t z, int r) {
  return spherical_eval_traced(params, z, r).value;
}

std::vector<complex_t> spherical_from_eigenvalue(const TreeParams& params,
                                                 complex_t eigenvalue,
                                                 int r_max) {
  if (r_max < 0) throw ValidationError("negative radius bound");
  int steps = r_max / params.kappa;
  std::vector<complex_t> v;
  v.reserve(steps + 1);
  v.push_back(complex_t(1.0, 0.0));
  if (steps >= 1) v.push_back(eigenvalue);
  double d0 = params.d0;
  double d1 = params.d1;
  for (int k = 1; k < steps; ++k) {
    complex_t next;
    if (params.kappa == 1) {
      next = (d0 * eigenvalue * v[k] - v[k - 1]) / (d0 - 1.0);
    } else {
      next = (d0 * (d1 - 1.0) * eigenvalue * v[k] - (d1 - 2.0) * v[k] -
              v[k - 1]) /
             static_cast<double>(params.delta);
    }
    v.push_back(next);
  }
  return v;
}

real_t eigen_residual(const TreeParams& params, complex_t z, int r_max) {
  int kappa = params.kappa;
  if (r_max < kappa) throw ValidationError("r_max must be at least kappa");
  complex_t gamma = spherical_eigenvalue(params, z);
  real_t worst = 0;

  // Length exponential: an eigenfunction away from the root only.
  auto h = [&](int r) { return length_exponential(params, z, r); };
  for (int r = kappa; r <= r_max; r += kappa) {
    worst = std::max(worst, std::abs(apply_generator(params, h, r) -
                                     gamma * h(r)));
  }

  // Spherical function: an eigenfunction everywhere, including the root.
  std::vector<complex_t> phi;
  for (int r = 0; r <= r_max + kappa; r += kappa) {
    phi.push_back(spherical_eval(params, z, r));
  }
  auto phi_at = [&](int r) { return phi[r / kappa]; };
  for (int r = 0; r <= r_max; r += kappa) {
    worst = std::max(worst, std::abs(apply_generator(params, phi_at, r) -
                                     gamma * phi_at(r)));
  }
  return worst;
}

//=========================== L^p classification ===========================//

LpVerdict lp_class(const TreeParams& params, complex_t z, real_t p,
                   LpMode mode) {
  if (std::isnan(p) || p < 1.0) {
    throw ValidationError("p must lie in [1, inf]");
  }
  LpVerdict verdict;
  verdict.p = p;
  verdict.mode = mode;
  verdict.threshold_re = is_inf(p) ? 0.0 : 1.0 / p;
  double x = z.real();

  if (mode == LpMode::LengthExponential) {
    if (is_inf(p)) {
      verdict.member = x >= 0.0;  // bounded iff the modulus does not grow
      return verdict;
    }
    verdict.member = x > 1.0 / p;
    if (verdict.member) {
      double ratio =
          std::exp(0.5 * params.kappa * (1.0 - x * p) * log_delta(params));
      verdict.integral = 1.0 + (params.d0 / (params.d0 - 1.0)) * ratio /
                                   (1.0 - ratio);
    }
    return verdict;
  }

  // Spherical function: both exponentials z and 1-z enter, so membership
  // needs Re z strictly inside (1/p, 1/q); empty for p <= 2. At p = inf the
  // function is bounded exactly for Re z in [0, 1].
  if (is_inf(p)) {
    verdict.member = x >= 0.0 && x <= 1.0;
    return verdict;
  }
  double q_inv = 1.0 - 1.0 / p;
  verdict.member = p > 2.0 && x > 1.0 / p && x < q_inv;
  return verdict;
}

real_t lp_partial_sum(const TreeParams& params, complex_t z, real_t p,
                      LpMode mode, int r_cap) {
  if (std::isnan(p) || p < 1.0 || is_inf(p)) {
    throw ValidationError("partial sums need finite p >= 1");
  }
  if (r_cap < 0) throw ValidationError("negative truncation radius");
  double ld = log_delta(params);
  double weight_factor = params.d0 / (params.d0 - 1.0);
  double total = 1.0;  // radius 0 term: |f(0)|^p = 1
  for (int r = params.kappa; r <= r_cap; r += params.kappa) {
    double log_weight = std::log(weight_factor) + 0.5 * r * ld;
    double log_value_p;
    if (mode == LpMode::LengthExponential) {
      log_value_p = -0.5 * z.real() * p * r * ld;
    } else {
      log_value_p = p * std::log(std::abs(spherical_eval(params, z, r)));
    }
    total += std::exp(log_weight + log_value_p);
  }
  return total;
}

//====================== positive definiteness check ======================//

RadialKernel tabulated_kernel(std::vector<std::pair<int, complex_t>> table) {
  std::map<int, complex_t> values(table.begin(), table.end());
  return [values](int r) {
    auto it = values.find(r);
    if (it == values.end()) {
      throw KernelDomainError("kernel has no value at distance " +
                              std::to_string(r));
    }
    return it->second;
  };
}

PDReport pd_check(const BallEnumeration& ball, const RadialKernel& kernel,
                  int radius, long long dim_cap) {
  if (radius < 0) throw ValidationError("negative radius");
  if (ball.radius() < radius) {
    throw ValidationError("ball too small for the requested Gram radius");
  }
  const TreeParams& params = ball.params();

  long long dim = 0;
  for (int r = 0; r <= radius; r += params.kappa) dim += ball.sphere_count(r);
  if (dim > dim_cap) {
    throw ValidationError("gram matrix dimension " + std::to_string(dim) +
                          " exceeds the cap " + std::to_string(dim_cap));
  }

  std::vector<VertexAddress> orbit;
  orbit.reserve(static_cast<std::size_t>(dim));
  for (int r = 0; r <= radius; r += params.kappa) {
    for (long long idx = ball.sphere_begin(r); idx < ball.sphere_end(r);
         ++idx) {
      orbit.push_back(ball.address_of(idx));
    }
  }

  std::map<int, complex_t> cache;
  auto kernel_at = [&](int d) {
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
    complex_t v = kernel(d);
    cache.emplace(d, v);
    return v;
  };

  const int n = static_cast<int>(orbit.size());
  bool real_valued = true;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      complex_t v = kernel_at(distance(orbit[i], orbit[j]));
      if (std::abs(v.imag()) > 1e-14 * (1.0 + std::abs(v.real()))) {
        real_valued = false;
      }
      m(i, j) = v;
      m(j, i) = v;
    }
  }

  PDReport report;
  report.radius = radius;
  report.matrix_dim = dim;
  if (real_valued) {
    Eigen::MatrixXd h = (m.real() + m.real().transpose()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        h, Eigen::EigenvaluesOnly);
    report.min_eigenvalue = solver.eigenvalues().minCoeff();
  } else {
    Eigen::MatrixXcd h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        h, Eigen::EigenvaluesOnly);
    report.min_eigenvalue = solver.eigenvalues().minCoeff();
  }
  return report;
}

//========================== parameter set for PD ==========================//

PdParameterSet pd_parameter_set(const TreeParams& params) {
  PdParameterSet set;
  set.critical_re = 0.5;
  set.top_height = 2.0 * M_PI / (params.kappa * log_delta(params));
  return set;
}

std::vector<complex_t> PdParameterSet::sample(int n) const {
  std::vector<complex_t> out;
  if (n <= 0) return out;
  out.reserve(n);
  const complex_t corners[4] = {
      complex_t(0.0, 0.0), complex_t(critical_re, 0.0),
      complex_t(0.0, top_height), complex_t(critical_re, top_height)};
  for (int i = 0; i < std::min(n, 4); ++i) out.push_back(corners[i]);
  int m = n - 4;
  if (m <= 0) return out;

  // Round-robin interior fill of the three arcs.
  int quota[3] = {(m + 2) / 3, (m + 1) / 3, m / 3};
  int taken[3] = {0, 0, 0};
  for (int i = 0; i < m; ++i) {
    int arc = i % 3;
    while (taken[arc] >= quota[arc]) arc = (arc + 1) % 3;
    double frac = static_cast<double>(taken[arc] + 1) / (quota[arc] + 1);
    ++taken[arc];
    switch (arc) {
      case 0:  // critical segment
        out.push_back(complex_t(critical_re, frac * top_height));
        break;
      case 1:  // bottom edge
        out.push_back(complex_t(frac * critical_re, 0.0));
        break;
      default:  // top edge
        out.push_back(complex_t(frac * critical_re, top_height));
    }
  }
  return out;
}

std::string PdParameterSet::describe() const {
  return "critical segment {1/2} + i[0, " + std::to_string(top_height) +
         "] plus horizontal edges [0, 1/2) at heights 0 and " +
         std::to_string(top_height);
}

}  // namespace treeharm
