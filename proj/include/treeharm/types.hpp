#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace treeharm {

using real_t = double;
using complex_t = std::complex<real_t>;
using rational_t = boost::multiprecision::cpp_rational;
using bigint_t = boost::multiprecision::cpp_int;

//=============================== errors ===============================//

/// Bad input: degree constraints, malformed radii, mismatched parameters.
/// The CLI maps this family to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested enumeration would exceed the configured vertex budget.
class BudgetExceededError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// The two-point system behind the mixing coefficient is numerically
/// singular at this parameter; callers fall back to the boundary evaluator.
class SingularParameterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Spectrum classification was requested without the independence-property
/// flag that the classification assumes. The CLI maps this to exit code 3.
class ClassificationUnavailableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Gram-matrix kernel was queried at a distance it does not cover.
class KernelDomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

//============================= tolerances =============================//

/// Tolerance ladder. Identities that hold in exact arithmetic get the
/// tightest bound; agreement between independent evaluators is looser;
/// eigenvalue slack absorbs dense-solver noise on large Gram matrices.
struct Tolerances {
  real_t identity = 1e-12;
  real_t cross = 1e-10;
  real_t psd_slack = 1e-10;
  real_t spectrum = 1e-9;
  real_t singular = 1e-9;
};

//=============================== budget ===============================//

/// Vertex budget for ball enumeration: TREEHARM_BUDGET when set and
/// positive, otherwise 10^7.
long long default_vertex_budget();

}  // namespace treeharm
