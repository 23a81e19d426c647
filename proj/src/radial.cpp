#include "treeharm/radial.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

namespace treeharm {

namespace {

double to_double(const rational_t& q) { return q.convert_to<double>(); }

double sphere_size_d(const TreeParams& params, int r) {
  return sphere_size_exact(params, r).convert_to<double>();
}

void require_radius(const TreeParams& params, int r) {
  if (r < 0 || r % params.kappa != 0) {
    throw ValidationError("radius " + std::to_string(r) +
                          " is not a nonnegative multiple of kappa=" +
                          std::to_string(params.kappa));
  }
}

void require_same_params(const TreeParams& a, const TreeParams& b) {
  if (!(a == b)) {
    throw ValidationError("tree parameter mismatch between operands");
  }
}

}  // namespace

//=========================== radial functions ===========================//

int RadialFunction::max_support() const {
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    if (it->second != complex_t(0.0, 0.0)) return it->first;
  }
  return -1;
}

void RadialFunction::set(int r, complex_t value) {
  require_radius(params, r);
  coeffs[r] = value;
}

RadialFunction make_radial(const TreeParams& params,
                           std::map<int, complex_t> coeffs) {
  for (const auto& [r, v] : coeffs) require_radius(params, r);
  return RadialFunction{params, std::move(coeffs)};
}

RadialFunction coset_indicator(const TreeParams& params, int m) {
  require_radius(params, m);
  RadialFunction f{params, {}};
  f.coeffs[m] = complex_t(1.0 / sphere_size_d(params, m), 0.0);
  return f;
}

complex_t integrate(const RadialFunction& f) {
  // f(0) + (d0/(d0-1)) sum delta^(r/2) f(r); the weight at radius r is
  // exactly the sphere size there, so this is the orbit vertex sum.
  complex_t total(0.0, 0.0);
  for (const auto& [r, v] : f.coeffs) {
    total += v * sphere_size_d(f.params, r);
  }
  return total;
}

RadialFunction adjoint(const RadialFunction& f) {
  RadialFunction out{f.params, {}};
  for (const auto& [r, v] : f.coeffs) out.coeffs[r] = std::conj(v);
  return out;
}

RadialFunction add(const RadialFunction& f, const RadialFunction& g) {
  require_same_params(f.params, g.params);
  RadialFunction out = f;
  for (const auto& [r, v] : g.coeffs) out.coeffs[r] += v;
  return out;
}

RadialFunction scale(const RadialFunction& f, complex_t factor) {
  RadialFunction out = f;
  for (auto& [r, v] : out.coeffs) v *= factor;
  return out;
}

//========================== generator structure ==========================//

GeneratorStep generator_step(const TreeParams& params) {
  GeneratorStep s;
  rational_t d0 = params.d0;
  rational_t d1 = params.d1;
  if (params.kappa == 1) {
    s.down = rational_t(1) / d0;
    s.stay = 0;
    s.up = (d0 - 1) / d0;
  } else {
    rational_t b2 = d0 * (d1 - 1);
    s.down = rational_t(1) / b2;
    s.stay = (d1 - 2) / b2;
    s.up = (d0 - 1) / d0;
  }
  return s;
}

complex_t apply_generator(const TreeParams& params,
                          const std::function<complex_t(int)>& f, int r) {
  require_radius(params, r);
  int k = params.kappa;
  if (r == 0) return f(k);
  GeneratorStep s = generator_step(params);
  return to_double(s.up) * f(r + k) + to_double(s.stay) * f(r) +
         to_double(s.down) * f(r - k);
}

namespace detail {

std::vector<std::vector<rational_t>> generator_basis_polynomials(
    const TreeParams& params, int k_max) {
  GeneratorStep s = generator_step(params);
  std::vector<std::vector<rational_t>> polys;
  polys.reserve(k_max + 1);
  polys.push_back({rational_t(1)});
  if (k_max >= 1) polys.push_back({rational_t(0), rational_t(1)});
  for (int k = 1; k < k_max; ++k) {
    const auto& pk = polys[k];
    const auto& pk1 = polys[k - 1];
    std::vector<rational_t> next(k + 2, rational_t(0));
    for (int j = 0; j <= k; ++j) {
      next[j + 1] += pk[j];       // X * P_k
      next[j] -= s.stay * pk[j];  // -stay * P_k
    }
    for (int j = 0; j < k; ++j) next[j] -= s.down * pk1[j];
    for (auto& c : next) c /= s.up;
    polys.push_back(std::move(next));
  }
  return polys;
}

std::vector<rational_t> apply_generator_mu_basis(
    const TreeParams& params, const std::vector<rational_t>& mu_coords) {
  GeneratorStep s = generator_step(params);
  std::vector<rational_t> out(mu_coords.size() + 1, rational_t(0));
  for (std::size_t k = 0; k < mu_coords.size(); ++k) {
    const rational_t& v = mu_coords[k];
    if (v == 0) continue;
    if (k == 0) {
      out[1] += v;
      continue;
    }
    out[k - 1] += s.down * v;
    out[k] += s.stay * v;
    out[k + 1] += s.up * v;
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace detail

GeneratorPolynomial expand_in_generator(const TreeParams& params, int m) {
  require_radius(params, m);
  int k = m / params.kappa;
  auto polys = detail::generator_basis_polynomials(params, k);
  GeneratorPolynomial out{params, {}};
  out.coefficients.reserve(k + 1);
  for (const auto& c : polys[k]) out.coefficients.push_back(to_double(c));
  return out;
}

//============================== convolution ==============================//

RadialFunction convolve(const RadialFunction& f, const RadialFunction& g) {
  require_same_params(f.params, g.params);
  const TreeParams& params = f.params;
  int kappa = params.kappa;
  int mf = f.max_support();
  int mg = g.max_support();
  RadialFunction out{params, {}};
  if (mf < 0 || mg < 0) return out;
  for (const auto& [r, v] : f.coeffs) require_radius(params, r);
  for (const auto& [r, v] : g.coeffs) require_radius(params, r);

  int kf = mf / kappa;
  int kg = mg / kappa;
  int kq = kf + kg;
  auto polys = detail::generator_basis_polynomials(params, kq);

  std::vector<std::vector<double>> basis(kq + 1);
  std::vector<double> lead(kq + 1);
  for (int k = 0; k <= kq; ++k) {
    basis[k].reserve(polys[k].size());
    for (const auto& c : polys[k]) basis[k].push_back(to_double(c));
    lead[k] = basis[k].back();
  }

  auto to_poly = [&](const RadialFunction& h, int kh) {
    std::vector<complex_t> p(kh + 1, complex_t(0.0, 0.0));
    for (int k = 0; k <= kh; ++k) {
      complex_t coord = h.at(k * kappa) * sphere_size_d(params, k * kappa);
      if (coord == complex_t(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < basis[k].size(); ++j) {
        p[j] += coord * basis[k][j];
      }
    }
    return p;
  };

  std::vector<complex_t> pf = to_poly(f, kf);
  std::vector<complex_t> pg = to_poly(g, kg);
  std::vector<complex_t> q(kq + 1, complex_t(0.0, 0.0));
  for (int i = 0; i <= kf; ++i) {
    if (pf[i] == complex_t(0.0, 0.0)) continue;
    for (int j = 0; j <= kg; ++j) q[i + j] += pf[i] * pg[j];
  }

  // Peel from the top: each basis polynomial has exact degree k.
  for (int k = kq; k >= 0; --k) {
    complex_t coord = q[k] / lead[k];
    for (std::size_t j = 0; j < basis[k].size(); ++j) {
      q[j] -= coord * basis[k][j];
    }
    complex_t value = coord / sphere_size_d(params, k * kappa);
    if (value != complex_t(0.0, 0.0)) out.coeffs[k * kappa] = value;
  }
  return out;
}

//=========================== brute-force oracle ===========================//

namespace {

// Child index pattern of the evaluation ray with the given id.
int ray_step(int ray_id, long long branch, int depth) {
  if (ray_id == 0) return 0;
  if (ray_id == 1) return static_cast<int>(branch - 1);
  return static_cast<int>((depth + ray_id) % branch);
}

// Counts ball vertices by (depth in support, common prefix length with the
// ray). The ray is given by explicit child indices per depth.
std::vector<std::vector<long long>> prefix_histograms(
    const BallEnumeration& ball, const std::vector<int>& ray,
    const std::vector<int>& depths) {
  const TreeParams& params = ball.params();
  int max_depth = depths.empty() ? 0 : depths.back();
  std::vector<std::vector<long long>> hist(max_depth + 1);
  for (int m : depths) hist[m].assign(m + 1, 0);

  std::vector<std::uint8_t> cp_prev{0};
  std::vector<std::uint8_t> cp_next;
  for (int r = 0;; ++r) {
    if (!hist.empty() && r <= max_depth && !hist[r].empty()) {
      for (std::uint8_t j : cp_prev) ++hist[r][j];
    }
    if (r == max_depth) break;
    long long br = branching(params, r);
    int on_ray_step = r < static_cast<int>(ray.size()) ? ray[r] : -1;
    cp_next.resize(cp_prev.size() * br);
    std::size_t w = 0;
    for (std::uint8_t cp : cp_prev) {
      bool on_ray = cp == r;
      for (long long c = 0; c < br; ++c) {
        cp_next[w++] = (on_ray && c == on_ray_step)
                           ? static_cast<std::uint8_t>(r + 1)
                           : cp;
      }
    }
    cp_prev.swap(cp_next);
  }
  return hist;
}

}  // namespace

RadialFunction convolve_oracle(const BallEnumeration& ball,
                               const RadialFunction& f,
                               const RadialFunction& g) {
  return convolve_oracle(ball, f, g, OracleOptions{});
}

RadialFunction convolve_oracle(const BallEnumeration& ball,
                               const RadialFunction& f,
                               const RadialFunction& g,
                               const OracleOptions& options) {
  require_same_params(ball.params(), f.params);
  require_same_params(f.params, g.params);
  const TreeParams& params = f.params;
  int kappa = params.kappa;
  int mf = f.max_support();
  int mg = g.max_support();
  RadialFunction out{params, {}};
  if (mf < 0 || mg < 0) return out;
  for (const auto& [r, v] : f.coeffs) require_radius(params, r);
  for (const auto& [r, v] : g.coeffs) require_radius(params, r);
  if (ball.radius() < mf) {
    throw ValidationError(
        "ball too small: radius " + std::to_string(ball.radius()) +
        " does not cover the support of f (max radius " + std::to_string(mf) +
        ")");
  }

  int out_max = mf + mg;
  std::vector<int> support_depths;
  for (const auto& [r, v] : f.coeffs) {
    if (v != complex_t(0.0, 0.0)) support_depths.push_back(r);
  }

  auto assemble = [&](const std::vector<std::vector<long long>>& hist, int r) {
    complex_t val(0.0, 0.0);
    for (int m : support_depths) {
      complex_t fv = f.at(m);
      complex_t inner(0.0, 0.0);
      for (int j = 0; j <= m; ++j) {
        long long count = hist[m][j];
        if (count == 0) continue;
        int dist = m + r - 2 * std::min(j, r);
        complex_t gv = g.at(dist);
        if (gv != complex_t(0.0, 0.0)) inner += static_cast<double>(count) * gv;
      }
      val += fv * inner;
    }
    return val;
  };

  int ray_len = std::max(out_max, mf);
  int n_rays = 1 + std::max(0, options.verification_rays);
  std::vector<std::vector<complex_t>> values(n_rays);
  for (int ray_id = 0; ray_id < n_rays; ++ray_id) {
    std::vector<int> ray(ray_len);
    for (int d = 0; d < ray_len; ++d) {
      ray[d] = ray_step(ray_id, branching(params, d), d);
    }
    auto hist = prefix_histograms(ball, ray, support_depths);
    for (int r = 0; r <= out_max; r += kappa) {
      values[ray_id].push_back(assemble(hist, r));
    }
  }

  // Radiality across rays: all representatives at one radius must agree.
  for (int ray_id = 1; ray_id < n_rays; ++ray_id) {
    for (std::size_t i = 0; i < values[0].size(); ++i) {
      double diff = std::abs(values[ray_id][i] - values[0][i]);
      double scl = std::max(1.0, std::abs(values[0][i]));
      if (diff > options.radiality_tol * scl) {
        throw std::logic_error(
            "oracle radiality violated across rays at radius " +
            std::to_string(static_cast<int>(i) * kappa));
      }
    }
  }

  // Per-vertex radiality sweep while affordable: every vertex of the sphere
  // serves as the representative and must reproduce the primary value.
  long long scan_cost = ball.sphere_end(mf);
  long long budget = options.exhaustive_cost_limit;
  for (int r = 0; r <= std::min(out_max, ball.radius()); r += kappa) {
    long long cost = ball.sphere_count(r) * scan_cost;
    if (cost > budget) break;
    budget -= cost;
    for (long long idx = ball.sphere_begin(r); idx < ball.sphere_end(r);
         ++idx) {
      VertexAddress x = ball.address_of(idx);
      auto hist = prefix_histograms(ball, x.path, support_depths);
      complex_t val = assemble(hist, r);
      complex_t ref = values[0][r / kappa];
      double diff = std::abs(val - ref);
      if (diff > options.radiality_tol * std::max(1.0, std::abs(ref))) {
        throw std::logic_error(
            "oracle radiality violated within the sphere of radius " +
            std::to_string(r));
      }
    }
  }

  for (int r = 0; r <= out_max; r += kappa) {
    complex_t v = values[0][r / kappa];
    if (v != complex_t(0.0, 0.0)) out.coeffs[r] = v;
  }
  return out;
}

}  // namespace treeharm
