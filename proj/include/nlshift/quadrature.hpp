#pragma once
// Breakpoint-aware adaptive 1D quadrature and seeded 3D Monte Carlo
// integration.  Every routine here is deterministic for a fixed plan.

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "nlshift/core.hpp"

namespace nlshift {

struct IntegrationPlan1D {
  double lo = 0.0;
  double hi = 1.0;
  // Panel edges the subdivision must respect (node positions, their shifted
  // images, truncation points).  Points outside (lo, hi) are ignored.
  std::vector<double> breakpoints;
  double rel_tol = 1e-9;
  double abs_tol = 1e-30;
  std::size_t max_subdivisions = 1000000;
};

struct IntegralResult {
  double value = 0.0;
  double err_estimate = 0.0;
  std::uint64_t evaluations = 0;
};

class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& msg, IntegralResult best)
      : NumericalError(msg), best_estimate(best) {}
  IntegralResult best_estimate;
};

using Integrand1D = std::function<double(double)>;

// Adaptive Gauss-Kronrod (7,15) subdivision.  Panels never straddle a
// breakpoint.  Throws QuadratureError (carrying the best estimate) when the
// subdivision budget is exhausted before err <= max(rel_tol*|value|, abs_tol).
IntegralResult integrate_1d(const Integrand1D& f, const IntegrationPlan1D& plan);

enum class McSampler { metropolis_on_p, stratified_box, radial_lines };

const char* to_string(McSampler s);

struct MCPlan3D {
  McSampler sampler = McSampler::metropolis_on_p;
  std::uint64_t n_samples = 100000;
  std::uint64_t burn_in = 10000;
  double proposal_scale = 1.0;
  std::uint64_t seed = 20260811;
  // Chain count is fixed by the plan, not by the thread budget, so results
  // are reproducible regardless of how execution is parallelized.
  int n_chains = 8;
  std::array<double, 3> start = {0.6, 0.4, 0.3};  // multiplied by proposal_scale

  // stratified_box
  double box_halfwidth = 0.0;

  // radial_lines: spherical integration with per-direction adaptive radial
  // quadrature.  A "sample" is one radial integrand evaluation; directions are
  // drawn until the per-chain evaluation budget is spent.
  double r_max = 0.0;
  std::vector<double> shell_radii;   // radii where the density vanishes
  std::vector<double> shift_deltas;  // offsets whose images kink the integrand
  double radial_rel_tol = 3e-6;
  double radial_abs_tol = 1e-300;    // absolute floor for one ray integral
  std::size_t radial_max_subdivisions = 256;
};

struct McResult {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t evaluations = 0;
  double tau_int = 0.0;       // integrated autocorrelation estimate (batch means)
  bool autocorr_warning = false;
};

// Estimates integral f d^3r.  metropolis_on_p averages f/p over p-distributed
// samples; stratified_box and radial_lines integrate f directly.
McResult integrate_mc_3d(const Field3D& f, const Field3D& p, const MCPlan3D& plan);

// Estimates E_p[g] = integral p*g d^3r for normalized p.
McResult mc_expectation(const Field3D& g, const Field3D& p, const MCPlan3D& plan);

}  // namespace nlshift
