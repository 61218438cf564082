#pragma once
// First-order energy shifts for all systems and nonlinearities, critical-eta
// location, and parameter scans.

#include <optional>
#include <string>
#include <vector>

#include "nlshift/core.hpp"
#include "nlshift/quadrature.hpp"
#include "nlshift/wavefunctions.hpp"

namespace nlshift {

// Per-system dimensionless normalization of an energy shift.
double delta_e_dimensionless(double raw, const QuantumState& s);

// First-order shift of the information-theoretic nonlinearity.
// 1D: breakpointed quadrature of p*Q_nl minus the exact kinetic expectation.
// 3D: Monte Carlo expectation of Q_3 - Q over the state's density, with the
//     linear potential evaluated from the correlated finite-difference stencil.
ShiftResult delta_e(const QuantumState& s, const NonlinearityParams& params,
                    const RunConfig& cfg,
                    McSampler sampler = McSampler::metropolis_on_p);

struct CriticalEtaResult {
  double eta_c = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  bool nodeless_zero = false;  // ground-state O(L^2) zero rather than the node zero
  std::uint64_t evaluations = 0;
};

// Bisection of eta -> delta_e over [0.05, 0.95] to |d eta| <= 1e-3.  Throws
// NumericalError if the shift does not change sign over the bracket.
CriticalEtaResult critical_eta(const QuantumState& s, double L, const RunConfig& cfg);

// Gross-Pitaevskii shift g * integral p^2.
ShiftResult delta_e_gp(const QuantumState& s, double g, const RunConfig& cfg);

// Pseudo-nonlinear shift eps * <T> (exact).  cross_check evaluates the
// integrated-by-parts quadrature route as well and folds the difference into
// the error estimate.
ShiftResult delta_e_pseudo(const QuantumState& s, double eps, const RunConfig& cfg,
                           bool cross_check = false);

enum class NonlinearityKind { info_theoretic, gross_pitaevskii, pseudo };

const char* to_string(NonlinearityKind k);
NonlinearityKind nonlinearity_from_string(const std::string& name);

struct ScanSpec {
  System system = System::InfiniteWell;
  std::vector<int> n_values;
  int l = 0;
  int m = 0;
  std::vector<double> a_values;
  double L = 1.0;
  double eta = 0.5;
  NonlinearityKind kind = NonlinearityKind::info_theoretic;
  double g = 1.0;      // gross_pitaevskii coupling
  double eps = 1e-3;   // pseudo coupling
  McSampler sampler = McSampler::metropolis_on_p;
};

struct ScanRow {
  std::size_t index = 0;
  System system = System::InfiniteWell;
  int n = 0, l = 0, m = 0;
  double a = 0.0, L = 0.0, eta = 0.0;
  NonlinearityKind kind = NonlinearityKind::info_theoretic;
  std::uint64_t seed = 0;
  ShiftResult result;
  std::string status = "ok";  // "ok" or "error: ..."
};

// Evaluates the grid (n outer, a inner) in a worker pool; rows are returned in
// grid order regardless of completion order.  Per-row failures are recorded in
// the row status and do not stop the scan.
std::vector<ScanRow> scan(const ScanSpec& spec, const RunConfig& cfg);

std::vector<double> geometric_grid(double lo, double hi, int points);

// Default Monte Carlo plan for a hydrogen shift.
MCPlan3D default_mc_plan(const QuantumState& s, const NonlinearityParams& params,
                         const RunConfig& cfg, McSampler sampler);

}  // namespace nlshift
