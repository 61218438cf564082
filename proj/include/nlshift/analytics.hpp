#pragma once
// Closed-form and semi-analytic predictions for node-dominated shifts: the
// universal node integral, factorized node formulas, the nodeless formal
// expansion, and the oscillator slope sums.

#include "nlshift/core.hpp"
#include "nlshift/nonlinearity.hpp"
#include "nlshift/quadrature.hpp"
#include "nlshift/wavefunctions.hpp"

namespace nlshift {

// Universal node integral J(eta) = -(2/3) sqrt(1-eta) eta^{9/2} (4 eta - 1) pi.
// Vanishes exactly at eta = 1/4.
double j_closed(double eta);

// Finite-window node integral J(eta, alpha) over y in [-alpha/2, alpha/2];
// converges to j_closed with an O(1/alpha) remainder.
double j_integral(double eta, double alpha, const RunConfig& cfg);

struct NodePrediction {
  double sum_c_sq = 0.0;      // weighted sum of C_np^2 over nodes
  double j_value = 0.0;       // J(eta)
  double predicted_shift = 0.0;
  double predicted_shift_dimensionless = 0.0;
};

// Factorized leading shift (hbar^2 |L| / 4 m eta^4) J(eta) sum C_np^2 for a 1D
// state with nodes.  Asserts agreement of the two equivalent groupings of the
// eta prefactor to 1e-12.
NodePrediction node_shift_prediction(const QuantumState& s, const NonlinearityParams& params);

// Sum of C_np^2 over the n Hermite roots, scaled by a^3 the way the slope
// coefficients scale.  Units: length^{-3}.
double sho_cnp_sum(int n, double a);

// Dimensionless closed-form ground-state shift
// eta^2 (1-eta)(1-3 eta)/4 * (L/a)^2.
double sho_ground_closed(double eta, double L, double a);

// Formal O(L^2) shift for a nodeless 1D state, from the fourth-order density
// expansion.  The overall constant is fixed by matching the oscillator
// ground-state closed form.  Throws for states with nodes.
double formal_l2_shift(const QuantumState& s, const NonlinearityParams& params,
                       const RunConfig& cfg);

// Same expansion for an arbitrary normalized nodeless density probe over
// [lo, hi] (used to check the matched constant is input-independent).
double formal_l2_shift_density(const DensityProbe1D& probe, double lo, double hi,
                               const NonlinearityParams& params, const Units& units,
                               const RunConfig& cfg);

struct NodeRegionShift {
  double value = 0.0;
  bool spacing_ok = true;  // node spacing > 10 eta |L|
};

// Scaled node-region construction (hbar^2 |L| / 4 m eta^4) J(eta, alpha)
// sum C_np^2.  Throws if alpha |L| exceeds half the minimum node spacing.
NodeRegionShift node_region_shift(const QuantumState& s, const NonlinearityParams& params,
                                  double alpha, const RunConfig& cfg);

}  // namespace nlshift
