#pragma once
// Pointwise evaluation of the regularized nonlinear quantum potential, its
// linear limit, their difference, and the two comparison nonlinearities.

#include <functional>

#include "nlshift/core.hpp"
#include "nlshift/wavefunctions.hpp"

namespace nlshift {

using DensityFn1D = std::function<double(double)>;
using DensityProbe1D = std::function<Density1D(double)>;

// Regularized nonlinear quantum potential at one point, built from the local
// density and the two shifted densities p(x +- eta*L).  At a density zero the
// value is replaced by its limit p*Q_nl -> 0 (returned as 0).  Throws if the
// density and both shifted denominators vanish simultaneously.
double q_nl_1d(double p, double p_plus, double p_minus,
               const NonlinearityParams& params, const Units& units);
double q_nl_1d(const DensityFn1D& p, double x, const NonlinearityParams& params,
               const Units& units);

// L -> -L symmetrized variant.
double q_nl_1d_symmetrized(const DensityFn1D& p, double x,
                           const NonlinearityParams& params, const Units& units);

// p(x) * Q_nl(x) evaluated jointly; finite for all p >= 0, smooth through
// density zeros.  This is the integrand of the shift integrals.
double p_q_nl_1d(double p, double p_plus, double p_minus,
                 const NonlinearityParams& params, const Units& units);

// Extended-precision overload used by the shift quadrature (the bracket
// cancels several orders below the size of its terms away from nodes).
double p_q_nl_1d(long double p, long double p_plus, long double p_minus,
                 const NonlinearityParams& params, const Units& units);

// bracket of the regularized potential divided by p, from the relative
// density differences u = (p+ - p)/p, w = (p- - p)/p.  Cancellation-free for
// small u, w; used directly where u and w are known analytically.
long double q_nl_bracket_uw(long double u, long double w, long double eta);

// Linear-limit quantum potential -(hbar^2/2m)(sqrt(p))''/sqrt(p) from analytic
// density derivatives.  Throws NumericalError at a density zero (removable
// singularity; shift integrals use the integrated-by-parts route instead).
double q_linear_1d(const Density1D& d, const Units& units);

double f_nonlinear_1d(const DensityProbe1D& probe, double x,
                      const NonlinearityParams& params, const Units& units);

// Gross-Pitaevskii term F = g p.
double gp_term(double p, double g);

// Pseudo-nonlinear term -(eps hbar^2/2m) psi''/psi from density derivatives.
double pseudo_term(const Density1D& d, double eps, const Units& units);

// 3D: per-axis sum of the shifted-density brackets.
double q_nl_3d(const Field3D& p, const std::array<double, 3>& x,
               const NonlinearityParams& params, const Units& units);

// 3D linear-limit potential -(hbar^2/8M)[2 d_i d_i p / p - d_i p d_i p / p^2]
// from fourth-order central differences with step h.
double q_linear_3d_fd(const Field3D& p, const std::array<double, 3>& x, double h,
                      const Units& units);

double f_nonlinear_3d(const Field3D& p, const std::array<double, 3>& x,
                      const NonlinearityParams& params, const Units& units, double h);

}  // namespace nlshift
