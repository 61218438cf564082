#pragma once
// Exact eigenstates, densities with analytic derivatives, node catalogs and
// kinetic expectations for the infinite well, harmonic oscillator and
// hydrogen atom.

#include <complex>
#include <vector>

#include "nlshift/core.hpp"

namespace nlshift {

enum class System { InfiniteWell, SHO, Hydrogen };

const char* to_string(System s);
System system_from_string(const std::string& name);

struct QuantumState {
  System system = System::InfiniteWell;
  int n = 1;
  int l = 0;  // hydrogen only
  int m = 0;  // hydrogen only
  double a = 1.0;
  Units units;

  static QuantumState well(int n, double a, Units u = {});
  static QuantumState sho(int n, double a, Units u = {});
  static QuantumState hydrogen(int n, int l, int m, double a, Units u = {});
};

// phi and its first derivative for the 1D systems
double well_psi(int n, double a, double x);
double sho_psi(int n, double a, double x);
std::complex<double> hydrogen_psi(int n, int l, int m, double a, double r,
                                  double theta, double phi);

double psi_1d(const QuantumState& s, double x);
double psi_prime_1d(const QuantumState& s, double x);

// Probability density with analytic derivatives up to fourth order (1D).
struct Density1D {
  double p = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  double d4 = 0.0;
};

Density1D density_1d(const QuantumState& s, double x);

// Density used for the shifted-argument evaluations p(x +- eta L).  For the
// well this is the sine-squared mirror continuation through the hard walls,
// under which each wall behaves as exactly half of a regular node; elsewhere
// it coincides with the physical density.
double density_for_shifts(const QuantumState& s, double x);

// Extended-precision density values for the shift integrand.  The regularized
// potential subtracts nearly equal densities three cancellation layers deep;
// evaluating p, p+ and p- in long double keeps the quadrature noise floor
// well below the requested tolerances.
long double density_ld(const QuantumState& s, double x);
long double density_for_shifts_ld(const QuantumState& s, double x);

// 3D density at a Cartesian point, plus finite-difference gradient/Laplacian
// (fourth-order stencils, step h).
struct Density3D {
  double p = 0.0;
  std::array<double, 3> grad = {0.0, 0.0, 0.0};
  double laplacian = 0.0;
};

double density_3d(const QuantumState& s, const std::array<double, 3>& x);
Density3D density_3d_derivatives(const QuantumState& s, const std::array<double, 3>& x,
                                 double h);
Field3D density_field(const QuantumState& s);

struct NodeInfo {
  double position = 0.0;     // x_p
  double slope_coeff = 0.0;  // C_np = phi'(x_p), units length^{-3/2}
  double weight = 1.0;       // 1 interior, 1/2 at a wall
};

// Zeros of the 1D wavefunction.  Well: interior nodes plus both walls at half
// weight.  SHO: all n Hermite roots.  Throws for 3D states.
std::vector<NodeInfo> nodes(const QuantumState& s);

// <T> = (hbar^2/2m) * integral phi'^2, in closed form per system.
double kinetic_expectation(const QuantumState& s);

double unperturbed_energy(const QuantumState& s);

// Integration domain [lo, hi] outside of which the density is below
// tail_cutoff * peak (well: the box itself).
std::pair<double, double> domain_1d(const QuantumState& s, double tail_cutoff);

// Normalized Hermite function h_n = H_n(z) exp(-z^2/2) / sqrt(2^n n! sqrt(pi))
// and its z-derivative; stable for large n.
struct HermiteValue {
  double value = 0.0;
  double derivative = 0.0;
};
HermiteValue hermite_function(int n, double z);

// Physicists' Hermite polynomial by direct recurrence (test/oracle use; will
// overflow for large n at large |z|).
double hermite_polynomial(int n, double z);

// All n roots of H_n via the symmetric Jacobi (tridiagonal) matrix, polished
// by one Newton step.  Throws NumericalError if a polished root moves by more
// than 1e-10.
std::vector<double> hermite_roots(int n);

// Roots of the generalized Laguerre polynomial L_k^alpha on (0, inf).
std::vector<double> laguerre_roots(int k, double alpha);

double assoc_laguerre(int k, double alpha, double x);
double assoc_legendre(int l, int m, double x);  // no Condon-Shortley phase
std::complex<double> spherical_harmonic(int l, int m, double theta, double phi);

double hydrogen_radial(int n, int l, double a, double r);

// Radii of the density zeros of a hydrogen state (radial nodes; excludes the
// origin).
std::vector<double> hydrogen_radial_node_radii(const QuantumState& s);

}  // namespace nlshift
