#include "nlshift/nonlinearity.hpp"

#include <cmath>

namespace nlshift {

namespace {

// direct form of the bracket divided through by p:
//   ln(p/d+) + 1 - (1-eta) p/d+ - eta p-/d-
// with d+ = (1-eta)p + eta p+, d- = (1-eta)p- + eta p.
long double bracket_direct(long double p, long double pp, long double pm,
                           long double eta) {
  const long double dplus = (1.0L - eta) * p + eta * pp;
  const long double dminus = (1.0L - eta) * pm + eta * p;
  return std::log(p / dplus) + 1.0L - (1.0L - eta) * p / dplus - eta * pm / dminus;
}

long double bracket_over_p(long double p, long double pp, long double pm,
                           long double eta) {
  const long double u = (pp - p) / p;
  const long double w = (pm - p) / p;
  if (std::abs(u) < 0.5L && std::abs(w) < 0.5L) return q_nl_bracket_uw(u, w, eta);
  return bracket_direct(p, pp, pm, eta);
}

double prefactor(const NonlinearityParams& params, const Units& units) {
  const double e2 = params.eta * params.eta;
  return units.hbar * units.hbar /
         (4.0 * units.mass * params.L * params.L * e2 * e2);
}

}  // namespace

long double q_nl_bracket_uw(long double u, long double w, long double eta) {
  // ln(p/d+) = -log1p(eta u);  the remaining terms reduce to a single
  // rational expression whose numerator starts at first order in u, w
  const long double numer = (1.0L - eta) * u - eta * w + (1.0L - 2.0L * eta) * u * w;
  const long double denom = (1.0L + eta * u) * (1.0L + (1.0L - eta) * w);
  return -std::log1p(eta * u) + eta * numer / denom;
}

double q_nl_1d(double p, double pp, double pm, const NonlinearityParams& params,
               const Units& units) {
  if (p <= 0.0) {
    const double dplus = (1.0 - params.eta) * p + params.eta * pp;
    const double dminus = (1.0 - params.eta) * pm + params.eta * p;
    if (dplus <= 0.0 && dminus <= 0.0)
      throw NumericalError("q_nl_1d: density and shifted denominators vanish together");
    return 0.0;  // limit value such that p * Q_nl -> 0
  }
  return prefactor(params, units) *
         static_cast<double>(bracket_over_p(p, pp, pm, params.eta));
}

double q_nl_1d(const DensityFn1D& p, double x, const NonlinearityParams& params,
               const Units& units) {
  const double shift = params.eta * params.L;
  return q_nl_1d(p(x), p(x + shift), p(x - shift), params, units);
}

double q_nl_1d_symmetrized(const DensityFn1D& p, double x,
                           const NonlinearityParams& params, const Units& units) {
  NonlinearityParams flipped = params;
  flipped.L = -params.L;
  return 0.5 * (q_nl_1d(p, x, params, units) + q_nl_1d(p, x, flipped, units));
}

double p_q_nl_1d(long double p, long double pp, long double pm,
                 const NonlinearityParams& params, const Units& units) {
  if (p <= 0.0L) return 0.0;  // p ln p -> 0 and every other term carries a p
  return prefactor(params, units) *
         static_cast<double>(p * bracket_over_p(p, pp, pm, params.eta));
}

double p_q_nl_1d(double p, double pp, double pm, const NonlinearityParams& params,
                 const Units& units) {
  return p_q_nl_1d(static_cast<long double>(p), static_cast<long double>(pp),
                   static_cast<long double>(pm), params, units);
}

double q_linear_1d(const Density1D& d, const Units& units) {
  if (!(d.p > 0.0))
    throw NumericalError("q_linear_1d: removable singularity at a density zero");
  const double h2m = units.hbar * units.hbar / (2.0 * units.mass);
  return -h2m * (d.d2 / (2.0 * d.p) - d.d1 * d.d1 / (4.0 * d.p * d.p));
}

double f_nonlinear_1d(const DensityProbe1D& probe, double x,
                      const NonlinearityParams& params, const Units& units) {
  const double shift = params.eta * params.L;
  const Density1D d = probe(x);
  const double qnl = q_nl_1d(d.p, probe(x + shift).p, probe(x - shift).p, params, units);
  return qnl - q_linear_1d(d, units);
}

double gp_term(double p, double g) { return g * p; }

double pseudo_term(const Density1D& d, double eps, const Units& units) {
  if (eps == 0.0) return 0.0;
  if (!(d.p > 0.0))
    throw NumericalError("pseudo_term: removable singularity at a density zero");
  // psi''/psi = p''/2p - (p')^2/4p^2 for a real eigenfunction
  const double ratio = d.d2 / (2.0 * d.p) - d.d1 * d.d1 / (4.0 * d.p * d.p);
  return -eps * units.hbar * units.hbar / (2.0 * units.mass) * ratio;
}

double q_nl_3d(const Field3D& p, const std::array<double, 3>& x,
               const NonlinearityParams& params, const Units& units) {
  const double shift = params.eta * params.L;
  const double pc = p(x);
  const double pref = prefactor(params, units);
  double sum = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    std::array<double, 3> xp = x, xm = x;
    xp[axis] += shift;
    xm[axis] -= shift;
    const double pp = p(xp);
    const double pm = p(xm);
    if (pc <= 0.0) {
      const double dplus = (1.0 - params.eta) * pc + params.eta * pp;
      const double dminus = (1.0 - params.eta) * pm + params.eta * pc;
      if (dplus <= 0.0 && dminus <= 0.0)
        throw NumericalError("q_nl_3d: density and shifted denominators vanish together");
      continue;  // per-axis limit 0
    }
    sum += pref * bracket_over_p(pc, pp, pm, params.eta);
  }
  return sum;
}

double q_linear_3d_fd(const Field3D& p, const std::array<double, 3>& x, double h,
                      const Units& units) {
  const double pc = p(x);
  if (!(pc > 0.0))
    throw NumericalError("q_linear_3d_fd: density zero");
  double sum_d2 = 0.0, sum_grad2 = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    std::array<double, 3> x1 = x, x2 = x, x3 = x, x4 = x;
    x1[axis] -= 2.0 * h;
    x2[axis] -= h;
    x3[axis] += h;
    x4[axis] += 2.0 * h;
    const double fm2 = p(x1), fm = p(x2), fp = p(x3), fp2 = p(x4);
    const double d1 = (fm2 - 8.0 * fm + 8.0 * fp - fp2) / (12.0 * h);
    const double d2 = (-fm2 + 16.0 * fm - 30.0 * pc + 16.0 * fp - fp2) / (12.0 * h * h);
    sum_d2 += d2;
    sum_grad2 += d1 * d1;
  }
  return -units.hbar * units.hbar / (8.0 * units.mass) *
         (2.0 * sum_d2 / pc - sum_grad2 / (pc * pc));
}

double f_nonlinear_3d(const Field3D& p, const std::array<double, 3>& x,
                      const NonlinearityParams& params, const Units& units, double h) {
  return q_nl_3d(p, x, params, units) - q_linear_3d_fd(p, x, h, units);
}

}  // namespace nlshift
