#include "nlshift/analytics.hpp"

#include <cmath>
#include <limits>

#include "nlshift/perturbation.hpp"

namespace nlshift {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double j_closed(double eta) {
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("j_closed: eta out of range (0,1)");
  return -(2.0 / 3.0) * std::sqrt(1.0 - eta) * std::pow(eta, 4.5) *
         (4.0 * eta - 1.0) * kPi;
}

double j_integral(double eta, double alpha, const RunConfig& cfg) {
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("j_integral: eta out of range (0,1)");
  if (!(alpha > 0.0)) throw std::invalid_argument("j_integral: alpha must be > 0");
  auto integrand = [eta](double y) {
    const long double y2 = static_cast<long double>(y) * y;
    if (y2 == 0.0L) return 0.0;
    const long double e = eta;
    if (std::abs(y) > 4.0 * eta) {
      // u and w are exact rational expressions here; the bracket cancels three
      // orders deep in the tail, so feed the cancellation-free form directly
      const long double u = e * (2.0L * y + e) / y2;
      const long double w = e * (e - 2.0L * y) / y2;
      return static_cast<double>(y2 * q_nl_bracket_uw(u, w, e));
    }
    const long double dplus = (1.0L - e) * y2 + e * (y + e) * (y + e);
    const long double dminus = (1.0L - e) * (y - e) * (y - e) + e * y2;
    return static_cast<double>(y2 * (std::log(y2 / dplus) + 1.0L - (1.0L - e) * y2 / dplus) -
                               e * (y - e) * (y - e) * y2 / dminus);
  };
  IntegrationPlan1D plan;
  plan.lo = -0.5 * alpha;
  plan.hi = 0.5 * alpha;
  plan.breakpoints = {-eta, 0.0, eta};
  // extra edges so the slowly decaying tail is panelled geometrically
  for (double w = 8.0 * eta; w < 0.5 * alpha; w *= 8.0) {
    plan.breakpoints.push_back(w);
    plan.breakpoints.push_back(-w);
  }
  plan.rel_tol = cfg.rel_tol;
  // the window integral is dimensionless with O(1e-3..1) values; near the
  // critical regulator it crosses zero, so a pure relative target is
  // unreachable and a floor far below any O(1/alpha) residual is applied
  plan.abs_tol = std::max(cfg.abs_tol, 1e-14);
  return integrate_1d(integrand, plan).value;
}

namespace {

double weighted_c_sq_sum(const QuantumState& s) {
  double sum = 0.0;
  for (const NodeInfo& node : nodes(s))
    sum += node.weight * node.slope_coeff * node.slope_coeff;
  return sum;
}

double min_node_spacing(const QuantumState& s) {
  const auto list = nodes(s);
  double spacing = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < list.size(); ++i)
    spacing = std::min(spacing, list[i].position - list[i - 1].position);
  return spacing;
}

}  // namespace

NodePrediction node_shift_prediction(const QuantumState& s, const NonlinearityParams& params) {
  const auto list = nodes(s);
  if (list.empty())
    throw std::invalid_argument("node_shift_prediction: state has no nodes");
  NodePrediction out;
  out.sum_c_sq = weighted_c_sq_sum(s);
  out.j_value = j_closed(params.eta);
  const double hbar2 = s.units.hbar * s.units.hbar;
  const double eta4 = std::pow(params.eta, 4);
  out.predicted_shift = hbar2 * std::abs(params.L) / (4.0 * s.units.mass * eta4) *
                        out.j_value * out.sum_c_sq;
  // equivalent grouping: (hbar^2 |L| pi / 6 m) sqrt(eta(1-eta)) (1 - 4 eta) sum C^2
  const double alt = hbar2 * std::abs(params.L) * kPi / (6.0 * s.units.mass) *
                     std::sqrt(params.eta * (1.0 - params.eta)) *
                     (1.0 - 4.0 * params.eta) * out.sum_c_sq;
  const double scale = std::max(std::abs(out.predicted_shift), std::abs(alt));
  if (std::abs(out.predicted_shift - alt) > 1e-12 * std::max(scale, 1e-300))
    throw NumericalError("node_shift_prediction: prefactor groupings disagree");
  out.predicted_shift_dimensionless = delta_e_dimensionless(out.predicted_shift, s);
  return out;
}

double sho_cnp_sum(int n, double a) {
  if (n < 1) throw std::invalid_argument("sho_cnp_sum: requires n >= 1");
  // C_np^2 = 2 n hermite_function(n-1, z_p)^2 / a^3 at each root of H_n
  double sum = 0.0;
  for (double z : hermite_roots(n)) {
    const double h = hermite_function(n - 1, z).value;
    sum += 2.0 * n * h * h;
  }
  return sum / (a * a * a);
}

double sho_ground_closed(double eta, double L, double a) {
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("sho_ground_closed: eta out of range (0,1)");
  const double r = L / a;
  return eta * eta * (1.0 - eta) * (1.0 - 3.0 * eta) / 4.0 * r * r;
}

namespace {

// fourth-order density expansion of the shift integrand; the 1/96 constant is
// fixed by matching the oscillator ground-state closed form and checked
// against a second nodeless density in the tests
double formal_integrand(const Density1D& d, double eta) {
  const double p = d.p;
  const double p1 = d.d1, p2 = d.d2, p3 = d.d3, p4 = d.d4;
  const double a1 = 2.0 - 3.0 * eta;
  const double a2 = 3.0 - 8.0 * eta + 6.0 * eta * eta;
  const double bracket = 6.0 * a1 * a1 * p1 * p1 * p1 * p1 -
                         12.0 * a2 * p * p1 * p1 * p2 + 4.0 * p * p * p1 * p3 +
                         p * p * (3.0 * p2 * p2 - 2.0 * p * p4);
  return bracket / (p * p * p);
}

}  // namespace

double formal_l2_shift_density(const DensityProbe1D& probe, double lo, double hi,
                               const NonlinearityParams& params, const Units& units,
                               const RunConfig& cfg) {
  IntegrationPlan1D plan;
  plan.lo = lo;
  plan.hi = hi;
  plan.rel_tol = cfg.rel_tol;
  plan.abs_tol = cfg.abs_tol;
  auto f = [&](double x) { return formal_integrand(probe(x), params.eta); };
  const IntegralResult r = integrate_1d(f, plan);
  return units.hbar * units.hbar * params.L * params.L * params.eta * params.eta /
         (96.0 * units.mass) * r.value;
}

double formal_l2_shift(const QuantumState& s, const NonlinearityParams& params,
                       const RunConfig& cfg) {
  if (!nodes(s).empty())
    throw std::invalid_argument("formal_l2_shift: expansion is singular for states with nodes");
  const auto [lo, hi] = domain_1d(s, cfg.tail_cutoff);
  DensityProbe1D probe = [&s](double x) { return density_1d(s, x); };
  return formal_l2_shift_density(probe, lo, hi, params, s.units, cfg);
}

NodeRegionShift node_region_shift(const QuantumState& s, const NonlinearityParams& params,
                                  double alpha, const RunConfig& cfg) {
  const auto list = nodes(s);
  if (list.empty())
    throw std::invalid_argument("node_region_shift: state has no nodes");
  if (!(alpha > 0.0)) throw std::invalid_argument("node_region_shift: alpha must be > 0");
  const double spacing = min_node_spacing(s);
  if (list.size() > 1 && alpha * std::abs(params.L) >= 0.5 * spacing)
    throw std::invalid_argument("node_region_shift: alpha |L| exceeds half the node spacing");
  NodeRegionShift out;
  out.spacing_ok = !(list.size() > 1) || spacing > 10.0 * params.eta * std::abs(params.L);
  const double hbar2 = s.units.hbar * s.units.hbar;
  const double eta4 = std::pow(params.eta, 4);
  out.value = hbar2 * std::abs(params.L) / (4.0 * s.units.mass * eta4) *
              j_integral(params.eta, alpha, cfg) * weighted_c_sq_sum(s);
  return out;
}

}  // namespace nlshift
