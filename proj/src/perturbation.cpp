#include "nlshift/perturbation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "nlshift/nonlinearity.hpp"

namespace nlshift {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double delta_e_dimensionless(double raw, const QuantumState& s) {
  const double hbar2 = s.units.hbar * s.units.hbar;
  switch (s.system) {
    case System::InfiniteWell:
      return raw / (hbar2 * kPi * kPi / (2.0 * s.units.mass * s.a * s.a));
    case System::SHO:
      // delta_E / (hbar omega) with omega = hbar/(m a^2)
      return raw * s.units.mass * s.a * s.a / hbar2;
    case System::Hydrogen:
      return raw * 2.0 * s.units.mass * s.a * s.a / hbar2;
  }
  throw std::invalid_argument("delta_e_dimensionless: unknown system");
}

namespace {

// Breakpoints for the 1D shift integrand: every node and every point whose
// shifted image hits a node (the shifted densities kink there).
IntegrationPlan1D shift_plan_1d(const QuantumState& s, const NonlinearityParams& params,
                                const RunConfig& cfg) {
  IntegrationPlan1D plan;
  const auto [lo, hi] = domain_1d(s, cfg.tail_cutoff);
  plan.lo = lo;
  plan.hi = hi;
  plan.rel_tol = cfg.rel_tol;
  plan.abs_tol = cfg.abs_tol;
  const double shift = std::abs(params.eta * params.L);
  for (const NodeInfo& node : nodes(s)) {
    plan.breakpoints.push_back(node.position);
    plan.breakpoints.push_back(node.position + shift);
    plan.breakpoints.push_back(node.position - shift);
  }
  return plan;
}

ShiftResult delta_e_1d(const QuantumState& s, const NonlinearityParams& params,
                       const RunConfig& cfg) {
  const IntegrationPlan1D plan = shift_plan_1d(s, params, cfg);
  const double shift = params.eta * params.L;
  auto integrand = [&](double x) {
    return p_q_nl_1d(density_ld(s, x), density_for_shifts_ld(s, x + shift),
                     density_for_shifts_ld(s, x - shift), params, s.units);
  };
  const IntegralResult pqnl = integrate_1d(integrand, plan);
  ShiftResult out;
  out.delta_e = pqnl.value - kinetic_expectation(s);
  out.delta_e_dimensionless = delta_e_dimensionless(out.delta_e, s);
  out.err_estimate = pqnl.err_estimate;
  out.method = ShiftMethod::quadrature;
  out.evaluations = pqnl.evaluations;
  return out;
}

ShiftResult delta_e_3d(const QuantumState& s, const NonlinearityParams& params,
                       const RunConfig& cfg, McSampler sampler) {
  const MCPlan3D plan = default_mc_plan(s, params, cfg, sampler);
  const Field3D p = density_field(s);
  const double h = s.a / 1000.0;
  Field3D f = [&, p](const std::array<double, 3>& x) {
    return f_nonlinear_3d(p, x, params, s.units, h);
  };
  const McResult mc = mc_expectation(f, p, plan);
  if (mc.autocorr_warning &&
      mc.std_error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(mc.value)))
    throw NumericalError("delta_e: Monte Carlo autocorrelation too large for the requested tolerance");
  ShiftResult out;
  out.delta_e = mc.value;
  out.delta_e_dimensionless = delta_e_dimensionless(out.delta_e, s);
  out.err_estimate = mc.std_error;
  out.method = ShiftMethod::monte_carlo;
  out.evaluations = mc.evaluations;
  return out;
}

}  // namespace

ShiftResult delta_e(const QuantumState& s, const NonlinearityParams& params,
                    const RunConfig& cfg, McSampler sampler) {
  cfg.validate();
  validate_params(params, s.a);
  if (s.system == System::Hydrogen) {
    if (params.dims != 3)
      throw std::invalid_argument("delta_e: hydrogen requires dims == 3");
    return delta_e_3d(s, params, cfg, sampler);
  }
  if (params.dims != 1)
    throw std::invalid_argument("delta_e: 1D states require dims == 1");
  return delta_e_1d(s, params, cfg);
}

CriticalEtaResult critical_eta(const QuantumState& s, double L, const RunConfig& cfg) {
  if (s.system == System::Hydrogen)
    throw std::invalid_argument("critical_eta: 1D states only");
  CriticalEtaResult out;
  out.nodeless_zero = nodes(s).empty();

  auto shift_at = [&](double eta) {
    NonlinearityParams p{L, eta, 1};
    const ShiftResult r = delta_e(s, p, cfg);
    out.evaluations += r.evaluations;
    return r.delta_e;
  };

  double lo = 0.05, hi = 0.95;
  double flo = shift_at(lo), fhi = shift_at(hi);
  if (flo == 0.0) { out.eta_c = lo; out.bracket_lo = out.bracket_hi = lo; return out; }
  if (fhi == 0.0) { out.eta_c = hi; out.bracket_lo = out.bracket_hi = hi; return out; }
  if (flo * fhi > 0.0)
    throw NumericalError("critical_eta: shift does not change sign over [0.05, 0.95]");
  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    const double fm = shift_at(mid);
    if (fm == 0.0) { lo = hi = mid; break; }
    if (flo * fm < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  out.eta_c = 0.5 * (lo + hi);
  return out;
}

ShiftResult delta_e_gp(const QuantumState& s, double g, const RunConfig& cfg) {
  cfg.validate();
  if (s.system == System::Hydrogen)
    throw std::invalid_argument("delta_e_gp: 1D states only");
  IntegrationPlan1D plan;
  const auto [lo, hi] = domain_1d(s, cfg.tail_cutoff);
  plan.lo = lo;
  plan.hi = hi;
  plan.rel_tol = cfg.rel_tol;
  plan.abs_tol = cfg.abs_tol;
  auto integrand = [&](double x) {
    const double p = density_1d(s, x).p;
    return p * gp_term(p, g);
  };
  const IntegralResult r = integrate_1d(integrand, plan);
  ShiftResult out;
  out.delta_e = r.value;
  out.delta_e_dimensionless = delta_e_dimensionless(r.value, s);
  out.err_estimate = r.err_estimate;
  out.method = ShiftMethod::quadrature;
  out.evaluations = r.evaluations;
  return out;
}

ShiftResult delta_e_pseudo(const QuantumState& s, double eps, const RunConfig& cfg,
                           bool cross_check) {
  cfg.validate();
  if (s.system == System::Hydrogen)
    throw std::invalid_argument("delta_e_pseudo: 1D states only");
  ShiftResult out;
  out.delta_e = eps * kinetic_expectation(s);
  out.delta_e_dimensionless = delta_e_dimensionless(out.delta_e, s);
  out.err_estimate = 0.0;
  out.method = ShiftMethod::closed_form;
  out.evaluations = 0;

  if (cross_check && eps != 0.0) {
    // integrated-by-parts route: (eps hbar^2 / 2m) * integral (d sqrt(p)/dx)^2,
    // with the removable node value C_np^2 supplied near nodes
    const auto node_list = nodes(s);
    IntegrationPlan1D plan;
    const auto [lo, hi] = domain_1d(s, cfg.tail_cutoff);
    plan.lo = lo;
    plan.hi = hi;
    plan.rel_tol = std::max(cfg.rel_tol, 1e-12);
    plan.abs_tol = cfg.abs_tol;
    for (const NodeInfo& node : node_list) plan.breakpoints.push_back(node.position);
    auto integrand = [&](double x) {
      const Density1D d = density_1d(s, x);
      if (d.p > 1e-280) return d.d1 * d.d1 / (4.0 * d.p);
      double c2 = 0.0;  // nearest-node slope squared
      double best = std::numeric_limits<double>::max();
      for (const NodeInfo& node : node_list) {
        const double dist = std::abs(x - node.position);
        if (dist < best) {
          best = dist;
          c2 = node.slope_coeff * node.slope_coeff;
        }
      }
      return c2;
    };
    const IntegralResult r = integrate_1d(integrand, plan);
    const double quad = eps * s.units.hbar * s.units.hbar / (2.0 * s.units.mass) * r.value;
    out.err_estimate = std::abs(quad - out.delta_e);
    out.evaluations = r.evaluations;
  }
  return out;
}

const char* to_string(NonlinearityKind k) {
  switch (k) {
    case NonlinearityKind::info_theoretic: return "info";
    case NonlinearityKind::gross_pitaevskii: return "gp";
    case NonlinearityKind::pseudo: return "pseudo";
  }
  return "unknown";
}

NonlinearityKind nonlinearity_from_string(const std::string& name) {
  if (name == "info") return NonlinearityKind::info_theoretic;
  if (name == "gp") return NonlinearityKind::gross_pitaevskii;
  if (name == "pseudo") return NonlinearityKind::pseudo;
  throw std::invalid_argument("unknown nonlinearity: " + name);
}

std::vector<double> geometric_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("geometric_grid: need 0 < lo < hi");
  if (points < 1) throw std::invalid_argument("geometric_grid: need at least one point");
  std::vector<double> out;
  if (points == 1) return {lo};
  const double ratio = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) out.push_back(lo * std::exp(ratio * i));
  out.back() = hi;
  return out;
}

MCPlan3D default_mc_plan(const QuantumState& s, const NonlinearityParams& params,
                         const RunConfig& cfg, McSampler sampler) {
  MCPlan3D plan;
  plan.sampler = sampler;
  plan.n_samples = cfg.mc_samples;
  plan.burn_in = 10000;
  plan.proposal_scale = s.n * s.a;
  plan.seed = cfg.rng_seed;
  plan.start = {0.6 * s.n, 0.4 * s.n, 0.3 * s.n};  // times proposal_scale = n a
  plan.box_halfwidth = 2.0 * s.a * s.n * (s.n + 6.0);
  plan.r_max = 25.0 * s.n * s.a;
  plan.shell_radii = hydrogen_radial_node_radii(s);
  plan.shift_deltas = {std::abs(params.eta * params.L)};
  // one ray integral is a small fraction of <T>; bound the effort spent on
  // near-zero rays by anchoring the absolute tolerance to that scale
  plan.radial_abs_tol = 1e-9 * kinetic_expectation(s);
  return plan;
}

std::vector<ScanRow> scan(const ScanSpec& spec, const RunConfig& cfg) {
  cfg.validate();
  if (spec.n_values.empty() || spec.a_values.empty())
    throw std::invalid_argument("scan: empty grid");
  for (std::size_t i = 1; i < spec.a_values.size(); ++i)
    if (!(spec.a_values[i] > spec.a_values[i - 1]))
      throw std::invalid_argument("scan: a grid must be strictly increasing");

  std::vector<ScanRow> rows;
  for (int n : spec.n_values) {
    for (double a : spec.a_values) {
      ScanRow row;
      row.index = rows.size();
      row.system = spec.system;
      row.n = n;
      row.l = spec.l;
      row.m = spec.m;
      row.a = a;
      row.L = spec.L;
      row.eta = spec.eta;
      row.kind = spec.kind;
      row.seed = derive_seed(cfg.rng_seed, row.index);
      rows.push_back(row);
    }
  }

  auto eval_row = [&](ScanRow& row) {
    try {
      QuantumState state;
      switch (spec.system) {
        case System::InfiniteWell: state = QuantumState::well(row.n, row.a); break;
        case System::SHO: state = QuantumState::sho(row.n, row.a); break;
        case System::Hydrogen: state = QuantumState::hydrogen(row.n, row.l, row.m, row.a); break;
      }
      RunConfig row_cfg = cfg;
      row_cfg.rng_seed = row.seed;
      switch (spec.kind) {
        case NonlinearityKind::info_theoretic: {
          NonlinearityParams p{spec.L, spec.eta, spec.system == System::Hydrogen ? 3 : 1};
          row.result = delta_e(state, p, row_cfg, spec.sampler);
          break;
        }
        case NonlinearityKind::gross_pitaevskii:
          row.result = delta_e_gp(state, spec.g, row_cfg);
          break;
        case NonlinearityKind::pseudo:
          row.result = delta_e_pseudo(state, spec.eps, row_cfg);
          break;
      }
      row.status = "ok";
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
    }
  };

  const unsigned workers = std::min<std::size_t>(worker_count(), rows.size());
  if (workers <= 1) {
    for (ScanRow& row : rows) eval_row(row);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1))
          eval_row(rows[i]);
      });
    for (auto& t : pool) t.join();
  }
  return rows;
}

}  // namespace nlshift
