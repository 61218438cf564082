// Command-line front end: single shifts, parameter scans, power-law fits,
// critical-regulator location, and the data behind the three standard plots.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "nlshift/analytics.hpp"
#include "nlshift/perturbation.hpp"
#include "nlshift/records.hpp"

namespace {

using namespace nlshift;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
  std::optional<std::string> config_path;
  std::optional<double> rel_tol;
  std::optional<double> abs_tol;
  std::optional<std::uint64_t> mc_samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> tail_cutoff;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "key=value run-config file");
  cmd->add_option("--rel-tol", opts.rel_tol, "relative quadrature tolerance");
  cmd->add_option("--abs-tol", opts.abs_tol, "absolute quadrature tolerance");
  cmd->add_option("--mc-samples", opts.mc_samples, "Monte Carlo samples");
  cmd->add_option("--seed", opts.seed, "RNG seed");
  cmd->add_option("--tail-cutoff", opts.tail_cutoff, "density fraction for domain truncation");
}

RunConfig resolve_config(const CommonOpts& opts) {
  RunConfig cfg;
  if (opts.config_path) cfg = load_run_config(*opts.config_path);
  if (opts.rel_tol) cfg.rel_tol = *opts.rel_tol;
  if (opts.abs_tol) cfg.abs_tol = *opts.abs_tol;
  if (opts.mc_samples) cfg.mc_samples = *opts.mc_samples;
  if (opts.seed) cfg.rng_seed = *opts.seed;
  if (opts.tail_cutoff) cfg.tail_cutoff = *opts.tail_cutoff;
  cfg.validate();
  return cfg;
}

QuantumState make_state(const std::string& system, int n, int l, int m, double a) {
  switch (system_from_string(system)) {
    case System::InfiniteWell: return QuantumState::well(n, a);
    case System::SHO: return QuantumState::sho(n, a);
    case System::Hydrogen: return QuantumState::hydrogen(n, l, m, a);
  }
  throw std::invalid_argument("unknown system");
}

struct ShiftArgs {
  std::string system;
  int n = 1, l = 0, m = 0;
  double a = 1000.0, L = 1.0, eta = 0.5;
  std::string nonlinearity = "info";
  double g = 1.0, eps = 1e-3;
  std::string sampler = "metropolis_on_p";
  bool json = false;
  CommonOpts common;
};

McSampler sampler_from_string(const std::string& name) {
  if (name == "metropolis_on_p") return McSampler::metropolis_on_p;
  if (name == "stratified_box") return McSampler::stratified_box;
  if (name == "radial_lines") return McSampler::radial_lines;
  throw std::invalid_argument("unknown sampler: " + name);
}

int run_shift(const ShiftArgs& args) {
  const RunConfig cfg = resolve_config(args.common);
  const QuantumState state = make_state(args.system, args.n, args.l, args.m, args.a);

  ScanRow row;
  row.system = state.system;
  row.n = args.n;
  row.l = args.l;
  row.m = args.m;
  row.a = args.a;
  row.L = args.L;
  row.eta = args.eta;
  row.kind = nonlinearity_from_string(args.nonlinearity);
  row.seed = cfg.rng_seed;

  switch (row.kind) {
    case NonlinearityKind::info_theoretic: {
      NonlinearityParams p{args.L, args.eta, state.system == System::Hydrogen ? 3 : 1};
      const CheckedParams checked = validate_params(p, args.a);
      if (checked.perturbative_warning)
        std::cerr << "warning: |L|/a = " << checked.ratio
                  << " is outside the trusted perturbative window (> 1e-2)\n";
      row.result = delta_e(state, p, cfg, sampler_from_string(args.sampler));
      break;
    }
    case NonlinearityKind::gross_pitaevskii:
      row.result = delta_e_gp(state, args.g, cfg);
      break;
    case NonlinearityKind::pseudo:
      row.result = delta_e_pseudo(state, args.eps, cfg);
      break;
  }

  if (args.json) {
    std::cout << json_row(row) << "\n";
  } else {
    std::cout << kCsvHeader << "\n" << csv_row(row) << "\n";
  }
  return kExitOk;
}

struct ScanArgs {
  std::string system;
  int n_lo = 1, n_hi = 1;
  int l = 0, m = 0;
  double a_lo = 1000.0, a_hi = 1000.0;
  int a_points = 1;
  double L = 1.0, eta = 0.5;
  std::string nonlinearity = "info";
  double g = 1.0, eps = 1e-3;
  std::string sampler = "metropolis_on_p";
  CommonOpts common;
};

int run_scan(const ScanArgs& args) {
  const RunConfig cfg = resolve_config(args.common);
  ScanSpec spec;
  spec.system = system_from_string(args.system);
  if (args.n_hi < args.n_lo) throw std::invalid_argument("scan: n range is empty");
  for (int n = args.n_lo; n <= args.n_hi; ++n) spec.n_values.push_back(n);
  spec.l = args.l;
  spec.m = args.m;
  spec.a_values = args.a_points <= 1 ? std::vector<double>{args.a_lo}
                                     : geometric_grid(args.a_lo, args.a_hi, args.a_points);
  spec.L = args.L;
  spec.eta = args.eta;
  spec.kind = nonlinearity_from_string(args.nonlinearity);
  spec.g = args.g;
  spec.eps = args.eps;
  spec.sampler = sampler_from_string(args.sampler);

  const auto rows = scan(spec, cfg);
  std::cout << kCsvHeader << "\n";
  std::size_t failures = 0;
  for (const auto& row : rows) {
    std::cout << csv_row(row) << "\n";
    if (row.status != "ok") ++failures;
  }
  if (failures == rows.size())
    throw NumericalError("scan: every row failed");
  return kExitOk;
}

struct FitArgs {
  std::string csv_path;
  std::string x_col = "a";
  std::string y_col = "delta_e_dimless";
  bool weighted = false;
};

int run_fit(const FitArgs& args) {
  std::ifstream in(args.csv_path);
  if (!in) throw std::invalid_argument("cannot open csv: " + args.csv_path);
  const CsvTable table = read_csv(in);
  const std::size_t xi = table.column(args.x_col);
  const std::size_t yi = table.column(args.y_col);
  std::size_t si = table.header.size();
  try {
    si = table.column("status");
  } catch (const std::invalid_argument&) {
  }
  std::size_t wi = table.header.size();
  if (args.weighted) {
    try {
      wi = table.column("err");
    } catch (const std::invalid_argument&) {
    }
  }
  std::vector<FitPoint> pts;
  for (const auto& row : table.rows) {
    if (si < row.size() && row[si] != "ok") continue;
    FitPoint pt;
    pt.x = std::stod(row[xi]);
    pt.y = std::stod(row[yi]);
    if (wi < row.size()) {
      const double err = std::stod(row[wi]);
      if (err > 0.0 && pt.y != 0.0) pt.w = (pt.y * pt.y) / (err * err);
    }
    pts.push_back(pt);
  }
  std::cout << json_fit(power_law_fit(pts, args.weighted)) << "\n";
  return kExitOk;
}

struct CriticalArgs {
  std::string system;
  int n = 2;
  double a = 2000.0, L = 1.0;
  CommonOpts common;
};

int run_critical_eta(const CriticalArgs& args) {
  const RunConfig cfg = resolve_config(args.common);
  const QuantumState state = make_state(args.system, args.n, 0, 0, args.a);
  const CriticalEtaResult r = critical_eta(state, args.L, cfg);
  std::cout << "{\"eta_c\":" << format_g17(r.eta_c) << ",\"bracket_lo\":"
            << format_g17(r.bracket_lo) << ",\"bracket_hi\":" << format_g17(r.bracket_hi)
            << ",\"kind\":\"" << (r.nodeless_zero ? "nodeless-ground-state-zero" : "node-zero")
            << "\",\"system\":\"" << to_string(state.system) << "\",\"n\":" << args.n
            << ",\"a\":" << format_g17(args.a) << ",\"L\":" << format_g17(args.L) << "}\n";
  return kExitOk;
}

struct FigureArgs {
  int which = 1;
  CommonOpts common;
};

int run_figure(const FigureArgs& args) {
  RunConfig cfg = resolve_config(args.common);
  switch (args.which) {
    case 1: {
      // |dimensionless shift| vs a for the well ground state
      cfg.rel_tol = std::min(cfg.rel_tol, 1e-10);
      ScanSpec spec;
      spec.system = System::InfiniteWell;
      spec.n_values = {1};
      spec.a_values = geometric_grid(1000.0, 10000.0, 25);
      const auto rows = scan(spec, cfg);
      std::cout << "a,delta_e_dimless,err,ln_a,ln_abs_delta_e_dimless\n";
      for (const auto& row : rows) {
        if (row.status != "ok") continue;
        std::cout << format_g17(row.a) << ',' << format_g17(row.result.delta_e_dimensionless)
                  << ',' << format_g17(row.result.err_estimate) << ','
                  << format_g17(std::log(row.a)) << ','
                  << format_g17(std::log(std::abs(row.result.delta_e_dimensionless))) << "\n";
      }
      return kExitOk;
    }
    case 2: {
      // |dimensionless shift| vs n for the oscillator at a = 1000
      cfg.rel_tol = std::min(cfg.rel_tol, 1e-10);
      ScanSpec spec;
      spec.system = System::SHO;
      for (int n = 1; n <= 18; ++n) spec.n_values.push_back(n);
      spec.a_values = {1000.0};
      const auto rows = scan(spec, cfg);
      std::cout << "n,delta_e_dimless,err,ln_n,ln_abs_delta_e_dimless\n";
      for (const auto& row : rows) {
        if (row.status != "ok") continue;
        std::cout << row.n << ',' << format_g17(row.result.delta_e_dimensionless) << ','
                  << format_g17(row.result.err_estimate) << ','
                  << format_g17(std::log(static_cast<double>(row.n))) << ','
                  << format_g17(std::log(std::abs(row.result.delta_e_dimensionless))) << "\n";
      }
      return kExitOk;
    }
    case 3: {
      // hydrogen |delta_e / E_n| vs n for l = 0 at several a; Monte Carlo
      if (!args.common.mc_samples)
        throw std::invalid_argument("figure 3 is long-running; pass --mc-samples explicitly");
      std::cout << "n,a,delta_e,err,abs_ratio_to_e0\n";
      for (int n = 2; n <= 3; ++n) {
        for (double a : {5.0, 10.0, 20.0}) {
          const QuantumState state = QuantumState::hydrogen(n, 0, 0, a);
          NonlinearityParams p{1.0, 0.5, 3};
          RunConfig row_cfg = cfg;
          row_cfg.rng_seed = derive_seed(cfg.rng_seed, static_cast<std::uint64_t>(n * 100 + a));
          const ShiftResult r = delta_e(state, p, row_cfg, McSampler::radial_lines);
          std::cout << n << ',' << format_g17(a) << ',' << format_g17(r.delta_e) << ','
                    << format_g17(r.err_estimate) << ','
                    << format_g17(std::abs(r.delta_e / unperturbed_energy(state))) << "\n";
        }
      }
      return kExitOk;
    }
    default:
      throw std::invalid_argument("figure index must be 1, 2 or 3");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"first-order energy shifts of a regularized nonlinear quantum potential"};
  app.require_subcommand(1);

  ShiftArgs shift_args;
  CLI::App* shift_cmd = app.add_subcommand("shift", "single shift evaluation");
  shift_cmd->add_option("system", shift_args.system, "well | sho | hydrogen")->required();
  shift_cmd->add_option("--n", shift_args.n, "principal quantum number")->required();
  shift_cmd->add_option("--l", shift_args.l, "orbital quantum number (hydrogen)");
  shift_cmd->add_option("--m", shift_args.m, "magnetic quantum number (hydrogen)");
  shift_cmd->add_option("--a", shift_args.a, "length scale")->required();
  shift_cmd->add_option("--L", shift_args.L, "nonlinearity scale (signed)");
  shift_cmd->add_option("--eta", shift_args.eta, "regulator in (0,1)");
  shift_cmd->add_option("--nonlinearity", shift_args.nonlinearity, "info | gp | pseudo");
  shift_cmd->add_option("--g", shift_args.g, "gp coupling");
  shift_cmd->add_option("--eps", shift_args.eps, "pseudo coupling");
  shift_cmd->add_option("--sampler", shift_args.sampler,
                        "metropolis_on_p | stratified_box | radial_lines");
  shift_cmd->add_flag("--json", shift_args.json, "emit a JSON object instead of CSV");
  add_common(shift_cmd, shift_args.common);

  ScanArgs scan_args;
  CLI::App* scan_cmd = app.add_subcommand("scan", "grid scan, CSV stream to stdout");
  scan_cmd->add_option("system", scan_args.system, "well | sho | hydrogen")->required();
  scan_cmd->add_option("--n-lo", scan_args.n_lo)->required();
  scan_cmd->add_option("--n-hi", scan_args.n_hi)->required();
  scan_cmd->add_option("--l", scan_args.l);
  scan_cmd->add_option("--m", scan_args.m);
  scan_cmd->add_option("--a-lo", scan_args.a_lo)->required();
  scan_cmd->add_option("--a-hi", scan_args.a_hi);
  scan_cmd->add_option("--a-points", scan_args.a_points, "geometric grid size");
  scan_cmd->add_option("--L", scan_args.L);
  scan_cmd->add_option("--eta", scan_args.eta);
  scan_cmd->add_option("--nonlinearity", scan_args.nonlinearity);
  scan_cmd->add_option("--g", scan_args.g);
  scan_cmd->add_option("--eps", scan_args.eps);
  scan_cmd->add_option("--sampler", scan_args.sampler);
  add_common(scan_cmd, scan_args.common);

  FitArgs fit_args;
  CLI::App* fit_cmd = app.add_subcommand("fit", "power-law fit of a scan CSV");
  fit_cmd->add_option("csv", fit_args.csv_path, "scan output")->required();
  fit_cmd->add_option("--x-col", fit_args.x_col);
  fit_cmd->add_option("--y-col", fit_args.y_col);
  fit_cmd->add_flag("--weighted", fit_args.weighted, "weight points by 1/err^2");

  CriticalArgs crit_args;
  CLI::App* crit_cmd = app.add_subcommand("critical-eta", "locate the shift zero in eta");
  crit_cmd->add_option("system", crit_args.system, "well | sho")->required();
  crit_cmd->add_option("--n", crit_args.n)->required();
  crit_cmd->add_option("--a", crit_args.a)->required();
  crit_cmd->add_option("--L", crit_args.L);
  add_common(crit_cmd, crit_args.common);

  FigureArgs fig_args;
  CLI::App* fig_cmd = app.add_subcommand("figure", "emit plot-point CSV (1, 2 or 3)");
  fig_cmd->add_option("which", fig_args.which, "figure index")->required();
  add_common(fig_cmd, fig_args.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*shift_cmd) return run_shift(shift_args);
    if (*scan_cmd) return run_scan(scan_args);
    if (*fit_cmd) return run_fit(fit_args);
    if (*crit_cmd) return run_critical_eta(crit_args);
    if (*fig_cmd) return run_figure(fig_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
