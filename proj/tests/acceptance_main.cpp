// Acceptance suite: one pass/fail line per criterion, each pinned to its
// stated tolerance.  Criterion 8 (hydrogen Monte Carlo) is the slow suite;
// skip it with --fast or select a single criterion with --only N.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "nlshift/analytics.hpp"
#include "nlshift/fitting.hpp"
#include "nlshift/perturbation.hpp"
#include "nlshift/quadrature.hpp"

using namespace nlshift;

namespace {

int g_failures = 0;

void report(int criterion, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s  (%s)\n", ok ? "PASS" : "FAIL", criterion, name,
              detail.c_str());
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

bool in_range(double v, double lo, double hi) { return v >= lo && v <= hi; }

// ---------------------------------------------------------------- criterion 1
void criterion1() {
  RunConfig cfg;
  cfg.rel_tol = 1e-10;
  const std::vector<int> ns = {1, 2, 3, 5, 8, 12, 20, 30, 50};
  const std::vector<double> as = {1000.0, 3000.0, 10000.0};
  std::vector<FitPoint> vs_n, vs_a;
  for (int n : ns) {
    for (double a : as) {
      const ShiftResult r = delta_e(QuantumState::well(n, a), {1.0, 0.5, 1}, cfg);
      const double y = r.delta_e_dimensionless;
      vs_n.push_back({static_cast<double>(n), y * a});
      vs_a.push_back({a, y / (static_cast<double>(n) * n * n)});
    }
  }
  const FitResult fn = power_law_fit(vs_n);
  const FitResult fa = power_law_fit(vs_a);
  const bool ok = std::abs(fn.exponent - 3.0) <= 0.05 &&
                  std::abs(fa.exponent + 1.0) <= 0.02 &&
                  in_range(fn.coefficient, 0.99, 1.07) &&
                  in_range(fa.coefficient, 0.99, 1.07) && fn.sign == -1;
  report(1, "infinite-well law", ok,
         fmt("n-exponent %.4f (3.00+-0.05), a-exponent %.4f (-1.00+-0.02), "
             "coefficients %.4f / %.4f (0.99..1.07)",
             fn.exponent, fa.exponent, fn.coefficient, fa.coefficient));
}

// ---------------------------------------------------------------- criterion 2
void criterion2() {
  RunConfig cfg;
  cfg.rel_tol = 1e-13;
  bool ok = true;
  double worst = 0.0;
  for (double a : {100.0, 300.0, 1000.0}) {
    for (double eta : {0.2, 1.0 / 3.0, 0.5, 0.8}) {
      const ShiftResult r = delta_e(QuantumState::sho(0, a), {1.0, eta, 1}, cfg);
      const double pred = sho_ground_closed(eta, 1.0, a);
      const double err = std::abs(r.delta_e_dimensionless - pred);
      const double tol = std::max(0.02 * std::abs(pred), 1e-10);
      worst = std::max(worst, err / tol);
      if (err > tol) ok = false;
    }
  }
  report(2, "oscillator ground-state closed form", ok,
         fmt("worst |direct - closed|/tolerance = %.3f over a in {100,300,1000}, "
             "eta in {0.2, 1/3, 0.5, 0.8}",
             worst));
}

// ---------------------------------------------------------------- criterion 3
void criterion3() {
  RunConfig cfg;
  cfg.rel_tol = 1e-11;
  std::vector<FitPoint> direct;
  for (int n = 1; n <= 18; ++n)
    for (double a : {100.0, 300.0, 1000.0}) {
      const ShiftResult r = delta_e(QuantumState::sho(n, a), {1.0, 0.5, 1}, cfg);
      direct.push_back({static_cast<double>(n), r.delta_e_dimensionless * a});
    }
  const FitResult fd = power_law_fit(direct);

  std::vector<FitPoint> semi;
  for (int n = 1; n <= 23; ++n)
    semi.push_back({static_cast<double>(n), 4.0 * j_closed(0.5) * sho_cnp_sum(n, 1.0)});
  const FitResult fs = power_law_fit(semi);

  const bool ok = std::abs(fd.exponent - 1.41) <= 0.06 &&
                  std::abs(fd.coefficient - 0.26) <= 0.03 &&
                  std::abs(fs.exponent - 1.40) <= 0.03 &&
                  std::abs(fs.coefficient - 0.27) <= 0.02 && fd.sign == -1 &&
                  fs.sign == -1;
  report(3, "oscillator excited fits", ok,
         fmt("direct %.4f / %.4f (1.41+-0.06, 0.26+-0.03); semi-analytic %.4f / %.4f "
             "(1.40+-0.03, 0.27+-0.02)",
             fd.exponent, fd.coefficient, fs.exponent, fs.coefficient));
}

// ---------------------------------------------------------------- criterion 4
void criterion4() {
  RunConfig cfg;
  cfg.rel_tol = 1e-10;
  bool ok = true;
  std::string detail;
  auto check = [&](const QuantumState& s, const char* label) {
    const CriticalEtaResult r = critical_eta(s, 1.0, cfg);
    if (!(r.eta_c >= 0.24 && r.eta_c <= 0.26)) ok = false;
    detail += fmt("%s=%.4f ", label, r.eta_c);
  };
  check(QuantumState::well(2, 2000.0), "well2");
  check(QuantumState::well(5, 2000.0), "well5");
  check(QuantumState::sho(1, 2000.0), "sho1");
  check(QuantumState::sho(3, 2000.0), "sho3");
  const bool jzero = (j_closed(0.25) == 0.0);
  if (!jzero) ok = false;
  report(4, "universal critical regulator", ok,
         detail + fmt("(all in [0.24,0.26]); J(1/4) == 0 exactly: %s", jzero ? "yes" : "no"));
}

// ---------------------------------------------------------------- criterion 5
void criterion5() {
  RunConfig cfg;
  cfg.rel_tol = 1e-12;
  bool ok = true;
  std::string detail;
  for (double eta : {0.15, 0.25, 0.5, 0.8}) {
    const double j1 = j_integral(eta, 1e4, cfg);
    const double j2 = j_integral(eta, 2e4, cfg);
    const double res = std::abs(j1 - j_closed(eta));
    const double diff = std::abs(j1 - j2);
    if (res > 10.0 * diff) ok = false;
    detail += fmt("eta=%.2f: res=%.2e <= 10*%.2e; ", eta, res, diff);
  }
  const double r1 = std::abs(j_integral(0.3, 1e3, cfg) - j_closed(0.3));
  const double r2 = std::abs(j_integral(0.3, 2e3, cfg) - j_closed(0.3));
  const bool halves = std::abs(r2 - 0.5 * r1) <= 0.25 * 0.5 * r1;
  if (!halves) ok = false;
  report(5, "window-integral asymptotics", ok,
         detail + fmt("doubling halves residual: %.3e -> %.3e", r1, r2));
}

// ---------------------------------------------------------------- criterion 6
void criterion6() {
  RunConfig cfg;
  cfg.rel_tol = 1e-10;
  double worst = 0.0;
  int cases = 0;
  auto pair = [&](const QuantumState& s, double eta) {
    const ShiftResult plus = delta_e(s, {1.0, eta, 1}, cfg);
    const ShiftResult minus = delta_e(s, {-1.0, eta, 1}, cfg);
    const double denom = std::max(plus.err_estimate, minus.err_estimate);
    worst = std::max(worst, std::abs(plus.delta_e - minus.delta_e) / denom);
    ++cases;
  };
  for (int n : {1, 2, 3, 5, 10})
    for (double a : {1000.0, 3000.0}) pair(QuantumState::well(n, a), 0.5);
  for (int n : {0, 1, 2, 5, 8})
    for (double a : {300.0, 1000.0}) pair(QuantumState::sho(n, a), 0.5);
  report(6, "parity in the nonlinearity scale", worst <= 2.0 && cases == 20,
         fmt("max |dE(L)-dE(-L)|/err over %d cases = %.3f (<= 2)", cases, worst));
}

// ---------------------------------------------------------------- criterion 7
void criterion7() {
  RunConfig cfg;
  cfg.rel_tol = 1e-12;
  bool ok = true;

  double worst_gp = 0.0;
  for (int n : {1, 3, 7})
    for (double a : {5.0, 50.0}) {
      const ShiftResult r = delta_e_gp(QuantumState::well(n, a), 2.0, cfg);
      worst_gp = std::max(worst_gp, std::abs(r.delta_e / (3.0 * 2.0 / (2.0 * a)) - 1.0));
    }
  if (worst_gp > 1e-10) ok = false;

  std::vector<FitPoint> pts;
  for (int n = 1; n <= 30; ++n)
    pts.push_back({static_cast<double>(n),
                   delta_e_gp(QuantumState::sho(n, 1.0), 1.0, cfg).delta_e});
  const FitResult gp_fit = power_law_fit(pts);
  if (std::abs(gp_fit.exponent + 0.31) > 0.03) ok = false;

  double worst_ps = 0.0;
  for (int n : {1, 5, 20}) {
    const QuantumState s = QuantumState::well(n, 11.0);
    const ShiftResult r = delta_e_pseudo(s, 1e-3, cfg);
    worst_ps = std::max(worst_ps, std::abs(r.delta_e / (1e-3 * unperturbed_energy(s)) - 1.0));
  }
  if (worst_ps > 1e-12) ok = false;

  report(7, "exactly solved comparisons", ok,
         fmt("gp well rel err %.1e (<=1e-10); gp oscillator exponent %.4f (-0.31+-0.03); "
             "pseudo well rel err %.1e (<=1e-12)",
             worst_gp, gp_fit.exponent, worst_ps));
}

// ---------------------------------------------------------------- criterion 8
void criterion8() {
  RunConfig cfg;
  cfg.mc_samples = 1000000;
  cfg.rng_seed = 20260811;
  bool ok = true;
  std::string detail;

  // shared seed per state family: the scaled chains reuse the same randomness,
  // so the slope estimate sees strongly correlated per-point noise
  auto slope = [&](int n, int l, int m, const std::vector<double>& as, McSampler sampler) {
    std::vector<FitPoint> pts;
    for (double a : as) {
      const ShiftResult r =
          delta_e(QuantumState::hydrogen(n, l, m, a), {1.0, 0.5, 3}, cfg, sampler);
      pts.push_back({a, r.delta_e_dimensionless});
    }
    return power_law_fit(pts);
  };

  const FitResult f100 = slope(1, 0, 0, {15.0, 30.0, 60.0}, McSampler::radial_lines);
  if (std::abs(f100.exponent + 2.0) > 0.15 || f100.sign != -1) ok = false;
  detail += fmt("(1,0,0) slope %.3f; ", f100.exponent);

  const FitResult f322 = slope(3, 2, 2, {20.0, 50.0, 125.0}, McSampler::radial_lines);
  if (std::abs(f322.exponent + 2.0) > 0.15 || f322.sign != -1) ok = false;
  detail += fmt("(3,2,2) slope %.3f; ", f322.exponent);

  const FitResult f200 = slope(2, 0, 0, {10.0, 20.0, 40.0}, McSampler::radial_lines);
  if (std::abs(f200.exponent + 1.0) > 0.15 || f200.sign != -1) ok = false;
  detail += fmt("(2,0,0) slope %.3f; ", f200.exponent);

  // l = n-1 anomaly and the second l=0 excited state
  const FitResult f211 = slope(2, 1, 1, {90.0, 180.0, 360.0}, McSampler::radial_lines);
  if (std::abs(f211.exponent + 2.0) > 0.15 || f211.sign != -1) ok = false;
  detail += fmt("(2,1,1) slope %.3f; ", f211.exponent);

  const FitResult f300 = slope(3, 0, 0, {10.0, 20.0, 40.0}, McSampler::radial_lines);
  if (std::abs(f300.exponent + 1.0) > 0.15 || f300.sign != -1) ok = false;
  detail += fmt("(3,0,0) slope %.3f; ", f300.exponent);

  // m -> -m invariance within statistics (distinct seeds)
  RunConfig cfg_m = cfg;
  cfg_m.rng_seed = derive_seed(cfg.rng_seed, 1);
  const ShiftResult mp =
      delta_e(QuantumState::hydrogen(3, 2, 1, 50.0), {1.0, 0.5, 3}, cfg_m,
              McSampler::radial_lines);
  cfg_m.rng_seed = derive_seed(cfg.rng_seed, 2);
  const ShiftResult mm =
      delta_e(QuantumState::hydrogen(3, 2, -1, 50.0), {1.0, 0.5, 3}, cfg_m,
              McSampler::radial_lines);
  const double gap = std::abs(mp.delta_e - mm.delta_e);
  const double sigma = std::hypot(mp.err_estimate, mm.err_estimate);
  if (gap > 3.0 * sigma) ok = false;
  detail += fmt("m-pair gap %.2f sigma; ", sigma > 0.0 ? gap / sigma : 0.0);

  // all l=0, n>=2 shifts negative at eta = 1/2 (metropolis cross-check on one)
  const ShiftResult s2 =
      delta_e(QuantumState::hydrogen(2, 0, 0, 20.0), {1.0, 0.5, 3}, cfg,
              McSampler::radial_lines);
  const ShiftResult s3 =
      delta_e(QuantumState::hydrogen(3, 0, 0, 20.0), {1.0, 0.5, 3}, cfg,
              McSampler::radial_lines);
  const ShiftResult s2m = delta_e(QuantumState::hydrogen(2, 0, 0, 10.0), {1.0, 0.5, 3},
                                  cfg, McSampler::metropolis_on_p);
  const bool signs = s2.delta_e < 0.0 && s3.delta_e < 0.0 &&
                     s2m.delta_e - 3.0 * s2m.err_estimate < 0.0;
  if (!signs) ok = false;
  detail += fmt("l=0 n>=2 negative: %s", signs ? "yes" : "no");

  report(8, "hydrogen scalings (slow suite)", ok, detail);
}

// ---------------------------------------------------------------- criterion 9
void criterion9() {
  bool ok = true;
  std::string detail;

  IntegrationPlan1D plan;
  plan.lo = 0.0;
  plan.hi = 1.0;
  plan.rel_tol = 1e-12;
  plan.abs_tol = 1e-16;
  const double p1 = integrate_1d([](double x) { return x * x; }, plan).value;
  if (std::abs(p1 - 1.0 / 3.0) > 1e-10) ok = false;

  plan.lo = -8.0;
  plan.hi = 8.0;
  const double p2 = integrate_1d([](double x) { return std::exp(-x * x); }, plan).value;
  if (std::abs(p2 - 1.7724538509055160) > 1e-10) ok = false;

  plan.lo = -1.0;
  plan.hi = 1.0;
  plan.breakpoints = {0.0};
  const IntegralResult kink = integrate_1d([](double x) { return std::abs(x); }, plan);
  if (std::abs(kink.value - 1.0) > 1e-10 || kink.evaluations > 60) ok = false;

  plan.lo = 0.0;
  plan.hi = 1.0;
  plan.breakpoints = {};
  plan.rel_tol = 1e-3;  // single-panel exactness must not need subdivision
  const IntegralResult poly =
      integrate_1d([](double x) { return 16.0 * std::pow(x, 15) + x; }, plan);
  if (std::abs(poly.value - 1.5) > 1e-10 || poly.evaluations > 15) ok = false;

  detail += fmt("x^2 err %.1e; gaussian err %.1e; kink err %.1e in %llu evals; "
                "degree-15 err %.1e; ",
                std::abs(p1 - 1.0 / 3.0), std::abs(p2 - 1.7724538509055160),
                std::abs(kink.value - 1.0),
                static_cast<unsigned long long>(kink.evaluations),
                std::abs(poly.value - 1.5));

  // Monte Carlo oracles
  const QuantumState s = QuantumState::hydrogen(1, 0, 0, 1.0);
  const Field3D p = density_field(s);
  MCPlan3D mc;
  mc.n_samples = 100000;
  mc.proposal_scale = 1.0;
  mc.seed = 7;
  const McResult norm = integrate_mc_3d(p, p, mc);
  if (!(norm.value == 1.0 && norm.std_error < 0.01)) ok = false;

  Field3D pot = [&p](const std::array<double, 3>& x) {
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    return r > 0.0 ? -p(x) / r : 0.0;
  };
  const McResult vexp = integrate_mc_3d(pot, p, mc);
  if (std::abs(vexp.value + 1.0) > 3.0 * vexp.std_error) ok = false;

  const McResult again = integrate_mc_3d(pot, p, mc);
  const bool identical = again.value == vexp.value && again.std_error == vexp.std_error;
  if (!identical) ok = false;

  detail += fmt("E_p[1]=%g; <V>=%.4f+-%.4f (expect -1); seeded rerun identical: %s",
                norm.value, vexp.value, vexp.std_error, identical ? "yes" : "no");
  report(9, "quadrature and Monte Carlo oracles", ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
  bool fast = false;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--fast") == 0) fast = true;
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
  }

  using Fn = void (*)();
  const Fn criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                         criterion6, criterion7, criterion8, criterion9};
  for (int i = 1; i <= 9; ++i) {
    if (only != 0 && i != only) continue;
    if (fast && i == 8) {
      std::printf("[SKIP] criterion 8: hydrogen scalings (slow suite; run without --fast)\n");
      continue;
    }
    criteria[i - 1]();
  }
  std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "OK" : "FAILURES",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
