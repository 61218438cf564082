#pragma once
// Shared domain types, unit conventions and run configuration.

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace nlshift {

struct Units {
  double hbar = 1.0;
  double mass = 1.0;
};

// The pair (L, eta) defining the nonlinear term.  L is stored signed so the
// parity property delta_e(L) == delta_e(-L) stays testable.
struct NonlinearityParams {
  double L = 1.0;    // nonlinearity length scale
  double eta = 0.5;  // regulator, 0 < eta < 1
  int dims = 1;      // 1 or 3
};

enum class ShiftMethod { quadrature, monte_carlo, closed_form };

const char* to_string(ShiftMethod m);

struct ShiftResult {
  double delta_e = 0.0;
  double delta_e_dimensionless = 0.0;
  double err_estimate = 0.0;
  ShiftMethod method = ShiftMethod::quadrature;
  std::uint64_t evaluations = 0;
};

struct RunConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-30;
  std::uint64_t mc_samples = 100000;
  std::uint64_t rng_seed = 20260811;
  double tail_cutoff = 1e-18;  // density fraction at which domains are truncated

  void validate() const;
};

// |L|/a above this is outside the trusted perturbative window.
inline constexpr double kPerturbativeRatioWarning = 1e-2;

struct CheckedParams {
  NonlinearityParams params;
  double ratio = 0.0;  // |L|/a
  bool perturbative_warning = false;
};

// Rejects eta outside (0,1), a <= 0, L == 0; flags |L|/a above the
// perturbative threshold.
CheckedParams validate_params(const NonlinearityParams& p, double a);

// Plain key=value config file; '#' starts a comment.
RunConfig load_run_config(const std::string& path);

// Worker cap: NLSE_THREADS if set, else hardware concurrency.
unsigned worker_count();

// Deterministic per-stream seed derivation (splitmix64 over master ^ stream).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

using Field3D = std::function<double(const std::array<double, 3>&)>;

// Failure of a numerical method (quadrature non-convergence, MC escalation).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nlshift
