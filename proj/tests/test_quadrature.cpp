#include "doctest.h"

#include <cmath>

#include "nlshift/quadrature.hpp"

using namespace nlshift;

namespace {

IntegrationPlan1D plan(double lo, double hi, double rel = 1e-12, double abs = 1e-16) {
  IntegrationPlan1D p;
  p.lo = lo;
  p.hi = hi;
  p.rel_tol = rel;
  p.abs_tol = abs;
  return p;
}

}  // namespace

TEST_CASE("x^2 over [0,1]") {
  const auto r = integrate_1d([](double x) { return x * x; }, plan(0.0, 1.0));
  CHECK(std::abs(r.value - 1.0 / 3.0) < 1e-12);
}

TEST_CASE("truncated Gaussian reproduces sqrt(pi)") {
  const auto r = integrate_1d([](double x) { return std::exp(-x * x); }, plan(-8.0, 8.0));
  CHECK(std::abs(r.value - 1.7724538509055160) < 1e-10);
}

TEST_CASE("kink isolated by a breakpoint is exact in one panel per side") {
  auto p = plan(-1.0, 1.0);
  p.breakpoints = {0.0};
  const auto r = integrate_1d([](double x) { return std::abs(x); }, p);
  CHECK(std::abs(r.value - 1.0) < 1e-14);
  CHECK(r.evaluations <= 2 * 2 * 15);  // at most two panels per side
}

TEST_CASE("single panel is exact on polynomials of degree <= 15") {
  // f(x) = (2x-1)^15 expanded is degree 15; integral over [0,1] is 0 by symmetry
  auto f = [](double x) { return std::pow(2.0 * x - 1.0, 15); };
  const auto r = integrate_1d(f, plan(0.0, 1.0, 1e-3, 1e-3));
  CHECK(std::abs(r.value) < 1e-14);
  // and a generic degree-12 polynomial with known integral
  auto g = [](double x) { return 13.0 * std::pow(x, 12) + 3.0 * x * x; };
  const auto r2 = integrate_1d(g, plan(0.0, 1.0, 1e-3, 1e-3));
  CHECK(std::abs(r2.value - 2.0) < 1e-14);
}

TEST_CASE("halving rel_tol moves the value by less than the previous estimate") {
  auto f = [](double x) { return std::sin(17.0 * x) * std::exp(-0.3 * x) + 1.0 / (1.0 + x * x); };
  const auto coarse = integrate_1d(f, plan(0.0, 20.0, 1e-6, 1e-18));
  const auto fine = integrate_1d(f, plan(0.0, 20.0, 5e-7, 1e-18));
  CHECK(std::abs(fine.value - coarse.value) <= coarse.err_estimate);
}

TEST_CASE("non-convergence carries the best estimate") {
  auto p = plan(0.0, 1.0, 1e-15, 1e-300);
  p.max_subdivisions = 3;
  // integrable endpoint singularity needs many panels
  auto f = [](double x) { return x > 0.0 ? 1.0 / std::sqrt(x) : 0.0; };
  try {
    integrate_1d(f, p);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.best_estimate.value == doctest::Approx(2.0).epsilon(0.2));
    CHECK(e.best_estimate.err_estimate > 0.0);
  }
}

namespace {

Field3D gaussian3 = [](const std::array<double, 3>& x) {
  const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  return std::exp(-r2) / 5.568327996831708;  // pi^{3/2}: normalized density
};

}  // namespace

TEST_CASE("metropolis normalization: E_p[1] = 1 exactly, std_error sane") {
  MCPlan3D mc;
  mc.n_samples = 100000;
  mc.proposal_scale = 1.0;
  mc.seed = 99;
  const auto r = integrate_mc_3d(gaussian3, gaussian3, mc);
  CHECK(r.value == doctest::Approx(1.0));
  CHECK(r.std_error < 0.01);
}

TEST_CASE("metropolis expectation of r^2 for an isotropic Gaussian") {
  // E[x^2+y^2+z^2] = 3/2 for p ~ exp(-r^2)
  MCPlan3D mc;
  mc.n_samples = 400000;
  mc.proposal_scale = 1.0;
  mc.seed = 123;
  Field3D r2 = [](const std::array<double, 3>& x) {
    return x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  };
  const auto r = mc_expectation(r2, gaussian3, mc);
  CHECK(std::abs(r.value - 1.5) < 3.0 * r.std_error);
  CHECK(r.std_error < 0.02);
}

TEST_CASE("same seed gives bit-identical Monte Carlo results") {
  MCPlan3D mc;
  mc.n_samples = 50000;
  mc.proposal_scale = 1.0;
  mc.seed = 7;
  Field3D g = [](const std::array<double, 3>& x) { return x[0] * x[0] + std::cos(x[1]); };
  const auto r1 = mc_expectation(g, gaussian3, mc);
  const auto r2 = mc_expectation(g, gaussian3, mc);
  CHECK(r1.value == r2.value);
  CHECK(r1.std_error == r2.std_error);
}

TEST_CASE("quadrupling samples roughly halves the Monte Carlo error") {
  Field3D g = [](const std::array<double, 3>& x) { return std::sin(x[0]) + x[2] * x[2]; };
  MCPlan3D mc;
  mc.proposal_scale = 1.0;
  mc.seed = 31;
  mc.n_samples = 64000;
  const auto small = mc_expectation(g, gaussian3, mc);
  mc.n_samples = 256000;
  const auto big = mc_expectation(g, gaussian3, mc);
  const double ratio = small.std_error / big.std_error;
  CHECK(ratio > 1.5);
  CHECK(ratio < 2.5);
}

TEST_CASE("stratified box integrates a compact bump") {
  // integral of exp(-r^2) over the box = pi^{3/2} up to tail truncation
  MCPlan3D mc;
  mc.sampler = McSampler::stratified_box;
  mc.n_samples = 200000;
  mc.box_halfwidth = 6.0;
  mc.seed = 5;
  Field3D f = [](const std::array<double, 3>& x) {
    return std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
  };
  const auto r = integrate_mc_3d(f, f, mc);
  CHECK(std::abs(r.value - 5.568327996831708) < 4.0 * r.std_error + 1e-3);
}

TEST_CASE("radial lines integrate an isotropic density to its norm") {
  MCPlan3D mc;
  mc.sampler = McSampler::radial_lines;
  mc.n_samples = 100000;
  mc.r_max = 10.0;
  mc.seed = 11;
  const auto r = integrate_mc_3d(gaussian3, gaussian3, mc);
  CHECK(std::abs(r.value - 1.0) < 1e-5);
}
