#include "nlshift/wavefunctions.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace nlshift {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

const char* to_string(System s) {
  switch (s) {
    case System::InfiniteWell: return "well";
    case System::SHO: return "sho";
    case System::Hydrogen: return "hydrogen";
  }
  return "unknown";
}

System system_from_string(const std::string& name) {
  if (name == "well") return System::InfiniteWell;
  if (name == "sho") return System::SHO;
  if (name == "hydrogen") return System::Hydrogen;
  throw std::invalid_argument("unknown system: " + name);
}

QuantumState QuantumState::well(int n, double a, Units u) {
  if (n < 1) throw std::invalid_argument("well requires n >= 1");
  if (!(a > 0.0)) throw std::invalid_argument("well width must be > 0");
  return {System::InfiniteWell, n, 0, 0, a, u};
}

QuantumState QuantumState::sho(int n, double a, Units u) {
  if (n < 0) throw std::invalid_argument("sho requires n >= 0");
  if (!(a > 0.0)) throw std::invalid_argument("sho length must be > 0");
  return {System::SHO, n, 0, 0, a, u};
}

QuantumState QuantumState::hydrogen(int n, int l, int m, double a, Units u) {
  if (n < 1) throw std::invalid_argument("hydrogen requires n >= 1");
  if (l < 0 || l > n - 1) throw std::invalid_argument("hydrogen requires 0 <= l <= n-1");
  if (std::abs(m) > l) throw std::invalid_argument("hydrogen requires |m| <= l");
  if (!(a > 0.0)) throw std::invalid_argument("bohr radius must be > 0");
  return {System::Hydrogen, n, l, m, a, u};
}

double well_psi(int n, double a, double x) {
  if (x <= 0.0 || x >= a) return 0.0;
  return std::sqrt(2.0 / a) * std::sin(n * kPi * x / a);
}

HermiteValue hermite_function(int n, double z) {
  // normalized three-term recurrence; values stay O(1) so no overflow guard
  // is needed for any n reachable here
  double h0 = std::pow(kPi, -0.25) * std::exp(-0.5 * z * z);
  if (n == 0) return {h0, -z * h0};
  double h1 = std::sqrt(2.0) * z * h0;
  double hm = h0, hc = h1;
  for (int k = 1; k < n; ++k) {
    const double hn = std::sqrt(2.0 / (k + 1.0)) * z * hc -
                      std::sqrt(static_cast<double>(k) / (k + 1.0)) * hm;
    hm = hc;
    hc = hn;
  }
  // h_n' = sqrt(2n) h_{n-1} - z h_n
  return {hc, std::sqrt(2.0 * n) * hm - z * hc};
}

double sho_psi(int n, double a, double x) {
  return hermite_function(n, x / a).value / std::sqrt(a);
}

double hermite_polynomial(int n, double z) {
  double h0 = 1.0;
  if (n == 0) return h0;
  double h1 = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    const double hn = 2.0 * z * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = hn;
  }
  return h1;
}

std::vector<double> hermite_roots(int n) {
  if (n < 1) throw std::invalid_argument("hermite_roots requires n >= 1");
  // Jacobi matrix of the Hermite recurrence: zero diagonal, b_k = sqrt(k/2)
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = std::sqrt(0.5 * k);
    jac(k - 1, k) = b;
    jac(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jac, Eigen::EigenvaluesOnly);
  std::vector<double> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(roots.begin(), roots.end());
  for (double& z : roots) {
    const HermiteValue h = hermite_function(n, z);
    const double step = h.value / h.derivative;
    if (std::abs(step) > 1e-10 * std::max(1.0, std::abs(z)))
      throw NumericalError("hermite_roots: Newton polish moved a root by more than 1e-10");
    z -= step;
  }
  return roots;
}

double assoc_laguerre(int k, double alpha, double x) {
  double l0 = 1.0;
  if (k == 0) return l0;
  double l1 = 1.0 + alpha - x;
  for (int i = 1; i < k; ++i) {
    const double ln = ((2.0 * i + 1.0 + alpha - x) * l1 - (i + alpha) * l0) / (i + 1.0);
    l0 = l1;
    l1 = ln;
  }
  return l1;
}

std::vector<double> laguerre_roots(int k, double alpha) {
  std::vector<double> roots;
  if (k < 1) return roots;
  // roots lie in (0, 4k + 2*alpha + 2); bracket by scanning, then bisect
  const double hi = 4.0 * k + 2.0 * alpha + 2.0;
  const int grid = 200 * k;
  double prev_x = 1e-12;
  double prev_f = assoc_laguerre(k, alpha, prev_x);
  for (int i = 1; i <= grid; ++i) {
    const double x = hi * i / grid;
    const double f = assoc_laguerre(k, alpha, x);
    if (prev_f == 0.0) roots.push_back(prev_x);
    else if (prev_f * f < 0.0) {
      double lo_b = prev_x, hi_b = x;
      double flo = prev_f;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo_b + hi_b);
        const double fm = assoc_laguerre(k, alpha, mid);
        if (fm == 0.0) { lo_b = hi_b = mid; break; }
        if (flo * fm < 0.0) hi_b = mid;
        else { lo_b = mid; flo = fm; }
        if (hi_b - lo_b < 1e-15 * hi) break;
      }
      roots.push_back(0.5 * (lo_b + hi_b));
    }
    prev_x = x;
    prev_f = f;
  }
  if (static_cast<int>(roots.size()) != k)
    throw NumericalError("laguerre_roots: did not capture all roots");
  return roots;
}

double assoc_legendre(int l, int m, double x) {
  // P_l^m without Condon-Shortley phase; standard stable upward recurrence
  if (m < 0 || m > l) throw std::invalid_argument("assoc_legendre requires 0 <= m <= l");
  double pmm = 1.0;
  if (m > 0) {
    const double somx2 = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
    double fact = 1.0;
    for (int i = 1; i <= m; ++i) {
      pmm *= fact * somx2;
      fact += 2.0;
    }
  }
  if (l == m) return pmm;
  double pmmp1 = x * (2.0 * m + 1.0) * pmm;
  if (l == m + 1) return pmmp1;
  double pll = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    pll = (x * (2.0 * ll - 1.0) * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m);
    pmm = pmmp1;
    pmmp1 = pll;
  }
  return pll;
}

std::complex<double> spherical_harmonic(int l, int m, double theta, double phi) {
  const int am = std::abs(m);
  if (am > l) throw std::invalid_argument("spherical_harmonic requires |m| <= l");
  const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * kPi) *
                                std::exp(std::lgamma(l - am + 1.0) - std::lgamma(l + am + 1.0)));
  const double plm = assoc_legendre(l, am, std::cos(theta));
  // Condon-Shortley phase on positive m
  double sign = (am % 2 == 1) ? -1.0 : 1.0;
  std::complex<double> val = sign * norm * plm *
                             std::exp(std::complex<double>(0.0, am * phi));
  if (m >= 0) return val;
  return sign * std::conj(val);  // Y_l^{-m} = (-1)^m conj(Y_l^m)
}

double hydrogen_radial(int n, int l, double a, double r) {
  const double rho = 2.0 * r / (n * a);
  const double lognorm = 1.5 * std::log(2.0 / (n * a)) +
                         0.5 * (std::lgamma(n - l + 0.0) - std::log(2.0 * n) -
                                std::lgamma(n + l + 1.0));
  const double lag = assoc_laguerre(n - l - 1, 2.0 * l + 1.0, rho);
  double amp;
  if (rho > 0.0)
    amp = std::exp(lognorm + l * std::log(rho) - 0.5 * rho);
  else
    amp = (l == 0) ? std::exp(lognorm) : 0.0;
  return amp * lag;
}

std::complex<double> hydrogen_psi(int n, int l, int m, double a, double r,
                                  double theta, double phi) {
  if (r < 0.0) throw std::invalid_argument("hydrogen_psi requires r >= 0");
  return hydrogen_radial(n, l, a, r) * spherical_harmonic(l, m, theta, phi);
}

double psi_1d(const QuantumState& s, double x) {
  switch (s.system) {
    case System::InfiniteWell: return well_psi(s.n, s.a, x);
    case System::SHO: return sho_psi(s.n, s.a, x);
    default: throw std::invalid_argument("psi_1d: not a 1D state");
  }
}

double psi_prime_1d(const QuantumState& s, double x) {
  switch (s.system) {
    case System::InfiniteWell: {
      if (x < 0.0 || x > s.a) return 0.0;
      const double k = s.n * kPi / s.a;
      return std::sqrt(2.0 / s.a) * k * std::cos(k * x);
    }
    case System::SHO:
      return hermite_function(s.n, x / s.a).derivative / std::pow(s.a, 1.5);
    default:
      throw std::invalid_argument("psi_prime_1d: not a 1D state");
  }
}

Density1D density_1d(const QuantumState& s, double x) {
  Density1D d;
  double f, f1, f2, f3, f4;
  switch (s.system) {
    case System::InfiniteWell: {
      if (x <= 0.0 || x >= s.a) return d;
      const double k = s.n * kPi / s.a;
      const double amp = std::sqrt(2.0 / s.a);
      f = amp * std::sin(k * x);
      f1 = amp * k * std::cos(k * x);
      f2 = -k * k * f;
      f3 = -k * k * f1;
      f4 = k * k * k * k * f;
      break;
    }
    case System::SHO: {
      f = psi_1d(s, x);
      f1 = psi_prime_1d(s, x);
      // phi'' = A(x) phi with A = x^2/a^4 - (2n+1)/a^2
      const double a2 = s.a * s.a;
      const double A = x * x / (a2 * a2) - (2.0 * s.n + 1.0) / a2;
      const double A1 = 2.0 * x / (a2 * a2);
      const double A2 = 2.0 / (a2 * a2);
      f2 = A * f;
      f3 = A * f1 + A1 * f;
      f4 = A * f2 + 2.0 * A1 * f1 + A2 * f;
      break;
    }
    default:
      throw std::invalid_argument("density_1d: not a 1D state");
  }
  d.p = f * f;
  d.d1 = 2.0 * f * f1;
  d.d2 = 2.0 * (f1 * f1 + f * f2);
  d.d3 = 2.0 * (3.0 * f1 * f2 + f * f3);
  d.d4 = 2.0 * (3.0 * f2 * f2 + 4.0 * f1 * f3 + f * f4);
  return d;
}

double density_for_shifts(const QuantumState& s, double x) {
  switch (s.system) {
    case System::InfiniteWell: {
      const double amp = std::sqrt(2.0 / s.a) * std::sin(s.n * kPi * x / s.a);
      return amp * amp;
    }
    case System::SHO:
      return density_1d(s, x).p;
    default:
      throw std::invalid_argument("density_for_shifts: not a 1D state");
  }
}

namespace {

constexpr long double kPiL = 3.14159265358979323846264338327950288L;

long double sho_density_ld(int n, long double a, long double x) {
  const long double z = x / a;
  long double h0 = std::exp(-0.5L * z * z) / std::sqrt(std::sqrt(kPiL));
  if (n == 0) return h0 * h0 / a;
  long double h1 = std::sqrt(2.0L) * z * h0;
  for (int k = 1; k < n; ++k) {
    const long double hn = std::sqrt(2.0L / (k + 1.0L)) * z * h1 -
                           std::sqrt(static_cast<long double>(k) / (k + 1.0L)) * h0;
    h0 = h1;
    h1 = hn;
  }
  return h1 * h1 / a;
}

long double well_density_ld(int n, long double a, long double x) {
  const long double amp = std::sin(n * kPiL * x / a);
  return 2.0L * amp * amp / a;
}

}  // namespace

long double density_ld(const QuantumState& s, double x) {
  switch (s.system) {
    case System::InfiniteWell:
      if (x <= 0.0 || x >= s.a) return 0.0L;
      return well_density_ld(s.n, s.a, x);
    case System::SHO:
      return sho_density_ld(s.n, s.a, x);
    default:
      throw std::invalid_argument("density_ld: not a 1D state");
  }
}

long double density_for_shifts_ld(const QuantumState& s, double x) {
  switch (s.system) {
    case System::InfiniteWell:
      return well_density_ld(s.n, s.a, x);
    case System::SHO:
      return sho_density_ld(s.n, s.a, x);
    default:
      throw std::invalid_argument("density_for_shifts_ld: not a 1D state");
  }
}

double density_3d(const QuantumState& s, const std::array<double, 3>& x) {
  if (s.system != System::Hydrogen)
    throw std::invalid_argument("density_3d: only hydrogen is 3D");
  const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  const double R = hydrogen_radial(s.n, s.l, s.a, r);
  double y2;
  if (r == 0.0) {
    y2 = (s.l == 0) ? 1.0 / (4.0 * kPi) : 0.0;
  } else {
    const double ct = std::clamp(x[2] / r, -1.0, 1.0);
    const int am = std::abs(s.m);
    const double norm2 = (2.0 * s.l + 1.0) / (4.0 * kPi) *
                         std::exp(std::lgamma(s.l - am + 1.0) - std::lgamma(s.l + am + 1.0));
    const double plm = assoc_legendre(s.l, am, ct);
    y2 = norm2 * plm * plm;  // |e^{im phi}|^2 = 1
  }
  return R * R * y2;
}

Density3D density_3d_derivatives(const QuantumState& s, const std::array<double, 3>& x,
                                 double h) {
  Density3D out;
  out.p = density_3d(s, x);
  for (int axis = 0; axis < 3; ++axis) {
    std::array<double, 3> xp = x, xm = x, xp2 = x, xm2 = x;
    xp[axis] += h;
    xm[axis] -= h;
    xp2[axis] += 2.0 * h;
    xm2[axis] -= 2.0 * h;
    const double fp = density_3d(s, xp), fm = density_3d(s, xm);
    const double fp2 = density_3d(s, xp2), fm2 = density_3d(s, xm2);
    out.grad[axis] = (fm2 - 8.0 * fm + 8.0 * fp - fp2) / (12.0 * h);
    out.laplacian += (-fm2 + 16.0 * fm - 30.0 * out.p + 16.0 * fp - fp2) / (12.0 * h * h);
  }
  return out;
}

Field3D density_field(const QuantumState& s) {
  return [s](const std::array<double, 3>& x) { return density_3d(s, x); };
}

std::vector<NodeInfo> nodes(const QuantumState& s) {
  std::vector<NodeInfo> out;
  switch (s.system) {
    case System::InfiniteWell: {
      const double slope = std::sqrt(2.0 / s.a) * s.n * kPi / s.a;
      for (int p = 0; p <= s.n; ++p) {
        NodeInfo ni;
        ni.position = s.a * p / s.n;
        ni.slope_coeff = (p % 2 == 0 ? slope : -slope);
        ni.weight = (p == 0 || p == s.n) ? 0.5 : 1.0;
        out.push_back(ni);
      }
      return out;
    }
    case System::SHO: {
      if (s.n == 0) return out;
      for (double z : hermite_roots(s.n)) {
        NodeInfo ni;
        ni.position = s.a * z;
        ni.slope_coeff = hermite_function(s.n, z).derivative / std::pow(s.a, 1.5);
        ni.weight = 1.0;
        out.push_back(ni);
      }
      return out;
    }
    default:
      throw std::invalid_argument("nodes: only defined for 1D states");
  }
}

double kinetic_expectation(const QuantumState& s) {
  const double hbar2 = s.units.hbar * s.units.hbar;
  switch (s.system) {
    case System::InfiniteWell:
      return hbar2 * kPi * kPi * s.n * s.n / (2.0 * s.units.mass * s.a * s.a);
    case System::SHO:
      // virial: <T> = E/2 with E = (n + 1/2) hbar^2/(m a^2)
      return (s.n + 0.5) * hbar2 / (2.0 * s.units.mass * s.a * s.a);
    case System::Hydrogen:
      // virial: <T> = -E
      return hbar2 / (2.0 * s.units.mass * s.a * s.a * s.n * s.n);
  }
  throw std::invalid_argument("kinetic_expectation: unknown system");
}

double unperturbed_energy(const QuantumState& s) {
  const double hbar2 = s.units.hbar * s.units.hbar;
  switch (s.system) {
    case System::InfiniteWell:
      return hbar2 * kPi * kPi * s.n * s.n / (2.0 * s.units.mass * s.a * s.a);
    case System::SHO:
      return (s.n + 0.5) * hbar2 / (s.units.mass * s.a * s.a);
    case System::Hydrogen:
      return -hbar2 / (2.0 * s.units.mass * s.a * s.a * s.n * s.n);
  }
  throw std::invalid_argument("unperturbed_energy: unknown system");
}

std::pair<double, double> domain_1d(const QuantumState& s, double tail_cutoff) {
  switch (s.system) {
    case System::InfiniteWell:
      return {0.0, s.a};
    case System::SHO: {
      // default half-width; widen if an unusually small cutoff asks for it
      double z = std::sqrt(2.0 * s.n + 1.0) + 12.0;
      if (tail_cutoff > 0.0 && tail_cutoff < 1e-18) {
        const double extra = std::sqrt(-std::log(tail_cutoff));
        z = std::max(z, std::sqrt(2.0 * s.n + 1.0) + extra + 2.0);
      }
      return {-s.a * z, s.a * z};
    }
    default:
      throw std::invalid_argument("domain_1d: not a 1D state");
  }
}

std::vector<double> hydrogen_radial_node_radii(const QuantumState& s) {
  if (s.system != System::Hydrogen)
    throw std::invalid_argument("hydrogen_radial_node_radii: not a hydrogen state");
  std::vector<double> out;
  for (double rho : laguerre_roots(s.n - s.l - 1, 2.0 * s.l + 1.0))
    out.push_back(0.5 * s.n * s.a * rho);
  return out;
}

}  // namespace nlshift
