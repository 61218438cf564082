#include "nlshift/fitting.hpp"

#include <cmath>
#include <stdexcept>

namespace nlshift {

FitResult power_law_fit(const std::vector<FitPoint>& points, bool weighted) {
  if (points.size() < 3)
    throw std::invalid_argument("power_law_fit: need at least 3 points");

  int sign = 0;
  std::vector<double> lx, ly, w;
  for (const FitPoint& pt : points) {
    if (!(pt.x > 0.0)) throw std::invalid_argument("power_law_fit: x values must be > 0");
    if (pt.y == 0.0 || !std::isfinite(pt.y))
      throw std::invalid_argument("power_law_fit: y values must be nonzero and finite");
    const int s = pt.y > 0.0 ? +1 : -1;
    if (sign == 0) sign = s;
    else if (sign != s)
      throw std::invalid_argument("power_law_fit: mixed-sign data (zero crossing in range)");
    lx.push_back(std::log(pt.x));
    ly.push_back(std::log(std::abs(pt.y)));
    w.push_back(weighted ? pt.w : 1.0);
  }

  const std::size_t n = lx.size();
  double sw = 0.0, sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sw += w[i];
    sx += w[i] * lx[i];
    sy += w[i] * ly[i];
  }
  const double mx = sx / sw, my = sy / sw;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += w[i] * (lx[i] - mx) * (lx[i] - mx);
    sxy += w[i] * (lx[i] - mx) * (ly[i] - my);
    syy += w[i] * (ly[i] - my) * (ly[i] - my);
  }
  if (!(sxx > 0.0))
    throw std::invalid_argument("power_law_fit: degenerate fit (all x equal)");

  FitResult out;
  out.n_points = n;
  out.sign = sign;
  out.exponent = sxy / sxx;
  const double intercept = my - out.exponent * mx;
  out.coefficient = std::exp(intercept);

  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (intercept + out.exponent * lx[i]);
    ssr += w[i] * r * r;
  }
  const double dof = static_cast<double>(n) - 2.0;
  const double s2 = dof > 0.0 ? ssr / dof : 0.0;
  out.exponent_stderr = std::sqrt(s2 / sxx);
  const double intercept_stderr = std::sqrt(s2 * (1.0 / sw + mx * mx / sxx));
  out.coefficient_stderr = out.coefficient * intercept_stderr;
  out.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  if (out.r_squared < 0.0) out.r_squared = 0.0;
  return out;
}

}  // namespace nlshift
