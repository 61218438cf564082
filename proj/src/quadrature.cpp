#include "nlshift/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <queue>
#include <thread>

namespace nlshift {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15 nodes).
constexpr std::array<double, 8> kXgk = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> kWg = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
  double a = 0.0, b = 0.0;
  double value = 0.0, err = 0.0;
};

struct WorstFirst {
  bool operator()(const Panel& x, const Panel& y) const { return x.err < y.err; }
};

Panel gk15(const Integrand1D& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv1[7], fv2[7];
  const double fc = f(c);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    fv1[j] = f(c - dx);
    fv2[j] = f(c + dx);
    const double fsum = fv1[j] + fv2[j];
    resk += kWgk[j] * fsum;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) resg += kWg[(j - 1) / 2] * fsum;
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  Panel p;
  p.a = a;
  p.b = b;
  p.value = resk * h;
  resabs *= std::abs(h);
  resasc *= std::abs(h);
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  const double uflow = std::numeric_limits<double>::min();
  if (resabs > uflow / (50.0 * eps)) err = std::max(err, 50.0 * eps * resabs);
  p.err = err;
  return p;
}

}  // namespace

IntegralResult integrate_1d(const Integrand1D& f, const IntegrationPlan1D& plan) {
  if (!(plan.rel_tol > 0.0) || !(plan.abs_tol > 0.0))
    throw std::invalid_argument("integration tolerances must be > 0");
  if (!(plan.hi > plan.lo))
    throw std::invalid_argument("integration domain must have hi > lo");

  std::vector<double> edges;
  edges.push_back(plan.lo);
  for (double x : plan.breakpoints)
    if (x > plan.lo && x < plan.hi) edges.push_back(x);
  edges.push_back(plan.hi);
  std::sort(edges.begin(), edges.end());
  // collapse edges closer than the local grid resolution
  const double span = plan.hi - plan.lo;
  std::vector<double> uniq;
  for (double x : edges)
    if (uniq.empty() || x - uniq.back() > 1e-15 * span) uniq.push_back(x);
  if (uniq.size() < 2) uniq = {plan.lo, plan.hi};

  std::priority_queue<Panel, std::vector<Panel>, WorstFirst> queue;
  IntegralResult res;
  double total = 0.0, toterr = 0.0;
  for (std::size_t i = 0; i + 1 < uniq.size(); ++i) {
    Panel p = gk15(f, uniq[i], uniq[i + 1]);
    res.evaluations += 15;
    total += p.value;
    toterr += p.err;
    queue.push(p);
  }

  std::size_t splits = 0;
  while (toterr > std::max(plan.rel_tol * std::abs(total), plan.abs_tol)) {
    if (splits >= plan.max_subdivisions || queue.empty()) {
      IntegralResult best{total, toterr, res.evaluations};
      throw QuadratureError("integrate_1d: no convergence after max subdivisions", best);
    }
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // interval at floating-point resolution; keep its estimate as-is
      total += 0.0;
      toterr -= worst.err;
      worst.err = 0.0;
      queue.push(worst);
      ++splits;
      continue;
    }
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    res.evaluations += 30;
    total += left.value + right.value - worst.value;
    toterr += left.err + right.err - worst.err;
    queue.push(left);
    queue.push(right);
    ++splits;
  }

  // Re-sum panels in domain order for a reproducible, cancellation-friendly total.
  std::vector<Panel> panels;
  panels.reserve(queue.size());
  while (!queue.empty()) {
    panels.push_back(queue.top());
    queue.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  double value = 0.0, err = 0.0;
  for (const Panel& p : panels) {
    value += p.value;
    err += p.err;
  }
  res.value = value;
  res.err_estimate = err;
  return res;
}

const char* to_string(McSampler s) {
  switch (s) {
    case McSampler::metropolis_on_p: return "metropolis_on_p";
    case McSampler::stratified_box: return "stratified_box";
    case McSampler::radial_lines: return "radial_lines";
  }
  return "unknown";
}

namespace {

// Minimal deterministic generator (xorshift-free splitmix stream) so MC
// results are bit-identical across platforms for a fixed seed.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() {  // in (0,1)
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }
  double normal() {
    // Box-Muller, one value per call (pair cache would make chain state
    // depend on call parity)
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }
};

struct BatchStats {
  double mean = 0.0;
  double std_error = 0.0;
  double tau_int = 0.0;
};

// Batch-means error estimate over `n_batches` contiguous batches.
BatchStats batch_stats(const std::vector<double>& samples, int n_batches) {
  BatchStats st;
  const std::size_t n = samples.size();
  if (n == 0) return st;
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= static_cast<double>(n);
  st.mean = mean;
  if (n < static_cast<std::size_t>(2 * n_batches)) return st;

  const std::size_t bsz = n / n_batches;
  double var_bm = 0.0;
  for (int b = 0; b < n_batches; ++b) {
    double bm = 0.0;
    for (std::size_t i = b * bsz; i < (b + 1) * bsz; ++i) bm += samples[i];
    bm /= static_cast<double>(bsz);
    var_bm += (bm - mean) * (bm - mean);
  }
  var_bm /= static_cast<double>(n_batches - 1);
  st.std_error = std::sqrt(var_bm / n_batches);

  double var_s = 0.0;
  for (double v : samples) var_s += (v - mean) * (v - mean);
  var_s /= static_cast<double>(n - 1);
  if (var_s > 0.0) st.tau_int = static_cast<double>(bsz) * var_bm / var_s;
  return st;
}

constexpr int kBatches = 32;

void run_chains(int n_chains, const std::function<void(int)>& body) {
  const unsigned workers = std::min<unsigned>(worker_count(), n_chains);
  if (workers <= 1) {
    for (int c = 0; c < n_chains; ++c) body(c);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int c = next.fetch_add(1); c < n_chains; c = next.fetch_add(1)) body(c);
    });
  for (auto& t : pool) t.join();
}

McResult metropolis(const Field3D& g, const Field3D& p, const MCPlan3D& plan) {
  const int n_chains = std::max(1, plan.n_chains);
  const std::uint64_t per_chain = std::max<std::uint64_t>(1, plan.n_samples / n_chains);
  std::vector<std::vector<double>> chains(n_chains);

  run_chains(n_chains, [&](int c) {
    Rng rng(derive_seed(plan.seed, static_cast<std::uint64_t>(c)));
    std::array<double, 3> x = {plan.start[0] * plan.proposal_scale,
                               plan.start[1] * plan.proposal_scale,
                               plan.start[2] * plan.proposal_scale};
    double px = p(x);
    // walk into the support if the start point is degenerate
    for (int k = 0; k < 1000 && !(px > 0.0); ++k) {
      for (double& xi : x) xi += plan.proposal_scale * rng.normal();
      px = p(x);
    }
    if (!(px > 0.0)) throw NumericalError("metropolis: cannot locate density support");

    auto step = [&]() {
      std::array<double, 3> y = {x[0] + plan.proposal_scale * rng.normal(),
                                 x[1] + plan.proposal_scale * rng.normal(),
                                 x[2] + plan.proposal_scale * rng.normal()};
      const double py = p(y);
      if (py > 0.0 && (py >= px || rng.uniform() < py / px)) {
        x = y;
        px = py;
      }
    };
    for (std::uint64_t i = 0; i < plan.burn_in; ++i) step();
    auto& out = chains[c];
    out.reserve(per_chain);
    for (std::uint64_t i = 0; i < per_chain; ++i) {
      step();
      out.push_back(g(x));
    }
  });

  std::vector<double> merged;
  merged.reserve(per_chain * n_chains);
  for (const auto& ch : chains) merged.insert(merged.end(), ch.begin(), ch.end());

  const BatchStats st = batch_stats(merged, kBatches);
  McResult res;
  res.value = st.mean;
  res.std_error = st.std_error;
  res.evaluations = merged.size();
  res.tau_int = st.tau_int;
  res.autocorr_warning = st.tau_int > static_cast<double>(merged.size()) / 100.0;
  return res;
}

McResult stratified_box(const Field3D& f, const MCPlan3D& plan) {
  if (!(plan.box_halfwidth > 0.0))
    throw std::invalid_argument("stratified_box requires box_halfwidth > 0");
  const std::uint64_t k = std::max<std::uint64_t>(
      2, static_cast<std::uint64_t>(std::cbrt(static_cast<double>(plan.n_samples))));
  const double w = 2.0 * plan.box_halfwidth / static_cast<double>(k);
  const double cell_vol = w * w * w;

  const int n_chains = std::max(1, plan.n_chains);
  // split the outermost cell index across chains
  std::vector<std::vector<double>> chains(n_chains);
  run_chains(n_chains, [&](int c) {
    Rng rng(derive_seed(plan.seed, static_cast<std::uint64_t>(c)));
    auto& out = chains[c];
    for (std::uint64_t i = c; i < k; i += n_chains) {
      for (std::uint64_t j = 0; j < k; ++j) {
        for (std::uint64_t l = 0; l < k; ++l) {
          std::array<double, 3> x = {
              -plan.box_halfwidth + (static_cast<double>(i) + rng.uniform()) * w,
              -plan.box_halfwidth + (static_cast<double>(j) + rng.uniform()) * w,
              -plan.box_halfwidth + (static_cast<double>(l) + rng.uniform()) * w};
          out.push_back(f(x) * cell_vol * static_cast<double>(k) * static_cast<double>(k) *
                        static_cast<double>(k));
        }
      }
    }
  });

  std::vector<double> merged;
  for (const auto& ch : chains) merged.insert(merged.end(), ch.begin(), ch.end());
  const BatchStats st = batch_stats(merged, kBatches);
  McResult res;
  res.value = st.mean;  // mean of per-cell extrapolations == stratified estimate
  res.std_error = st.std_error;
  res.evaluations = merged.size();
  res.tau_int = st.tau_int;
  res.autocorr_warning = false;  // independent draws
  return res;
}

// 26-point octahedral spherical rule (Lebedev), exact for surface harmonics
// through degree 7.  Node groups: 6 axis points, 12 edge midpoints, 8 cube
// corners.
struct SphereRule26 {
  std::array<std::array<double, 3>, 26> node;
  std::array<double, 26> weight;
  SphereRule26() {
    int k = 0;
    const double a1 = 1.0 / 21.0, a2 = 4.0 / 105.0, a3 = 27.0 / 840.0;
    for (int axis = 0; axis < 3; ++axis)
      for (double s : {1.0, -1.0}) {
        node[k] = {0.0, 0.0, 0.0};
        node[k][axis] = s;
        weight[k++] = a1;
      }
    const double e = std::sqrt(0.5);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        for (double si : {1.0, -1.0})
          for (double sj : {1.0, -1.0}) {
            node[k] = {0.0, 0.0, 0.0};
            node[k][i] = si * e;
            node[k][j] = sj * e;
            weight[k++] = a2;
          }
    const double c = std::sqrt(1.0 / 3.0);
    for (double sx : {1.0, -1.0})
      for (double sy : {1.0, -1.0})
        for (double sz : {1.0, -1.0}) {
          node[k] = {sx * c, sy * c, sz * c};
          weight[k++] = a3;
        }
  }
};

std::array<std::array<double, 3>, 3> random_rotation(Rng& rng) {
  // uniform rotation from a normalized random quaternion
  double q[4];
  double norm = 0.0;
  for (double& qi : q) {
    qi = rng.normal();
    norm += qi * qi;
  }
  norm = std::sqrt(norm);
  for (double& qi : q) qi /= norm;
  const double w = q[0], x = q[1], y = q[2], z = q[3];
  return {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
           {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
           {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
}

// Spherical decomposition: integral f d^3r = 4*pi * E_dir[ integral t^2 f(t dir) dt ].
// Each Monte Carlo draw is a randomly rotated 26-point spherical rule; the
// radial factor is integrated adaptively with breakpoints wherever the density
// or one of its shifted images vanishes along the ray.
McResult radial_lines(const Field3D& f, const MCPlan3D& plan) {
  if (!(plan.r_max > 0.0))
    throw std::invalid_argument("radial_lines requires r_max > 0");
  const int n_chains = std::max(1, plan.n_chains);
  const std::uint64_t budget_per_chain =
      std::max<std::uint64_t>(1000, plan.n_samples / n_chains);
  static const SphereRule26 rule;

  std::vector<std::vector<double>> chains(n_chains);
  std::vector<std::uint64_t> evals(n_chains, 0);

  run_chains(n_chains, [&](int c) {
    Rng rng(derive_seed(plan.seed, static_cast<std::uint64_t>(c)));
    std::uint64_t used = 0;
    auto& out = chains[c];

    auto ray_integral = [&](const std::array<double, 3>& dir) {
      IntegrationPlan1D rp;
      rp.lo = 0.0;
      rp.hi = plan.r_max;
      rp.rel_tol = plan.radial_rel_tol;
      rp.abs_tol = plan.radial_abs_tol;
      rp.max_subdivisions = plan.radial_max_subdivisions;
      // kinks sit where |t*dir +- delta*e_i| crosses a shell radius
      for (double r0 : plan.shell_radii) {
        rp.breakpoints.push_back(r0);
        for (double d : plan.shift_deltas) {
          for (int axis = 0; axis < 3; ++axis) {
            const double b = d * dir[axis];
            const double disc = b * b - d * d + r0 * r0;
            if (disc < 0.0) continue;
            const double root = std::sqrt(disc);
            for (double t : {-b + root, -b - root, b + root, b - root})
              if (t > 0.0) rp.breakpoints.push_back(t);
          }
        }
      }
      for (double d : plan.shift_deltas) {
        rp.breakpoints.push_back(d);
        rp.breakpoints.push_back(2.0 * d);
      }
      auto integrand = [&](double t) {
        ++used;
        const std::array<double, 3> x = {t * dir[0], t * dir[1], t * dir[2]};
        return t * t * f(x);
      };
      try {
        return integrate_1d(integrand, rp).value;
      } catch (const QuadratureError& e) {
        return e.best_estimate.value;  // direction spread covers the residual
      }
    };

    while (used < budget_per_chain) {
      const auto rot = random_rotation(rng);
      double frame = 0.0;
      for (int i = 0; i < 26; ++i) {
        const auto& nd = rule.node[i];
        const std::array<double, 3> dir = {
            rot[0][0] * nd[0] + rot[0][1] * nd[1] + rot[0][2] * nd[2],
            rot[1][0] * nd[0] + rot[1][1] * nd[1] + rot[1][2] * nd[2],
            rot[2][0] * nd[0] + rot[2][1] * nd[1] + rot[2][2] * nd[2]};
        frame += rule.weight[i] * ray_integral(dir);
      }
      out.push_back(4.0 * 3.14159265358979323846 * frame);
    }
    evals[c] = used;
  });

  std::vector<double> merged;
  for (const auto& ch : chains) merged.insert(merged.end(), ch.begin(), ch.end());
  const int batches = std::min<int>(kBatches, static_cast<int>(merged.size() / 2));
  const BatchStats st = batch_stats(merged, std::max(2, batches));
  McResult res;
  res.value = st.mean;
  res.std_error = st.std_error;
  for (auto e : evals) res.evaluations += e;
  res.tau_int = st.tau_int;
  res.autocorr_warning = false;  // independent frames
  return res;
}

}  // namespace

McResult mc_expectation(const Field3D& g, const Field3D& p, const MCPlan3D& plan) {
  switch (plan.sampler) {
    case McSampler::metropolis_on_p:
      return metropolis(g, p, plan);
    case McSampler::stratified_box:
    case McSampler::radial_lines: {
      // p * g -> 0 at density zeros even when g alone is singular there
      Field3D f = [&](const std::array<double, 3>& x) {
        const double px = p(x);
        return px > 0.0 ? g(x) * px : 0.0;
      };
      return plan.sampler == McSampler::stratified_box ? stratified_box(f, plan)
                                                       : radial_lines(f, plan);
    }
  }
  throw std::invalid_argument("unknown sampler");
}

McResult integrate_mc_3d(const Field3D& f, const Field3D& p, const MCPlan3D& plan) {
  switch (plan.sampler) {
    case McSampler::metropolis_on_p: {
      Field3D ratio = [&](const std::array<double, 3>& x) {
        const double px = p(x);
        return px > 0.0 ? f(x) / px : 0.0;
      };
      return metropolis(ratio, p, plan);
    }
    case McSampler::stratified_box:
      return stratified_box(f, plan);
    case McSampler::radial_lines:
      return radial_lines(f, plan);
  }
  throw std::invalid_argument("unknown sampler");
}

}  // namespace nlshift
