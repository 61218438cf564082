#include "nlshift/core.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace nlshift {

const char* to_string(ShiftMethod m) {
  switch (m) {
    case ShiftMethod::quadrature: return "quadrature";
    case ShiftMethod::monte_carlo: return "monte_carlo";
    case ShiftMethod::closed_form: return "closed_form";
  }
  return "unknown";
}

void RunConfig::validate() const {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");
  if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be > 0");
  if (mc_samples == 0) throw std::invalid_argument("mc_samples must be > 0");
  if (!(tail_cutoff > 0.0)) throw std::invalid_argument("tail_cutoff must be > 0");
}

CheckedParams validate_params(const NonlinearityParams& p, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("length scale a must be > 0");
  if (!(p.eta > 0.0 && p.eta < 1.0))
    throw std::invalid_argument("regulator eta out of range (0,1)");
  if (p.dims != 1 && p.dims != 3)
    throw std::invalid_argument("dims must be 1 or 3");
  if (p.L == 0.0)
    throw std::invalid_argument("L must be nonzero for nonlinear evaluation");
  CheckedParams out;
  out.params = p;
  out.ratio = std::abs(p.L) / a;
  out.perturbative_warning = out.ratio > kPerturbativeRatioWarning;
  return out;
}

namespace {

void apply_key_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "rel_tol") cfg.rel_tol = std::stod(value);
  else if (key == "abs_tol") cfg.abs_tol = std::stod(value);
  else if (key == "mc_samples") cfg.mc_samples = std::stoull(value);
  else if (key == "rng_seed") cfg.rng_seed = std::stoull(value);
  else if (key == "tail_cutoff") cfg.tail_cutoff = std::stod(value);
  else throw std::invalid_argument("unknown config key: " + key);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  RunConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("malformed config line: " + line);
    apply_key_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  cfg.validate();
  return cfg;
}

unsigned worker_count() {
  if (const char* env = std::getenv("NLSE_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  // splitmix64 step over the combined state
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace nlshift
