#include "ncguard/overhead.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ncguard::overhead {

namespace {

void check_pn(double p_n) {
  if (!(p_n >= 0.0 && p_n <= 1.0)) throw std::invalid_argument("p_n must lie in [0, 1]");
}

constexpr double kTieSlack = 1e-12;

}  // namespace

void CostModelParams::validate() const {
  check_pn(p_n);
  if (m < 1 || l < 1 || G < 1) throw std::invalid_argument("m, l and G must be >= 1");
  if (!(op_rate >= 0.0 && op_rate < 1.0) || !(og_rate >= 0.0 && og_rate < 1.0))
    throw std::invalid_argument("overhead rates must lie in [0, 1)");
}

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::packet: return "packet";
    case Scheme::e2e: return "e2e";
    case Scheme::generation: return "generation";
  }
  return "unknown";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "packet") return Scheme::packet;
  if (name == "e2e") return Scheme::e2e;
  if (name == "generation") return Scheme::generation;
  throw std::invalid_argument("unknown scheme: " + name);
}

// The (m+l) factors cancel; working with the rates keeps op_rate exact at p_n = 0.
double packet_scheme_cost_raw(const CostModelParams& params) {
  params.validate();
  return params.op_rate - params.p_n;
}

double packet_scheme_cost(const CostModelParams& params) { return std::max(0.0, packet_scheme_cost_raw(params)); }

double e2e_cost(double p_n) {
  check_pn(p_n);
  return p_n;
}

double generation_drop_prob(double p_n, std::uint64_t G) {
  check_pn(p_n);
  if (G < 1) throw std::invalid_argument("G must be >= 1");
  return 1.0 - std::pow(1.0 - p_n, static_cast<double>(G));
}

double generation_scheme_cost_raw(const CostModelParams& params) {
  params.validate();
  const double p_g = generation_drop_prob(params.p_n, params.G);
  return params.og_rate + p_g * (1.0 - params.p_n) - params.p_n;
}

double generation_scheme_cost(const CostModelParams& params) {
  return std::max(0.0, generation_scheme_cost_raw(params));
}

double generation_cost_limit(double p_n) {
  check_pn(p_n);
  return std::max(0.0, 1.0 - 2.0 * p_n);
}

PubkeyOverhead pubkey_overhead(std::uint64_t file_bytes, std::uint64_t m, std::uint64_t p_bits,
                               std::uint64_t q_bits) {
  if (file_bytes < 1 || m < 1 || p_bits < 1 || q_bits < 1)
    throw std::invalid_argument("pubkey_overhead: all sizes must be positive");
  const std::uint64_t bits = 8 * file_bytes;
  const std::uint64_t per_row = m * p_bits;
  const std::uint64_t l = (bits + per_row - 1) / per_row;
  const double fraction = static_cast<double>(m + l) * static_cast<double>(q_bits) / static_cast<double>(bits);
  return {l, fraction};
}

double scheme_cost(Scheme scheme, const CostModelParams& params) {
  switch (scheme) {
    case Scheme::packet: return packet_scheme_cost(params);
    case Scheme::e2e: return e2e_cost(params.p_n);
    case Scheme::generation: return generation_scheme_cost(params);
  }
  throw std::invalid_argument("unknown scheme");
}

std::vector<double> p_n_grid(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw std::invalid_argument("grid step must lie in (0, 1]");
  const auto k_max = static_cast<std::int64_t>(std::floor(1.0 / step + 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(k_max) + 2);
  for (std::int64_t k = 0; k <= k_max; ++k) grid.push_back(std::min(1.0, static_cast<double>(k) * step));
  if (grid.back() < 1.0) grid.push_back(1.0);
  return grid;
}

CostCurve cost_curve(Scheme scheme, CostModelParams params, const std::vector<double>& grid) {
  CostCurve curve{to_string(scheme), {}};
  if (scheme == Scheme::generation) curve.label += "_G" + std::to_string(params.G);
  curve.points.reserve(grid.size());
  for (double p : grid) {
    params.p_n = p;
    curve.points.push_back({p, scheme_cost(scheme, params)});
  }
  return curve;
}

std::vector<Interval> crossover(Scheme a, Scheme b, const CostModelParams& params, double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 0.1)) throw std::invalid_argument("crossover: grid_step must lie in (0, 0.1]");
  std::vector<Interval> out;
  CostModelParams at = params;
  bool open = false;
  for (double p : p_n_grid(grid_step)) {
    at.p_n = p;
    const bool a_le_b = scheme_cost(a, at) <= scheme_cost(b, at) + kTieSlack;
    if (a_le_b && !open) {
      out.push_back({p, p});
      open = true;
    } else if (a_le_b) {
      out.back().hi = p;
    } else {
      open = false;
    }
  }
  return out;
}

double generation_cost_argmax(CostModelParams params, double grid_step) {
  double best_p = 0.0;
  double best = -1.0;
  for (double p : p_n_grid(grid_step)) {
    params.p_n = p;
    const double c = generation_scheme_cost(params);
    if (c > best) {
      best = c;
      best_p = p;
    }
  }
  return best_p;
}

}  // namespace ncguard::overhead
