#include "ncguard/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include <gmpxx.h>

namespace ncguard::analytic {

namespace {

mpz_class binomial_exact(std::int64_t n, std::int64_t k) {
  mpz_class out;
  if (k < 0 || n < 0 || k > n) return out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

mpq_class hypergeom_exact(std::int64_t k, std::int64_t N, std::int64_t K, std::int64_t n) {
  if (k < 0 || k > K || n - k < 0 || n - k > N - K) return 0;
  mpq_class r(binomial_exact(K, k) * binomial_exact(N - K, n - k), binomial_exact(N, n));
  r.canonicalize();
  return r;
}

// mpq get_d truncates; divide exactly-representable parts to round correctly.
double to_double(const mpq_class& q) {
  if (mpz_sizeinbase(q.get_num_mpz_t(), 2) <= 53 && mpz_sizeinbase(q.get_den_mpz_t(), 2) <= 53)
    return q.get_num().get_d() / q.get_den().get_d();
  return q.get_d();
}

void check_prob(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability must lie in [0, 1]");
}

void check_time(const ModelParams& params, std::int64_t y, std::int64_t t) {
  if (y < 0 || y > params.n_s || y > params.n_r) throw std::invalid_argument("overlap y out of range");
  if (t < 0 || t > params.n_r - y) throw std::invalid_argument("time t must lie in [0, n_r - y]");
}

double overlap_clean(const ModelParams& params, std::int64_t i, std::int64_t y, OverlapModel overlap) {
  if (overlap == OverlapModel::hypergeometric) return hypergeom_pmf(0, params.n_s, i, y);
  return std::pow(1.0 - static_cast<double>(i) / static_cast<double>(params.n_s), static_cast<double>(y));
}

// 1 - sum_y h(y) sum_i b(i) f(i,y); the outer mixture is accumulated exactly so
// that the p_b = 0 and p_b = 1 anchors come out as exact 0 and 1.
template <typename SuccessFn>
double blocking(const ModelParams& params, SuccessFn&& success) {
  params.validate();
  mpq_class gamma = 0;
  for (std::int64_t y = 0; y <= params.n_s; ++y) {
    const mpq_class hy = hypergeom_exact(y, params.n_total, params.n_s, params.n_r);
    if (sgn(hy) == 0) continue;
    double inner = 0.0;
    for (std::int64_t i = 0; i <= params.n_s; ++i) {
      const double b = binom_pmf(i, params.n_s, params.p_b);
      if (b == 0.0) continue;
      inner += b * success(i, y);
    }
    gamma += hy * mpq_class(inner);
  }
  return to_double(mpq_class(1 - gamma));
}

}  // namespace

void ModelParams::validate() const {
  if (d < 2) throw std::invalid_argument("d must be >= 2");
  if (d >= n_s) throw std::invalid_argument("d must be < n_s");
  if (n_s > n_r) throw std::invalid_argument("n_s must be <= n_r");
  if (n_r > n_total) throw std::invalid_argument("n_r must be <= n_total");
  check_prob(p_b);
}

double binomial_coefficient(std::int64_t n, std::int64_t k) { return binomial_exact(n, k).get_d(); }

double hypergeom_pmf(std::int64_t k, std::int64_t N, std::int64_t K, std::int64_t n) {
  if (N < 0 || K < 0 || K > N || n < 0 || n > N)
    throw std::invalid_argument("hypergeom_pmf: require 0 <= K <= N and 0 <= n <= N");
  return to_double(hypergeom_exact(k, N, K, n));
}

double binom_pmf(std::int64_t i, std::int64_t n, double p) {
  if (n < 0 || i < 0 || i > n) throw std::invalid_argument("binom_pmf: require 0 <= i <= n");
  check_prob(p);
  return binomial_coefficient(n, i) * std::pow(p, static_cast<double>(i)) *
         std::pow(1.0 - p, static_cast<double>(n - i));
}

double success_probability_static(const ModelParams& params, std::int64_t i, std::int64_t y,
                                  OverlapModel overlap) {
  const double per_node = (1.0 - params.p_b) * hypergeom_pmf(0, params.n_s, i, params.d);
  return overlap_clean(params, i, y, overlap) * std::pow(per_node, static_cast<double>(params.n_r - y));
}

double success_probability_evolving(const ModelParams& params, std::int64_t i, std::int64_t y,
                                    OverlapModel overlap) {
  double prod = overlap_clean(params, i, y, overlap);
  for (std::int64_t t = 1; t <= params.n_r - y && prod != 0.0; ++t)
    prod *= (1.0 - params.p_b) * hypergeom_pmf(0, params.n_s + t - 1, i, params.d);
  return prod;
}

double blocking_static(const ModelParams& params, OverlapModel overlap) {
  return blocking(params, [&](std::int64_t i, std::int64_t y) {
    return success_probability_static(params, i, y, overlap);
  });
}

double blocking_evolving(const ModelParams& params, OverlapModel overlap) {
  return blocking(params, [&](std::int64_t i, std::int64_t y) {
    return success_probability_evolving(params, i, y, overlap);
  });
}

StateDistribution markov_state_distribution(std::int64_t n_s, std::int64_t i, std::int64_t y,
                                            std::int64_t n_r, std::int64_t d, double p_b, std::int64_t t) {
  if (i < 0 || i > n_s) throw std::invalid_argument("markov: i must lie in [0, n_s]");
  if (y < 0 || y > n_r) throw std::invalid_argument("markov: y out of range");
  if (t < 0 || t > n_r - y) throw std::invalid_argument("markov: t must lie in [0, n_r - y]");
  if (d < 1 || d > n_s) throw std::invalid_argument("markov: d must lie in [1, n_s]");
  check_prob(p_b);

  StateDistribution dist{{MarkovState{i, n_s - i}, 1.0}};
  for (std::int64_t step = 1; step <= t; ++step) {
    StateDistribution next;
    for (const auto& [s, mass] : dist) {
      // the pool at this step holds n_s + step - 1 informed nodes, s.contaminated of them bad
      const double clean = (1.0 - p_b) * hypergeom_pmf(0, n_s + step - 1, s.contaminated, d);
      if (clean < 1.0) next[{s.contaminated + 1, s.uncontaminated}] += mass * (1.0 - clean);
      if (clean > 0.0) next[{s.contaminated, s.uncontaminated + 1}] += mass * clean;
    }
    dist = std::move(next);
  }
  return dist;
}

double success_path_mass(const StateDistribution& dist, std::int64_t n_s, std::int64_t i, std::int64_t t) {
  const auto it = dist.find(MarkovState{i, n_s - i + t});
  return it == dist.end() ? 0.0 : it->second;
}

double expected_contaminated_static(const ModelParams& params, std::int64_t y, std::int64_t t) {
  params.validate();
  check_time(params, y, t);
  double acc = 0.0;
  for (std::int64_t i = 0; i <= params.n_s; ++i) {
    const double hit = 1.0 - (1.0 - params.p_b) * hypergeom_pmf(0, params.n_s, i, params.d);
    acc += binom_pmf(i, params.n_s, params.p_b) * (static_cast<double>(i) + static_cast<double>(t) * hit);
  }
  return acc;
}

double expected_contaminated_evolving(const ModelParams& params, std::int64_t y, std::int64_t t) {
  params.validate();
  check_time(params, y, t);
  double acc = 0.0;
  for (std::int64_t i = 0; i <= params.n_s; ++i) {
    const double b = binom_pmf(i, params.n_s, params.p_b);
    if (b == 0.0) continue;
    const auto dist = markov_state_distribution(params.n_s, i, y, params.n_r, params.d, params.p_b, t);
    double mean = 0.0;
    for (const auto& [s, mass] : dist) mean += static_cast<double>(s.contaminated) * mass;
    acc += b * mean;
  }
  return acc;
}

std::vector<BlockingPoint> blocking_curve(ModelParams params, const std::vector<double>& p_b_grid,
                                          OverlapModel overlap) {
  std::vector<BlockingPoint> out;
  out.reserve(p_b_grid.size());
  for (double pb : p_b_grid) {
    params.p_b = pb;
    out.push_back({pb, blocking_static(params, overlap), blocking_evolving(params, overlap)});
  }
  return out;
}

std::vector<ContaminationPoint> contamination_curve(const ModelParams& params, std::int64_t y) {
  std::vector<ContaminationPoint> out;
  for (std::int64_t t = 0; t <= params.n_r - y; ++t)
    out.push_back({t, expected_contaminated_static(params, y, t), expected_contaminated_evolving(params, y, t)});
  return out;
}

}  // namespace ncguard::analytic
