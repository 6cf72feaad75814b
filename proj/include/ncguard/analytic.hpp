#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

namespace ncguard::analytic {

/// Topology of the dissemination model plus the Byzantine probability.
struct ModelParams {
  std::int64_t n_total = 0;
  std::int64_t n_s = 0;
  std::int64_t n_r = 0;
  std::int64_t d = 0;
  double p_b = 0.0;

  /// Throws std::invalid_argument unless 2 <= d < n_s <= n_r <= n_total and p_b in [0,1].
  void validate() const;
};

/// Contaminated / uncontaminated informed nodes at one depth of the chain.
struct MarkovState {
  std::int64_t contaminated = 0;
  std::int64_t uncontaminated = 0;

  auto operator<=>(const MarkovState&) const = default;
};

using StateDistribution = std::map<MarkovState, double>;

/// How the y level-r nodes already in N_s are charged for Byzantine level-s nodes.
enum class OverlapModel {
  /// h(0; n_s, i, y): the overlap is a uniform y-subset of N_s (exact for the process).
  hypergeometric,
  /// (1 - i/n_s)^y: treats the y overlap picks as independent draws.
  with_replacement,
};

/// Exact binomial coefficient (arbitrary precision), converted to double.
double binomial_coefficient(std::int64_t n, std::int64_t k);

/// C(K,k) C(N-K,n-k) / C(N,n); zero outside the support.
double hypergeom_pmf(std::int64_t k, std::int64_t N, std::int64_t K, std::int64_t n);

double binom_pmf(std::int64_t i, std::int64_t n, double p);

/// Probability that a level-r node starting from Nb = i, Y = y sees no contamination.
double success_probability_static(const ModelParams& params, std::int64_t i, std::int64_t y,
                                  OverlapModel overlap = OverlapModel::hypergeometric);
double success_probability_evolving(const ModelParams& params, std::int64_t i, std::int64_t y,
                                    OverlapModel overlap = OverlapModel::hypergeometric);

double blocking_static(const ModelParams& params, OverlapModel overlap = OverlapModel::hypergeometric);
double blocking_evolving(const ModelParams& params, OverlapModel overlap = OverlapModel::hypergeometric);

/// Distribution over (C(t), C-bar(t)) after t added nodes, starting from (i, n_s - i).
StateDistribution markov_state_distribution(std::int64_t n_s, std::int64_t i, std::int64_t y,
                                            std::int64_t n_r, std::int64_t d, double p_b, std::int64_t t);

/// Mass of the all-uncontaminated path (i, n_s - i + t) at depth t.
double success_path_mass(const StateDistribution& dist, std::int64_t n_s, std::int64_t i, std::int64_t t);

double expected_contaminated_static(const ModelParams& params, std::int64_t y, std::int64_t t);
double expected_contaminated_evolving(const ModelParams& params, std::int64_t y, std::int64_t t);

struct BlockingPoint {
  double p_b;
  double psi_static;
  double psi_evolving;
};

struct ContaminationPoint {
  std::int64_t t;
  double e_c_static;
  double e_c_evolving;
};

std::vector<BlockingPoint> blocking_curve(ModelParams params, const std::vector<double>& p_b_grid,
                                          OverlapModel overlap = OverlapModel::hypergeometric);
std::vector<ContaminationPoint> contamination_curve(const ModelParams& params, std::int64_t y);

}  // namespace ncguard::analytic
