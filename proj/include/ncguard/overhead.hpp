#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ncguard::overhead {

/// Per-node cost model inputs. `packets_per_slot` (M) cancels out of every
/// ratio and is kept only so callers can record it.
struct CostModelParams {
  std::uint64_t m = 100;
  std::uint64_t l = 5000;
  std::uint64_t G = 100;
  double p_n = 0.0;
  double op_rate = 0.06;
  double og_rate = 0.02;
  std::uint64_t packets_per_slot = 1;

  void validate() const;
};

enum class Scheme { packet, e2e, generation };

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

/// Signature cost: max{0, o_p - (m+l) p_n} / (m+l) with o_p = op_rate (m+l).
double packet_scheme_cost(const CostModelParams& params);
/// Pre-clamp value of the packet-signature cost; negative means net savings.
double packet_scheme_cost_raw(const CostModelParams& params);

/// End-to-end correction: contaminated symbols forwarded, as a fraction of data received.
double e2e_cost(double p_n);

double generation_drop_prob(double p_n, std::uint64_t G);

/// Generation-based detection: max{0, o_g + p_g (1-p_n) (m+l) G - p_n (m+l) G} / ((m+l) G)
/// with o_g = og_rate (m+l) G.
double generation_scheme_cost(const CostModelParams& params);
double generation_scheme_cost_raw(const CostModelParams& params);

/// max{0, 1 - 2 p_n}: the large-G limit with the hash term neglected. With
/// og_rate kept, the generation cost tends to og_rate + 1 - 2 p_n.
double generation_cost_limit(double p_n);

/// Public key size relative to the file, l = ceil(8 file_bytes / (m p_bits)).
struct PubkeyOverhead {
  std::uint64_t l;
  double fraction;
};
PubkeyOverhead pubkey_overhead(std::uint64_t file_bytes, std::uint64_t m, std::uint64_t p_bits,
                               std::uint64_t q_bits);

double scheme_cost(Scheme scheme, const CostModelParams& params);

struct CostPoint {
  double p_n;
  double cost;
};

struct CostCurve {
  std::string label;
  std::vector<CostPoint> points;
};

/// p_n = k * step for k = 0..K with the last point pinned at 1.
std::vector<double> p_n_grid(double step);

CostCurve cost_curve(Scheme scheme, CostModelParams params, const std::vector<double>& grid);

struct Interval {
  double lo;
  double hi;
};

/// Maximal runs of grid points where cost(A) <= cost(B) (1e-12 slack).
std::vector<Interval> crossover(Scheme a, Scheme b, const CostModelParams& params, double grid_step);

/// Grid point maximising the generation-scheme cost for fixed G.
double generation_cost_argmax(CostModelParams params, double grid_step);

}  // namespace ncguard::overhead
