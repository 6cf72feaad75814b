#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncguard/modmath.hpp"
#include "ncguard/random.hpp"
#include "ncguard/rlnc.hpp"
#include "ncguard/sigscheme.hpp"

namespace ncguard::epidemic {

enum class ListMode { static_list, evolving };
enum class SimMode { boolean, full_coded };

std::string to_string(ListMode mode);
std::string to_string(SimMode mode);
ListMode list_mode_from_string(const std::string& name);
SimMode sim_mode_from_string(const std::string& name);

/// Settings that only matter when nodes carry real coded packets.
struct CodedConfig {
  std::size_t m = 3;
  std::size_t l = 8;
  modmath::GroupParams params;
  bool verify_enabled = true;
};

struct SimConfig {
  std::int64_t n_total = 30;
  std::int64_t n_s = 5;
  std::int64_t n_r = 6;
  std::int64_t d = 3;
  double p_b = 0.0;
  ListMode list_mode = ListMode::static_list;
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 1;
  SimMode mode = SimMode::boolean;
  unsigned workers = 1;
  /// Conditioned runs may examine up to trials * max_attempt_factor trial indices.
  std::uint64_t max_attempt_factor = 1000;
  std::optional<CodedConfig> coded;

  void validate() const;
};

/// One realisation of the dissemination process.
struct TrialOutcome {
  bool blocked = false;
  std::int64_t y = 0;
  std::int64_t n_b = 0;
  /// C(t) for t = 0 .. n_r - y.
  std::vector<std::int64_t> contaminated_series;

  // full-coded mode only
  std::uint64_t detected_count = 0;           ///< packets failing verification at honest nodes
  std::uint64_t dropped_count = 0;            ///< honest nodes left with no accepted parent
  std::uint64_t contaminated_retrieved = 0;   ///< contaminated packets fetched by honest nodes
  std::uint64_t contaminated_rejected = 0;
  std::uint64_t valid_rejected = 0;           ///< valid packets that failed verification
  std::uint64_t honest_contaminated_stored = 0;
  bool receiver_full_rank = false;            ///< receiver held m independent accepted packets
  bool decoded_exact = false;
};

/// Pre-generated file, basis, keys and signature shared by full-coded trials.
struct CodedSetup {
  rlnc::FilePayload file;
  std::vector<rlnc::CodedPacket> basis;
  sig::KeyPair keys;
  sig::FileSignature signature;
};

/// Deterministic in config.seed.
CodedSetup make_coded_setup(const SimConfig& config);

TrialOutcome run_trial(const SimConfig& config, Rng& rng);
TrialOutcome run_full_coded_trial(const SimConfig& config, const CodedSetup& setup, Rng& rng);

/// Trial `index` of a run: its own stream derived from (seed, index).
TrialOutcome run_indexed_trial(const SimConfig& config, const CodedSetup* setup, std::uint64_t index);

struct BlockingEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

BlockingEstimate estimate_blocking(const SimConfig& config);

struct SeriesPoint {
  std::int64_t t;
  double mean;
  double std_error;
};

struct SeriesEstimate {
  std::vector<SeriesPoint> points;
  std::uint64_t accepted = 0;
  std::uint64_t attempts = 0;
};

/// Mean C(t). With condition_y, trials whose overlap differs are discarded
/// until config.trials are accepted (ConditioningStarved if none are).
SeriesEstimate contamination_series(const SimConfig& config, std::optional<std::int64_t> condition_y);

struct CodedSummary {
  BlockingEstimate blocking;
  std::uint64_t detected = 0;
  std::uint64_t dropped = 0;
  std::uint64_t contaminated_retrieved = 0;
  std::uint64_t contaminated_rejected = 0;
  std::uint64_t valid_rejected = 0;
  std::uint64_t honest_contaminated_stored = 0;
  std::uint64_t receiver_full_rank = 0;
  std::uint64_t decoded_exact = 0;
  /// Trials where the receiver had full rank but did not recover the file.
  std::uint64_t full_rank_decode_failures = 0;
};

CodedSummary run_full_coded(const SimConfig& config);

}  // namespace ncguard::epidemic
