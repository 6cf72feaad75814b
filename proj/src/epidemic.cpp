#include "ncguard/epidemic.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "ncguard/errors.hpp"

namespace ncguard::epidemic {

namespace {

struct Topology {
  std::vector<std::int64_t> level_s;      // N_s
  std::vector<char> byzantine;            // indexed by node id
  std::vector<char> in_level_s;
  std::vector<std::int64_t> overlap;      // N_r ∩ N_s
  std::vector<std::int64_t> activation;   // N_r \ N_s in activation order
  std::int64_t n_b = 0;
};

// Partial Fisher-Yates: first k entries of ids become a uniform k-subset.
void choose_prefix(std::vector<std::int64_t>& ids, std::size_t k, Rng& rng) {
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t pick = j + uniform_below(rng, ids.size() - j);
    std::swap(ids[j], ids[pick]);
  }
}

Topology sample_topology(const SimConfig& cfg, Rng& rng) {
  const auto n = static_cast<std::size_t>(cfg.n_total);
  Topology topo;
  std::vector<std::int64_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  choose_prefix(ids, static_cast<std::size_t>(cfg.n_s), rng);
  topo.level_s.assign(ids.begin(), ids.begin() + cfg.n_s);
  std::sort(topo.level_s.begin(), topo.level_s.end());
  topo.in_level_s.assign(n, 0);
  for (auto v : topo.level_s) topo.in_level_s[static_cast<std::size_t>(v)] = 1;

  topo.byzantine.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) topo.byzantine[v] = bernoulli(rng, cfg.p_b) ? 1 : 0;
  for (auto v : topo.level_s) topo.n_b += topo.byzantine[static_cast<std::size_t>(v)];

  std::iota(ids.begin(), ids.end(), 0);
  choose_prefix(ids, static_cast<std::size_t>(cfg.n_r), rng);
  std::vector<std::int64_t> level_r(ids.begin(), ids.begin() + cfg.n_r);
  std::sort(level_r.begin(), level_r.end());
  for (auto v : level_r) {
    if (topo.in_level_s[static_cast<std::size_t>(v)])
      topo.overlap.push_back(v);
    else
      topo.activation.push_back(v);
  }
  // uniformly random activation order
  choose_prefix(topo.activation, topo.activation.size(), rng);
  return topo;
}

template <typename Fn>
void parallel_for(std::uint64_t begin, std::uint64_t end, unsigned workers, Fn&& fn) {
  const std::uint64_t count = end - begin;
  const unsigned w = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::uint64_t>(count, 1))));
  if (w == 1) {
    for (std::uint64_t k = begin; k < end; ++k) fn(k);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (unsigned id = 0; id < w; ++id) {
    pool.emplace_back([&, id] {
      for (std::uint64_t k = begin + id; k < end; k += w) fn(k);
    });
  }
  for (auto& th : pool) th.join();
}

bool in_span(const std::vector<rlnc::CodedPacket>& basis, const rlnc::CodedPacket& w) {
  std::vector<rlnc::CodedPacket> rows = basis;
  rows.push_back(w);
  return rlnc::rank(rows) == basis.size();
}

std::unique_ptr<CodedSetup> maybe_setup(const SimConfig& config) {
  if (config.mode != SimMode::full_coded) return nullptr;
  return std::make_unique<CodedSetup>(make_coded_setup(config));
}

}  // namespace

std::string to_string(ListMode mode) { return mode == ListMode::static_list ? "static" : "evolving"; }
std::string to_string(SimMode mode) { return mode == SimMode::boolean ? "boolean" : "full-coded"; }

ListMode list_mode_from_string(const std::string& name) {
  if (name == "static") return ListMode::static_list;
  if (name == "evolving") return ListMode::evolving;
  throw std::invalid_argument("unknown list mode: " + name);
}

SimMode sim_mode_from_string(const std::string& name) {
  if (name == "boolean") return SimMode::boolean;
  if (name == "full-coded" || name == "full_coded") return SimMode::full_coded;
  throw std::invalid_argument("unknown simulation mode: " + name);
}

void SimConfig::validate() const {
  if (n_s < 1) throw std::invalid_argument("n_s must be >= 1");
  if (d < 2) throw std::invalid_argument("d must be >= 2");
  if (d >= n_s) throw std::invalid_argument("d must be < n_s");
  if (n_s > n_r) throw std::invalid_argument("n_s must be <= n_r");
  if (n_r > n_total) throw std::invalid_argument("n_r must be <= n_total");
  if (!(p_b >= 0.0 && p_b <= 1.0)) throw std::invalid_argument("p_b must lie in [0, 1]");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (max_attempt_factor < 1) throw std::invalid_argument("max_attempt_factor must be >= 1");
  if (mode == SimMode::full_coded) {
    if (!coded) throw std::invalid_argument("full-coded mode needs coded settings");
    if (coded->m < 1 || coded->l < 1) throw std::invalid_argument("coded m and l must be >= 1");
    if (!modmath::validate(coded->params)) throw std::invalid_argument("coded group parameters are invalid");
  }
}

CodedSetup make_coded_setup(const SimConfig& config) {
  if (!config.coded) throw std::invalid_argument("make_coded_setup: no coded settings");
  const auto& c = *config.coded;
  Rng rng = derive_rng(config.seed, ~0ULL);
  auto file = rlnc::random_file(c.params.p, c.m, c.l, rng);
  auto basis = rlnc::augment(file);
  auto keys = sig::keygen(c.params, c.m + c.l, rng);
  auto signature = sig::sign_file(keys.priv, basis, rng);
  return {std::move(file), std::move(basis), std::move(keys), std::move(signature)};
}

TrialOutcome run_trial(const SimConfig& config, Rng& rng) {
  const Topology topo = sample_topology(config, rng);
  const auto n = static_cast<std::size_t>(config.n_total);
  std::vector<char> contaminated(n, 0);
  for (auto v : topo.level_s) contaminated[static_cast<std::size_t>(v)] = topo.byzantine[static_cast<std::size_t>(v)];

  TrialOutcome out;
  out.y = static_cast<std::int64_t>(topo.overlap.size());
  out.n_b = topo.n_b;
  out.contaminated_series.reserve(topo.activation.size() + 1);
  out.contaminated_series.push_back(topo.n_b);
  for (auto v : topo.overlap) out.blocked = out.blocked || contaminated[static_cast<std::size_t>(v)];

  std::vector<std::int64_t> tracker_list = topo.level_s;
  std::vector<std::int64_t> draw;
  std::int64_t c_now = topo.n_b;
  const auto d = static_cast<std::size_t>(config.d);
  for (auto node : topo.activation) {
    draw = tracker_list;
    choose_prefix(draw, d, rng);
    bool bad = topo.byzantine[static_cast<std::size_t>(node)] != 0;
    for (std::size_t k = 0; k < d && !bad; ++k) bad = contaminated[static_cast<std::size_t>(draw[k])] != 0;
    contaminated[static_cast<std::size_t>(node)] = bad ? 1 : 0;
    if (bad) {
      ++c_now;
      out.blocked = true;
    }
    out.contaminated_series.push_back(c_now);
    if (config.list_mode == ListMode::evolving) tracker_list.push_back(node);
  }
  return out;
}

TrialOutcome run_full_coded_trial(const SimConfig& config, const CodedSetup& setup, Rng& rng) {
  if (!config.coded) throw std::invalid_argument("run_full_coded_trial: no coded settings");
  const auto& coded = *config.coded;
  const Topology topo = sample_topology(config, rng);
  const auto n = static_cast<std::size_t>(config.n_total);
  const auto& p = coded.params.p;

  std::vector<std::optional<rlnc::CodedPacket>> stored(n);
  std::vector<char> contaminated(n, 0);

  TrialOutcome out;
  out.y = static_cast<std::int64_t>(topo.overlap.size());
  out.n_b = topo.n_b;

  for (auto v : topo.level_s) {
    const auto vi = static_cast<std::size_t>(v);
    if (topo.byzantine[vi]) {
      stored[vi] = rlnc::random_packet(p, coded.m, coded.l, rng);
      contaminated[vi] = 1;
    } else {
      stored[vi] = rlnc::random_recombine(setup.basis, rng);
    }
  }
  std::int64_t c_now = topo.n_b;
  out.contaminated_series.push_back(c_now);

  // Honest retrieval: optionally verify, tally against ground-truth membership.
  auto accept = [&](const rlnc::CodedPacket& pk) {
    const bool valid = in_span(setup.basis, pk);
    if (!valid) ++out.contaminated_retrieved;
    if (!coded.verify_enabled) return true;
    const bool ok = sig::verify_packet(setup.keys.pub, setup.signature, pk);
    if (!ok) {
      ++out.detected_count;
      if (valid) ++out.valid_rejected;
      else ++out.contaminated_rejected;
    }
    return ok;
  };

  std::vector<std::int64_t> tracker_list = topo.level_s;
  const auto d = static_cast<std::size_t>(config.d);
  std::vector<std::int64_t> draw;
  for (auto node : topo.activation) {
    const auto ni = static_cast<std::size_t>(node);
    draw = tracker_list;
    choose_prefix(draw, std::min(d, draw.size()), rng);
    draw.resize(std::min(d, draw.size()));
    if (topo.byzantine[ni]) {
      stored[ni] = rlnc::random_packet(p, coded.m, coded.l, rng);
      contaminated[ni] = 1;
    } else {
      std::vector<rlnc::CodedPacket> accepted;
      for (auto parent : draw) {
        const auto& pk = *stored[static_cast<std::size_t>(parent)];
        if (accept(pk)) accepted.push_back(pk);
      }
      if (accepted.empty()) {
        ++out.dropped_count;
      } else {
        rlnc::CodedPacket mix = rlnc::random_recombine(accepted, rng);
        while (mix.is_zero() && std::any_of(accepted.begin(), accepted.end(), [](const auto& a) { return !a.is_zero(); }))
          mix = rlnc::random_recombine(accepted, rng);
        contaminated[ni] = in_span(setup.basis, mix) ? 0 : 1;
        if (contaminated[ni]) ++out.honest_contaminated_stored;
        stored[ni] = std::move(mix);
      }
    }
    if (contaminated[ni]) ++c_now;
    out.contaminated_series.push_back(c_now);
    if (stored[ni] && config.list_mode == ListMode::evolving) tracker_list.push_back(node);
  }

  // Receiver collects from every level-r node that holds a packet.
  std::vector<rlnc::CodedPacket> received;
  auto collect = [&](std::int64_t v) {
    const auto vi = static_cast<std::size_t>(v);
    if (!stored[vi]) return;
    if (accept(*stored[vi])) received.push_back(*stored[vi]);
  };
  for (auto v : topo.overlap) collect(v);
  for (auto v : topo.activation) collect(v);

  if (!received.empty()) {
    rlnc::Matrix coding;
    for (const auto& pk : received) coding.emplace_back(pk.coding_vector().begin(), pk.coding_vector().end());
    out.receiver_full_rank = rlnc::reduce_rows(coding, p).size() == coded.m;
    try {
      out.decoded_exact = rlnc::decode(received) == setup.file;
    } catch (const Error&) {
      out.decoded_exact = false;
    }
  }
  out.blocked = !out.decoded_exact;
  return out;
}

TrialOutcome run_indexed_trial(const SimConfig& config, const CodedSetup* setup, std::uint64_t index) {
  Rng rng = derive_rng(config.seed, index);
  if (config.mode == SimMode::full_coded) {
    if (setup == nullptr) throw std::invalid_argument("run_indexed_trial: full-coded mode needs a setup");
    return run_full_coded_trial(config, *setup, rng);
  }
  return run_trial(config, rng);
}

BlockingEstimate estimate_blocking(const SimConfig& config) {
  config.validate();
  const auto setup = maybe_setup(config);
  std::vector<char> blocked(config.trials, 0);
  parallel_for(0, config.trials, config.workers, [&](std::uint64_t k) {
    blocked[k] = run_indexed_trial(config, setup.get(), k).blocked ? 1 : 0;
  });
  const auto hits = static_cast<double>(std::count(blocked.begin(), blocked.end(), 1));
  const auto n = static_cast<double>(config.trials);
  const double mean = hits / n;
  return {mean, std::sqrt(mean * (1.0 - mean) / n), config.trials};
}

SeriesEstimate contamination_series(const SimConfig& config, std::optional<std::int64_t> condition_y) {
  config.validate();
  if (condition_y && (*condition_y < 0 || *condition_y > config.n_s))
    throw std::invalid_argument("condition_y must lie in [0, n_s]");
  const auto setup = maybe_setup(config);

  const std::size_t length = static_cast<std::size_t>(config.n_r - (condition_y ? *condition_y : 0)) + 1;
  std::vector<double> sum(length, 0.0), sum_sq(length, 0.0);
  const std::uint64_t target = config.trials;
  const std::uint64_t budget = condition_y ? target * config.max_attempt_factor : target;
  const std::uint64_t chunk = std::max<std::uint64_t>(target, 4096);

  SeriesEstimate est;
  std::uint64_t next = 0;
  std::vector<TrialOutcome> batch;
  while (est.accepted < target && next < budget) {
    const std::uint64_t count = std::min(chunk, budget - next);
    batch.assign(count, TrialOutcome{});
    parallel_for(0, count, config.workers, [&](std::uint64_t k) {
      batch[k] = run_indexed_trial(config, setup.get(), next + k);
    });
    for (std::uint64_t k = 0; k < count && est.accepted < target; ++k) {
      ++est.attempts;
      const auto& o = batch[k];
      if (condition_y && o.y != *condition_y) continue;
      ++est.accepted;
      for (std::size_t t = 0; t < length; ++t) {
        // after the last activation the count stays put
        const auto c = static_cast<double>(o.contaminated_series[std::min(t, o.contaminated_series.size() - 1)]);
        sum[t] += c;
        sum_sq[t] += c * c;
      }
    }
    next += count;
  }
  if (est.accepted == 0) throw ConditioningStarved(est.attempts);

  const auto n = static_cast<double>(est.accepted);
  for (std::size_t t = 0; t < length; ++t) {
    const double mean = sum[t] / n;
    const double var = est.accepted > 1 ? std::max(0.0, (sum_sq[t] - n * mean * mean) / (n - 1.0)) : 0.0;
    est.points.push_back({static_cast<std::int64_t>(t), mean, std::sqrt(var / n)});
  }
  return est;
}

CodedSummary run_full_coded(const SimConfig& config) {
  config.validate();
  if (config.mode != SimMode::full_coded) throw std::invalid_argument("run_full_coded: mode must be full-coded");
  const CodedSetup setup = make_coded_setup(config);
  std::vector<TrialOutcome> outcomes(config.trials);
  parallel_for(0, config.trials, config.workers, [&](std::uint64_t k) {
    outcomes[k] = run_indexed_trial(config, &setup, k);
  });
  CodedSummary s;
  std::uint64_t blocked = 0;
  for (const auto& o : outcomes) {
    blocked += o.blocked ? 1 : 0;
    s.detected += o.detected_count;
    s.dropped += o.dropped_count;
    s.contaminated_retrieved += o.contaminated_retrieved;
    s.contaminated_rejected += o.contaminated_rejected;
    s.valid_rejected += o.valid_rejected;
    s.honest_contaminated_stored += o.honest_contaminated_stored;
    s.receiver_full_rank += o.receiver_full_rank ? 1 : 0;
    s.decoded_exact += o.decoded_exact ? 1 : 0;
    if (o.receiver_full_rank && !o.decoded_exact) ++s.full_rank_decode_failures;
  }
  const auto n = static_cast<double>(config.trials);
  const double mean = static_cast<double>(blocked) / n;
  s.blocking = {mean, std::sqrt(mean * (1.0 - mean) / n), config.trials};
  return s;
}

}  // namespace ncguard::epidemic
