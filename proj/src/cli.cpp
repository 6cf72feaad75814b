#include "ncguard/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncguard/analytic.hpp"
#include "ncguard/epidemic.hpp"
#include "ncguard/errors.hpp"
#include "ncguard/io.hpp"
#include "ncguard/modmath.hpp"
#include "ncguard/rlnc.hpp"
#include "ncguard/sigscheme.hpp"

namespace ncguard::cli {

namespace fs = std::filesystem;
using nlohmann::json;

Preset preset(const std::string& name) {
  Preset p;
  p.name = name;
  if (name == "fig3") return p;
  if (name == "fig4") {
    p.y = 1;
    return p;
  }
  if (name == "fig5") {
    p.generation_sizes = {10, 100, 1000};
    return p;
  }
  if (name == "fig67") {
    p.generation_sizes = {100};
    return p;
  }
  throw std::invalid_argument("unknown preset: " + name);
}

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Options shared by several subcommands; unset values fall back to presets/defaults.
struct Options {
  std::uint64_t seed = 1;
  std::string out;
  std::string preset_name;
  // topology / simulation
  std::optional<std::int64_t> n_total, n_s, n_r, d;
  std::vector<double> p_b;
  std::string list_mode = "static";
  std::string mode = "boolean";
  std::uint64_t trials = 10'000;
  unsigned workers = 1;
  bool series = false;
  std::optional<std::int64_t> condition_y;
  bool no_verify = false;
  // coding / keys
  std::optional<std::uint64_t> m, l;
  std::vector<std::uint64_t> G;
  unsigned p_bits = modmath::kDefaultPBits;
  unsigned q_bits = modmath::kDefaultQBits;
  bool p_bits_set = false;
  double op_rate = 0.06;
  double og_rate = 0.02;
  double grid_step = 0.0;
  std::uint64_t file_bytes = 0;
  // files
  std::string params_path, privkey_path, pubkey_path, sig_path, file_path, packet_path;
  std::vector<std::string> inputs;
  double rho = 0.0;
};

void emit(const Options& o, const std::string& subcommand, const std::string& payload, const json& resolved,
          std::ostream& out, std::ostream& err) {
  json manifest;
  manifest["subcommand"] = subcommand;
  manifest["parameters"] = resolved;
  manifest["seed"] = o.seed;
  manifest["version"] = kVersion;
  if (o.out.empty()) {
    out << payload;
    manifest["outputs"] = json::array({"<stdout>"});
    err << manifest.dump() << '\n';
    return;
  }
  io::write_text(o.out, payload);
  manifest["outputs"] = json::array({o.out});
  io::write_text(o.out + ".manifest.json", manifest.dump(2) + "\n");
}

analytic::ModelParams topology(const Options& o, const Preset& base) {
  analytic::ModelParams mp;
  mp.n_total = o.n_total.value_or(base.n_total);
  mp.n_s = o.n_s.value_or(base.n_s);
  mp.n_r = o.n_r.value_or(base.n_r);
  mp.d = o.d.value_or(base.d);
  return mp;
}

Preset base_preset(const Options& o, const std::string& fallback) {
  return preset(o.preset_name.empty() ? fallback : o.preset_name);
}

json topology_json(const analytic::ModelParams& mp) {
  return {{"n_total", mp.n_total}, {"n_s", mp.n_s}, {"n_r", mp.n_r}, {"d", mp.d}};
}

modmath::GroupParams load_params(const Options& o) {
  if (!o.params_path.empty()) return io::params_from_json(io::read_text(o.params_path));
  if (!o.pubkey_path.empty()) return io::public_key_from_json(io::read_text(o.pubkey_path)).params;
  if (!o.privkey_path.empty()) return io::private_key_from_json(io::read_text(o.privkey_path)).params;
  throw UsageError("need --params, --pubkey or --privkey for the field");
}

int cmd_params(const Options& o, std::ostream& out, std::ostream& err) {
  const auto params = modmath::generate_params(o.p_bits, o.q_bits, o.seed);
  emit(o, "params", io::params_to_json(params), {{"p_bits", o.p_bits}, {"q_bits", o.q_bits}}, out, err);
  return 0;
}

int cmd_keygen(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.m || !o.l) throw UsageError("keygen needs --m and --l");
  if (o.out.empty()) throw UsageError("keygen needs --out <prefix>");
  const auto params = load_params(o);
  Rng rng = derive_rng(o.seed, 0x6b6579);
  const auto pair = sig::keygen(params, *o.m + *o.l, rng);
  io::write_text(o.out + ".priv", io::private_key_to_json(pair.priv));
  io::write_text(o.out + ".pub", io::public_key_to_json(pair.pub));
  json manifest = {{"subcommand", "keygen"},
                   {"parameters", {{"m", *o.m}, {"l", *o.l}}},
                   {"seed", o.seed},
                   {"version", kVersion},
                   {"outputs", {o.out + ".priv", o.out + ".pub"}}};
  io::write_text(o.out + ".manifest.json", manifest.dump(2) + "\n");
  out << json{{"private", o.out + ".priv"}, {"public", o.out + ".pub"}}.dump() << '\n';
  (void)err;
  return 0;
}

int cmd_refresh(const Options& o, std::ostream& out, std::ostream&) {
  if (o.privkey_path.empty() || o.pubkey_path.empty() || o.out.empty())
    throw UsageError("refresh needs --privkey, --pubkey and --out <prefix>");
  const auto priv = io::private_key_from_json(io::read_text(o.privkey_path));
  const auto pub = io::public_key_from_json(io::read_text(o.pubkey_path));
  const std::size_t n = priv.alphas.size();
  double rho = o.rho;
  if (rho == 0.0) {
    if (!o.m) throw UsageError("refresh needs --rho or --m (default rho = l/(m+l))");
    rho = sig::default_refresh_fraction(*o.m, n - *o.m);
  }
  Rng rng = derive_rng(o.seed, 0x726672);
  const auto pair = sig::refresh_keys(priv, pub, rho, rng);
  io::write_text(o.out + ".priv", io::private_key_to_json(pair.priv));
  io::write_text(o.out + ".pub", io::public_key_to_json(pair.pub));
  json manifest = {{"subcommand", "refresh"},
                   {"parameters", {{"rho", rho}}},
                   {"seed", o.seed},
                   {"version", kVersion},
                   {"outputs", {o.out + ".priv", o.out + ".pub"}}};
  io::write_text(o.out + ".manifest.json", manifest.dump(2) + "\n");
  out << json{{"rho", rho}, {"private", o.out + ".priv"}, {"public", o.out + ".pub"}}.dump() << '\n';
  return 0;
}

int cmd_sign(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.privkey_path.empty() || o.file_path.empty() || !o.m) throw UsageError("sign needs --privkey, --file and --m");
  const auto priv = io::private_key_from_json(io::read_text(o.privkey_path));
  const auto bytes = io::read_bytes(o.file_path);
  const std::size_t n = priv.alphas.size();
  if (*o.m >= n) throw UsageError("--m must be smaller than the key length");
  const auto file = rlnc::payload_from_bytes(bytes, priv.params.p, *o.m, n - *o.m);
  if (file.l() != n - *o.m) throw Error("file does not fit a key of length " + std::to_string(n));
  Rng rng = derive_rng(o.seed, 0x7369676e);
  auto signature = sig::sign_file(priv, rlnc::augment(file), rng);
  signature.file_digest = io::sha256_hex(bytes);
  emit(o, "sign", io::signature_to_json(signature, bytes.size()),
       {{"m", *o.m}, {"l", file.l()}, {"file", o.file_path}, {"file_bytes", bytes.size()}}, out, err);
  return 0;
}

int cmd_encode(const Options& o, std::ostream& out, std::ostream&) {
  if (o.file_path.empty() || !o.m || o.out.empty()) throw UsageError("encode needs --file, --m and --out <dir>");
  const auto params = load_params(o);
  const auto bytes = io::read_bytes(o.file_path);
  const auto file = rlnc::payload_from_bytes(bytes, params.p, *o.m, o.l.value_or(0));
  if (o.l && file.l() != *o.l) throw Error("file does not fit in m x l symbols");
  fs::create_directories(o.out);
  json outputs = json::array();
  const auto packets = rlnc::augment(file);
  for (std::size_t i = 0; i < packets.size(); ++i) {
    std::ostringstream name;
    name << "packet_" << std::setw(4) << std::setfill('0') << i << ".bin";
    const auto path = (fs::path(o.out) / name.str()).string();
    io::write_bytes(path, rlnc::encode_packet(packets[i]));
    outputs.push_back(path);
  }
  json manifest = {{"subcommand", "encode"},
                   {"parameters", {{"m", *o.m}, {"l", file.l()}, {"file", o.file_path}, {"file_bytes", bytes.size()}}},
                   {"seed", o.seed},
                   {"version", kVersion},
                   {"outputs", outputs}};
  io::write_text((fs::path(o.out) / "manifest.json").string(), manifest.dump(2) + "\n");
  out << json{{"packets", packets.size()}, {"l", file.l()}}.dump() << '\n';
  return 0;
}

std::vector<rlnc::CodedPacket> load_packets(const Options& o) {
  if (o.inputs.empty()) throw UsageError("need at least one --in <packet>");
  std::vector<rlnc::CodedPacket> packets;
  for (const auto& path : o.inputs) packets.push_back(rlnc::decode_packet(io::read_bytes(path)));
  return packets;
}

int cmd_recombine(const Options& o, std::ostream& out, std::ostream&) {
  if (o.out.empty()) throw UsageError("recombine needs --out <packet>");
  const auto packets = load_packets(o);
  Rng rng = derive_rng(o.seed, 0x6d6978);
  const auto mixed = rlnc::random_recombine(packets, rng);
  io::write_bytes(o.out, rlnc::encode_packet(mixed));
  json manifest = {{"subcommand", "recombine"},
                   {"parameters", {{"inputs", o.inputs}}},
                   {"seed", o.seed},
                   {"version", kVersion},
                   {"outputs", {o.out}}};
  io::write_text(o.out + ".manifest.json", manifest.dump(2) + "\n");
  out << json{{"packet", o.out}}.dump() << '\n';
  return 0;
}

int cmd_decode(const Options& o, std::ostream& out, std::ostream&) {
  if (o.out.empty()) throw UsageError("decode needs --out <file>");
  const auto packets = load_packets(o);
  const auto file = rlnc::decode(packets);
  std::uint64_t length = rlnc::symbol_bytes(file.p()) * file.m() * file.l();
  std::string digest;
  if (!o.sig_path.empty()) {
    const auto signature = io::signature_from_json(io::read_text(o.sig_path), &length);
    digest = signature.file_digest;
  }
  const auto bytes = rlnc::bytes_from_payload(file, length);
  const auto actual = io::sha256_hex(bytes);
  if (!digest.empty() && digest != actual) {
    out << json{{"verdict", "digest-mismatch"}, {"expected", digest}, {"actual", actual}}.dump() << '\n';
    return 1;
  }
  io::write_bytes(o.out, bytes);
  out << json{{"verdict", "decoded"}, {"bytes", bytes.size()}, {"sha256", actual}}.dump() << '\n';
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream&) {
  if (o.pubkey_path.empty() || o.sig_path.empty() || o.packet_path.empty())
    throw UsageError("verify needs --pubkey, --sig and --packet");
  const auto pub = io::public_key_from_json(io::read_text(o.pubkey_path));
  const auto signature = io::signature_from_json(io::read_text(o.sig_path));
  const auto packet = rlnc::decode_packet(io::read_bytes(o.packet_path));
  if (packet.p() != pub.params.p) throw Error("packet field differs from the public key's p");
  const auto d = sig::verification_product(pub, signature, packet);
  const bool valid = d == 1;
  out << json{{"verdict", valid ? "valid" : "invalid"}, {"d", io::to_hex(d)}}.dump() << '\n';
  return valid ? 0 : 1;
}

epidemic::SimConfig sim_config(const Options& o, const analytic::ModelParams& mp) {
  epidemic::SimConfig cfg;
  cfg.n_total = mp.n_total;
  cfg.n_s = mp.n_s;
  cfg.n_r = mp.n_r;
  cfg.d = mp.d;
  cfg.list_mode = epidemic::list_mode_from_string(o.list_mode);
  cfg.mode = epidemic::sim_mode_from_string(o.mode);
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.workers = o.workers;
  if (cfg.mode == epidemic::SimMode::full_coded) {
    epidemic::CodedConfig coded;
    coded.m = o.m.value_or(3);
    coded.l = o.l.value_or(8);
    const unsigned p_bits = o.p_bits_set ? o.p_bits : 62;
    const unsigned q_bits = o.p_bits_set ? o.q_bits : 128;
    coded.params = modmath::generate_params(p_bits, q_bits, o.seed);
    coded.verify_enabled = !o.no_verify;
    cfg.coded = coded;
  }
  return cfg;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const Preset base = base_preset(o, "fig3");
  const auto mp = topology(o, base);
  epidemic::SimConfig cfg = sim_config(o, mp);
  json resolved = topology_json(mp);
  resolved["list_mode"] = o.list_mode;
  resolved["mode"] = o.mode;
  resolved["trials"] = o.trials;
  resolved["workers_ignored_for_results"] = o.workers;
  if (cfg.coded) {
    resolved["m"] = cfg.coded->m;
    resolved["l"] = cfg.coded->l;
    resolved["verify"] = cfg.coded->verify_enabled;
  }

  if (o.series || o.condition_y || base.y) {
    const auto y = o.condition_y ? o.condition_y : base.y;
    cfg.p_b = o.p_b.empty() ? 0.1 : o.p_b.front();
    const auto series = epidemic::contamination_series(cfg, y);
    resolved["p_b"] = cfg.p_b;
    resolved["condition_y"] = y ? json(*y) : json(nullptr);
    resolved["accepted"] = series.accepted;
    resolved["attempts"] = series.attempts;
    emit(o, "simulate", io::series_csv(series), resolved, out, err);
    return 0;
  }
  std::vector<io::BlockingRow> rows;
  const std::vector<double> grid = o.p_b.empty() ? std::vector<double>{0.05} : o.p_b;
  for (double pb : grid) {
    cfg.p_b = pb;
    rows.push_back({pb, cfg.mode, cfg.list_mode, epidemic::estimate_blocking(cfg)});
  }
  resolved["p_b"] = grid;
  emit(o, "simulate", io::blocking_csv(rows), resolved, out, err);
  return 0;
}

int cmd_analyze(const Options& o, std::ostream& out, std::ostream& err) {
  const Preset base = base_preset(o, "fig3");
  auto mp = topology(o, base);
  json resolved = topology_json(mp);
  resolved["preset"] = base.name;
  const auto y = o.condition_y ? o.condition_y : base.y;
  if (y || o.series) {
    mp.p_b = o.p_b.empty() ? 0.1 : o.p_b.front();
    mp.validate();
    const std::int64_t yy = y.value_or(1);
    resolved["p_b"] = mp.p_b;
    resolved["y"] = yy;
    emit(o, "analyze", io::expected_contamination_csv(analytic::contamination_curve(mp, yy)), resolved, out, err);
    return 0;
  }
  std::vector<double> grid = o.p_b;
  if (grid.empty()) {
    const double step = o.grid_step > 0.0 ? o.grid_step : 0.01;
    grid = overhead::p_n_grid(step);
    resolved["grid_step"] = step;
  } else {
    resolved["p_b"] = grid;
  }
  mp.p_b = 0.0;
  mp.validate();
  emit(o, "analyze", io::psi_csv(analytic::blocking_curve(mp, grid)), resolved, out, err);
  return 0;
}

overhead::CostModelParams cost_params(const Options& o, const Preset& base) {
  overhead::CostModelParams cp = base.cost;
  if (o.m) cp.m = *o.m;
  if (o.l) cp.l = *o.l;
  cp.op_rate = o.op_rate;
  cp.og_rate = o.og_rate;
  cp.validate();
  return cp;
}

int cmd_overhead(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.file_bytes > 0) {
    const std::uint64_t m = o.m.value_or(100);
    const auto po = overhead::pubkey_overhead(o.file_bytes, m, o.p_bits, o.q_bits);
    json resolved = {{"file_bytes", o.file_bytes}, {"m", m}, {"p_bits", o.p_bits}, {"q_bits", o.q_bits}};
    json verdict = {{"l", po.l}, {"pubkey_fraction", po.fraction}};
    emit(o, "overhead", verdict.dump(2) + "\n", resolved, out, err);
    return 0;
  }
  const Preset base = base_preset(o, "fig5");
  const auto cp = cost_params(o, base);
  const auto gs = o.G.empty() ? base.generation_sizes : o.G;
  const double step = o.grid_step > 0.0 ? o.grid_step : 0.005;
  json resolved = {{"preset", base.name}, {"m", cp.m}, {"l", cp.l}, {"G", gs}, {"op_rate", cp.op_rate},
                   {"og_rate", cp.og_rate}, {"grid_step", step}};
  emit(o, "overhead", io::cost_csv(cp, gs, step), resolved, out, err);
  return 0;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
  const Preset base = base_preset(o, "fig67");
  auto cp = cost_params(o, base);
  const auto gs = o.G.empty() ? base.generation_sizes : o.G;
  const double step = o.grid_step > 0.0 ? o.grid_step : 0.001;
  json crossovers = json::array();
  auto add = [&](overhead::Scheme a, overhead::Scheme b, std::uint64_t g) {
    cp.G = g;
    json runs = json::array();
    for (const auto& iv : overhead::crossover(a, b, cp, std::min(step, 0.1))) runs.push_back({iv.lo, iv.hi});
    crossovers.push_back({{"a", overhead::to_string(a)}, {"b", overhead::to_string(b)}, {"G", g}, {"a_le_b", runs}});
  };
  for (auto g : gs) {
    add(overhead::Scheme::packet, overhead::Scheme::e2e, g);
    add(overhead::Scheme::packet, overhead::Scheme::generation, g);
    add(overhead::Scheme::e2e, overhead::Scheme::generation, g);
  }
  json resolved = {{"preset", base.name}, {"m", cp.m}, {"l", cp.l}, {"G", gs}, {"op_rate", cp.op_rate},
                   {"og_rate", cp.og_rate}, {"grid_step", step}, {"crossovers", crossovers}};
  emit(o, "compare", io::cost_csv(cp, gs, step), resolved, out, err);
  return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ncguard: signed network coding, contamination simulation and cost models", "ncguard"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--out", o.out, "output path");
  };
  auto topo_flags = [&](CLI::App* sub) {
    sub->add_option("--preset", o.preset_name, "fig3 | fig4 | fig5 | fig67");
    sub->add_option("--n-total", o.n_total, "|N|");
    sub->add_option("--n-s", o.n_s, "level-s node count");
    sub->add_option("--n-r", o.n_r, "level-r node count");
    sub->add_option("--d", o.d, "tracker list size");
    sub->add_option("--p-b", o.p_b, "Byzantine probability (repeatable)");
  };
  auto size_flags = [&](CLI::App* sub) {
    sub->add_option("--m", o.m, "packets per file");
    sub->add_option("--l", o.l, "symbols per packet");
  };
  auto bits_flags = [&](CLI::App* sub) {
    sub->add_option("--p-bits", o.p_bits, "bits of the subgroup order p")->each([&](const std::string&) { o.p_bits_set = true; });
    sub->add_option("--q-bits", o.q_bits, "bits of the modulus q");
  };

  auto* params = app.add_subcommand("params", "generate (p, q, g) group parameters");
  common(params);
  bits_flags(params);

  auto* keygen = app.add_subcommand("keygen", "generate a key pair for files of m x l symbols");
  common(keygen);
  size_flags(keygen);
  keygen->add_option("--params", o.params_path, "group parameter file")->required();

  auto* refresh = app.add_subcommand("refresh", "re-draw a fraction of the key for the next file");
  common(refresh);
  refresh->add_option("--m", o.m, "packets per file (for the default fraction)");
  refresh->add_option("--rho", o.rho, "fraction of coordinates to refresh, in (0, 1]");
  refresh->add_option("--privkey", o.privkey_path)->required();
  refresh->add_option("--pubkey", o.pubkey_path)->required();

  auto* sign = app.add_subcommand("sign", "sign a file");
  common(sign);
  sign->add_option("--m", o.m, "packets per file");
  sign->add_option("--privkey", o.privkey_path)->required();
  sign->add_option("--file", o.file_path)->required();

  auto* encode = app.add_subcommand("encode", "split a file into augmented packets");
  common(encode);
  size_flags(encode);
  encode->add_option("--file", o.file_path)->required();
  encode->add_option("--params", o.params_path);
  encode->add_option("--pubkey", o.pubkey_path);

  auto* recombine = app.add_subcommand("recombine", "random linear combination of packets");
  common(recombine);
  recombine->add_option("--in", o.inputs, "input packet (repeatable)")->required();

  auto* decode = app.add_subcommand("decode", "recover a file from packets");
  common(decode);
  decode->add_option("--in", o.inputs, "input packet (repeatable)")->required();
  decode->add_option("--sig", o.sig_path, "signature file (length and digest)");

  auto* verify = app.add_subcommand("verify", "check a packet against a file signature");
  verify->add_option("--pubkey", o.pubkey_path)->required();
  verify->add_option("--sig", o.sig_path)->required();
  verify->add_option("--packet", o.packet_path)->required();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo contamination simulation");
  common(simulate);
  topo_flags(simulate);
  size_flags(simulate);
  bits_flags(simulate);
  simulate->add_option("--trials", o.trials);
  simulate->add_option("--list-mode", o.list_mode)->check(CLI::IsMember({"static", "evolving"}));
  simulate->add_option("--mode", o.mode)->check(CLI::IsMember({"boolean", "full-coded"}));
  simulate->add_option("--workers", o.workers);
  simulate->add_flag("--series", o.series, "emit mean C(t) instead of blocking");
  simulate->add_option("--condition-y", o.condition_y, "condition the series on the overlap Y");
  simulate->add_flag("--no-verify", o.no_verify, "full-coded mode without signature checks");

  auto* analyze = app.add_subcommand("analyze", "closed-form blocking and contamination curves");
  common(analyze);
  topo_flags(analyze);
  analyze->add_flag("--series", o.series, "emit E[C(t) | Y=y]");
  analyze->add_option("--condition-y", o.condition_y, "overlap Y for the contamination curve");
  analyze->add_option("--grid-step", o.grid_step);

  auto* over = app.add_subcommand("overhead", "cost curves, or public key size with --file-bytes");
  common(over);
  size_flags(over);
  bits_flags(over);
  over->add_option("--preset", o.preset_name);
  over->add_option("--G", o.G, "generation size (repeatable)");
  over->add_option("--op-rate", o.op_rate);
  over->add_option("--og-rate", o.og_rate);
  over->add_option("--grid-step", o.grid_step);
  over->add_option("--file-bytes", o.file_bytes);

  auto* compare = app.add_subcommand("compare", "three-scheme comparison with crossovers");
  common(compare);
  size_flags(compare);
  compare->add_option("--preset", o.preset_name);
  compare->add_option("--G", o.G, "generation size (repeatable)");
  compare->add_option("--op-rate", o.op_rate);
  compare->add_option("--og-rate", o.og_rate);
  compare->add_option("--grid-step", o.grid_step);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*params) return cmd_params(o, out, err);
    if (*keygen) return cmd_keygen(o, out, err);
    if (*refresh) return cmd_refresh(o, out, err);
    if (*sign) return cmd_sign(o, out, err);
    if (*encode) return cmd_encode(o, out, err);
    if (*recombine) return cmd_recombine(o, out, err);
    if (*decode) return cmd_decode(o, out, err);
    if (*verify) return cmd_verify(o, out, err);
    if (*simulate) return cmd_simulate(o, out, err);
    if (*analyze) return cmd_analyze(o, out, err);
    if (*over) return cmd_overhead(o, out, err);
    if (*compare) return cmd_compare(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace ncguard::cli
