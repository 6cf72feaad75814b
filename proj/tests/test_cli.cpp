#include <doctest.h>

#include <unistd.h>

#include <chrono>
#include <iomanip>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "ncguard/cli.hpp"
#include "ncguard/errors.hpp"
#include "ncguard/io.hpp"
#include "ncguard/rlnc.hpp"

using namespace ncguard;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("ncguard_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

rlnc::Vector vec(std::initializer_list<long> xs) {
  rlnc::Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_CASE("integer and digest helpers") {
  CHECK(io::to_hex(255) == "0xff");
  CHECK(io::parse_int("0xff") == 255);
  CHECK(io::parse_int("1234") == 1234);
  CHECK(io::parse_int(io::to_hex(modmath::Int("123456789012345678901234567890"))) ==
        modmath::Int("123456789012345678901234567890"));
  CHECK_THROWS_AS(io::parse_int("0xzz"), FormatError);
  CHECK_THROWS_AS(io::parse_int(""), FormatError);
  const std::vector<std::uint8_t> abc = {'a', 'b', 'c'};
  CHECK(io::sha256_hex(abc) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("key documents round trip") {
  const modmath::GroupParams params{5, 11, 3, 9};
  CHECK(io::params_from_json(io::params_to_json(params)) == params);
  const auto pair = sig::keypair_from_alphas(params, vec({2, 4}));
  CHECK(io::private_key_from_json(io::private_key_to_json(pair.priv)) == pair.priv);
  CHECK(io::public_key_from_json(io::public_key_to_json(pair.pub)) == pair.pub);
  const sig::FileSignature s{vec({4, 4}), "abcd"};
  std::uint64_t len = 0;
  CHECK(io::signature_from_json(io::signature_to_json(s, 17), &len) == s);
  CHECK(len == 17);
  CHECK_THROWS_AS(io::public_key_from_json("{not json"), FormatError);
  CHECK_THROWS_AS(io::public_key_from_json("{\"p\": \"0x5\"}"), FormatError);
}

TEST_CASE("presets") {
  const auto f3 = cli::preset("fig3");
  CHECK(f3.n_total == 30);
  CHECK(f3.n_s == 5);
  CHECK(f3.n_r == 6);
  CHECK(f3.d == 3);
  CHECK_FALSE(f3.y.has_value());
  CHECK(cli::preset("fig4").y == 1);
  CHECK(cli::preset("fig5").generation_sizes == std::vector<std::uint64_t>{10, 100, 1000});
  CHECK(cli::preset("fig67").cost.op_rate == 0.06);
  CHECK_THROWS_AS(cli::preset("fig9"), std::invalid_argument);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"analyze", "--bogus"}).code == 2);
  CHECK(run({"analyze", "--preset", "fig9"}).code == 2);
  CHECK(run({"simulate", "--list-mode", "sideways"}).code == 2);
  CHECK(run({"verify", "--pubkey", "x"}).code == 2);
  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("simulate") != std::string::npos);
  CHECK(run({"--version"}).out == std::string(cli::kVersion) + "\n");
}

TEST_CASE("verify on the worked example") {
  TempDir dir;
  const modmath::GroupParams params{5, 11, 3, 0};
  const auto keys = sig::keypair_from_alphas(params, vec({1, 1}));
  io::write_text(dir / "k.pub", io::public_key_to_json(keys.pub));
  io::write_text(dir / "f.sig", io::signature_to_json({vec({3, 1}), {}}));
  io::write_bytes(dir / "good.bin", rlnc::encode_packet({5, 1, vec({2, 4})}));
  io::write_bytes(dir / "bad.bin", rlnc::encode_packet({5, 1, vec({1, 3})}));

  const auto good = run({"verify", "--pubkey", dir / "k.pub", "--sig", dir / "f.sig", "--packet", dir / "good.bin"});
  CHECK(good.code == 0);
  CHECK(nlohmann::json::parse(good.out)["verdict"] == "valid");

  const auto bad = run({"verify", "--pubkey", dir / "k.pub", "--sig", dir / "f.sig", "--packet", dir / "bad.bin"});
  CHECK(bad.code == 1);
  const auto verdict = nlohmann::json::parse(bad.out);
  CHECK(verdict["verdict"] == "invalid");
  CHECK(verdict["d"] == "0x3");

  CHECK(run({"verify", "--pubkey", dir / "missing", "--sig", dir / "f.sig", "--packet", dir / "bad.bin"}).code == 1);
}

TEST_CASE("analyze emits the fig3 curves") {
  const auto r = run({"analyze", "--preset", "fig3"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "p_b,psi_static,psi_evolving");
  int rows = 0;
  std::string line, last;
  while (std::getline(lines, line)) {
    ++rows;
    last = line;
  }
  CHECK(rows == 101);
  CHECK(last == "1,1,1");
  CHECK(r.out.find("\n0,0,0\n") != std::string::npos);
  const auto manifest = nlohmann::json::parse(r.err);
  CHECK(manifest["parameters"]["n_total"] == 30);

  const auto series = run({"analyze", "--preset", "fig4", "--p-b", "0.2"});
  REQUIRE(series.code == 0);
  CHECK(series.out.rfind("t,e_c_static,e_c_evolving\n", 0) == 0);
}

TEST_CASE("overhead and compare") {
  const auto pk = run({"overhead", "--file-bytes", "10000000", "--m", "100"});
  REQUIRE(pk.code == 0);
  const auto j = nlohmann::json::parse(pk.out);
  CHECK(j["l"] == 5000);
  CHECK(j["pubkey_fraction"].get<double>() == doctest::Approx(0.06528));

  const auto curves = run({"overhead", "--preset", "fig5"});
  REQUIRE(curves.code == 0);
  CHECK(curves.out.rfind("p_n,cost_packet,cost_e2e,cost_generation_G10,cost_generation_G100,cost_generation_G1000", 0) == 0);

  TempDir dir;
  const auto cmp = run({"compare", "--preset", "fig67", "--out", dir / "cmp.csv"});
  REQUIRE(cmp.code == 0);
  const auto manifest = nlohmann::json::parse(io::read_text(dir / "cmp.csv.manifest.json"));
  const auto& first = manifest["parameters"]["crossovers"][0];
  CHECK(first["a"] == "packet");
  CHECK(first["b"] == "e2e");
  CHECK(std::abs(first["a_le_b"][0][0].get<double>() - 0.03) <= 0.001);
}

TEST_CASE("simulate output is byte-identical across reruns and worker counts") {
  TempDir dir;
  const std::vector<std::string> base = {"simulate", "--preset", "fig3", "--p-b", "0.05", "--p-b", "0.2",
                                         "--trials", "5000", "--seed", "42", "--list-mode", "evolving"};
  auto a = base, b = base;
  a.insert(a.end(), {"--workers", "1", "--out", dir / "a.csv"});
  b.insert(b.end(), {"--workers", "6", "--out", dir / "b.csv"});
  REQUIRE(run(a).code == 0);
  REQUIRE(run(b).code == 0);
  CHECK(io::read_text(dir / "a.csv") == io::read_text(dir / "b.csv"));
  CHECK(io::read_text(dir / "a.csv").rfind("p_b,mode,list_mode,trials,blocked_mean,blocked_se\n", 0) == 0);

  const auto s1 = run({"simulate", "--preset", "fig4", "--p-b", "0.2", "--trials", "2000", "--workers", "2"});
  const auto s2 = run({"simulate", "--preset", "fig4", "--p-b", "0.2", "--trials", "2000", "--workers", "5"});
  REQUIRE(s1.code == 0);
  CHECK(s1.out == s2.out);
  CHECK(s1.out.rfind("t,c_mean,c_se\n", 0) == 0);
}

TEST_CASE("full-coded simulate from the command line") {
  const auto r = run({"simulate", "--mode", "full-coded", "--p-b", "0.2", "--trials", "50", "--workers", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("full-coded") != std::string::npos);
}

TEST_CASE("key, sign, encode, recombine, verify, decode pipeline on 1 MB") {
  TempDir dir;
  const auto start = std::chrono::steady_clock::now();

  std::vector<std::uint8_t> data(1'000'000);
  Rng rng = derive_rng(2026, 0);
  for (auto& b : data) b = static_cast<std::uint8_t>(rng());
  io::write_bytes(dir / "data.bin", data);

  REQUIRE(run({"params", "--seed", "3", "--out", dir / "group.json"}).code == 0);
  const auto params = io::params_from_json(io::read_text(dir / "group.json"));
  CHECK(modmath::bit_length(params.p) == 160);
  CHECK(modmath::bit_length(params.q) == 1024);

  const std::size_t m = 16;
  const std::size_t per_row = m * rlnc::symbol_bytes(params.p);
  const std::size_t l = (data.size() + per_row - 1) / per_row;
  REQUIRE(run({"keygen", "--params", dir / "group.json", "--m", std::to_string(m), "--l", std::to_string(l),
               "--out", dir / "key"}).code == 0);
  REQUIRE(run({"sign", "--privkey", dir / "key.priv", "--file", dir / "data.bin", "--m", std::to_string(m),
               "--out", dir / "data.sig"}).code == 0);
  REQUIRE(run({"encode", "--file", dir / "data.bin", "--m", std::to_string(m), "--l", std::to_string(l),
               "--params", dir / "group.json", "--out", dir / "packets"}).code == 0);

  std::vector<std::string> mixed;
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<std::string> args = {"recombine", "--seed", std::to_string(100 + k)};
    for (std::size_t i = 0; i < m; ++i) {
      std::ostringstream name;
      name << "packets/packet_" << std::setw(4) << std::setfill('0') << i << ".bin";
      args.insert(args.end(), {"--in", dir / name.str()});
    }
    const auto out = dir / ("mixed_" + std::to_string(k) + ".bin");
    args.insert(args.end(), {"--out", out});
    REQUIRE(run(args).code == 0);
    mixed.push_back(out);
  }
  for (std::size_t k = 0; k < 3; ++k)
    REQUIRE(run({"verify", "--pubkey", dir / "key.pub", "--sig", dir / "data.sig", "--packet", mixed[k]}).code == 0);

  std::vector<std::string> dec = {"decode", "--sig", dir / "data.sig", "--out", dir / "restored.bin"};
  for (const auto& p : mixed) dec.insert(dec.end(), {"--in", p});
  const auto decoded = run(dec);
  REQUIRE(decoded.code == 0);
  CHECK(io::read_bytes(dir / "restored.bin") == data);

  // a refreshed key no longer accepts the old signature
  REQUIRE(run({"refresh", "--privkey", dir / "key.priv", "--pubkey", dir / "key.pub", "--m", std::to_string(m),
               "--out", dir / "key2"}).code == 0);
  CHECK(run({"verify", "--pubkey", dir / "key2.pub", "--sig", dir / "data.sig", "--packet", mixed[0]}).code == 1);

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  MESSAGE("1 MB pipeline took " << seconds << " s");
  CHECK(seconds < 60.0);
}
