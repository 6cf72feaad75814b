#include <doctest.h>

#include <array>
#include <cmath>
#include <set>

#include "ncguard/errors.hpp"
#include "ncguard/sigscheme.hpp"

using namespace ncguard;
using rlnc::CodedPacket;
using rlnc::Int;
using rlnc::Vector;

namespace {

const modmath::GroupParams kToy{5, 11, 3, 0};

Vector vec(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

CodedPacket pk(std::size_t m, std::initializer_list<long> xs) { return {Int(5), m, vec(xs)}; }

// Every vector of F_5^n, in lexicographic order.
std::vector<Vector> all_vectors(std::size_t n) {
  std::vector<Vector> out;
  Vector v(n, 0);
  while (true) {
    out.push_back(v);
    std::size_t k = 0;
    while (k < n && v[k] == 4) v[k++] = 0;
    if (k == n) return out;
    v[k] += 1;
  }
}

}  // namespace

TEST_CASE("keygen worked examples") {
  CHECK(sig::keypair_from_alphas(kToy, vec({1, 1})).pub.hs == vec({3, 3}));
  CHECK(sig::keypair_from_alphas(kToy, vec({2, 4})).pub.hs == vec({9, 4}));
  CHECK_THROWS_AS(sig::keypair_from_alphas(kToy, vec({0, 1})), std::invalid_argument);
  CHECK_THROWS_AS(sig::keypair_from_alphas(kToy, vec({5, 1})), std::invalid_argument);

  Rng rng = derive_rng(1, 2);
  for (int k = 0; k < 50; ++k) {
    const auto pair = sig::keygen(kToy, 4, rng);
    for (std::size_t i = 0; i < 4; ++i) {
      REQUIRE(pair.priv.alphas[i] >= 1);
      REQUIRE(pair.priv.alphas[i] < 5);
      REQUIRE(modmath::mod_exp(pair.pub.hs[i], 5, 11) == 1);
      REQUIRE(pair.pub.hs[i] == modmath::mod_exp(3, pair.priv.alphas[i], 11));
    }
  }
  CHECK_THROWS_AS(sig::keygen(kToy, 1, rng), std::invalid_argument);
}

TEST_CASE("blinding worked examples") {
  const auto unit = sig::keypair_from_alphas(kToy, vec({1, 1}));
  CHECK(sig::blind(unit.priv, vec({3, 1})).xs == vec({3, 1}));
  const auto other = sig::keypair_from_alphas(kToy, vec({2, 4}));
  CHECK(sig::blind(other.priv, vec({3, 1})).xs == vec({4, 4}));
}

TEST_CASE("sign_file draws u from the null space") {
  Rng rng = derive_rng(4, 4);
  const auto keys = sig::keypair_from_alphas(kToy, vec({2, 4}));
  const std::vector v = {pk(1, {1, 2})};
  std::set<Vector> seen;
  for (int k = 0; k < 200; ++k) {
    const auto [signature, u] = sig::detail::sign_file_with_witness(keys.priv, v, rng);
    REQUIRE(u[1] != 0);
    REQUIRE(u[0] == Int(3 * u[1]) % 5);
    REQUIRE(signature.xs == sig::blind(keys.priv, u).xs);
    seen.insert(u);
  }
  CHECK(seen.size() == 4);  // c * (3, 1) for c in F_5^*

  const auto keys3 = sig::keypair_from_alphas(kToy, vec({1, 2, 3}));
  const std::vector basis = {pk(2, {1, 0, 2}), pk(2, {0, 1, 3})};
  for (int k = 0; k < 50; ++k) {
    const auto u = sig::detail::sign_file_with_witness(keys3.priv, basis, rng).u;
    REQUIRE(u[2] != 0);
    REQUIRE(u[0] == Int(3 * u[2]) % 5);
    REQUIRE(u[1] == Int(2 * u[2]) % 5);
  }
}

TEST_CASE("sign_file rejects malformed input") {
  Rng rng = derive_rng(1, 1);
  const auto keys3 = sig::keypair_from_alphas(kToy, vec({1, 2, 3}));
  const std::vector not_unit = {pk(2, {1, 1, 2}), pk(2, {0, 1, 3})};
  CHECK_THROWS_AS(sig::sign_file(keys3.priv, not_unit, rng), std::invalid_argument);
  const std::vector too_few = {pk(2, {1, 0, 2})};
  CHECK_THROWS_AS(sig::sign_file(keys3.priv, too_few, rng), std::invalid_argument);
  const std::vector wrong_len = {pk(1, {1, 2})};
  CHECK_THROWS_AS(sig::sign_file(keys3.priv, wrong_len, rng), DimensionMismatch);
}

TEST_CASE("verify_packet worked examples") {
  const auto keys = sig::keypair_from_alphas(kToy, vec({1, 1}));
  const sig::FileSignature x{vec({3, 1}), {}};
  CHECK(sig::verify_packet(keys.pub, x, pk(1, {2, 4})));
  CHECK(sig::verification_product(keys.pub, x, pk(1, {1, 3})) == 3);
  CHECK_FALSE(sig::verify_packet(keys.pub, x, pk(1, {1, 3})));
  CHECK(sig::verify_packet(keys.pub, x, pk(1, {0, 0})));
  CHECK_THROWS_AS(sig::verify_packet(keys.pub, x, pk(2, {1, 0, 0})), DimensionMismatch);
}

TEST_CASE("completeness: all 25 recombinations verify") {
  Rng rng = derive_rng(6, 6);
  const std::vector basis = {pk(2, {1, 0, 2}), pk(2, {0, 1, 3})};
  for (int k = 0; k < 10; ++k) {
    const auto keys = sig::keygen(kToy, 3, rng);
    const auto signature = sig::sign_file(keys.priv, basis, rng);
    int ok = 0;
    for (const auto& c : all_vectors(2)) ok += sig::verify_packet(keys.pub, signature, rlnc::recombine(basis, c));
    REQUIRE(ok == 25);
  }
}

TEST_CASE("soundness structure and equivalence with u.w") {
  Rng rng = derive_rng(7, 7);
  const std::vector basis = {pk(2, {1, 0, 2, 1, 4}), pk(2, {0, 1, 3, 3, 0})};
  const auto keys = sig::keygen(kToy, 5, rng);
  const auto [signature, u] = sig::detail::sign_file_with_witness(keys.priv, basis, rng);

  int accepted = 0, valid = 0;
  for (const auto& w : all_vectors(5)) {
    const CodedPacket packet(5, 2, w);
    const bool ok = sig::verify_packet(keys.pub, signature, packet);
    REQUIRE(ok == (rlnc::dot(u, w, 5) == 0));
    accepted += ok;
    const CodedPacket expected = rlnc::recombine(basis, std::span(w).first(2));
    valid += packet == expected;
  }
  CHECK(accepted == 625);
  CHECK(valid == 25);
  // every valid vector is accepted, so the invalid false-accept rate is 600 / 3100
  CHECK(static_cast<double>(accepted - valid) / (3125 - valid) == doctest::Approx(600.0 / 3100.0));
}

TEST_CASE("false-accept rate at p = 257 is near 1/p") {
  Rng rng = derive_rng(8, 8);
  modmath::GroupParams params{257, 1543, 0, 0};  // 1543 = 6 * 257 + 1
  params.g = modmath::find_subgroup_generator(params.p, params.q, rng);
  REQUIRE(modmath::validate(params));
  const std::size_t m = 2, l = 3;
  const auto file = rlnc::random_file(params.p, m, l, rng);
  const auto keys = sig::keygen(params, m + l, rng);
  const auto signature = sig::sign_file(keys.priv, rlnc::augment(file), rng);
  const int draws = 200000;
  int accepted = 0;
  for (int k = 0; k < draws; ++k) accepted += sig::verify_packet(keys.pub, signature, rlnc::random_packet(params.p, m, l, rng));
  const double rate = static_cast<double>(accepted) / draws;
  const double expected = 1.0 / 257.0;
  CHECK(std::abs(rate - expected) < 4.0 * std::sqrt(expected * (1 - expected) / draws));
}

TEST_CASE("linearity of the accepting set (exhaustive at p = 5)") {
  Rng rng = derive_rng(9, 9);
  const auto keys = sig::keygen(kToy, 3, rng);
  const std::vector basis = {pk(1, {1, 4, 2})};
  const auto signature = sig::sign_file(keys.priv, basis, rng);
  std::vector<CodedPacket> accepted;
  for (const auto& w : all_vectors(3))
    if (sig::verify_packet(keys.pub, signature, CodedPacket(5, 1, w))) accepted.emplace_back(5, 1, w);
  REQUIRE(accepted.size() == 25);
  for (const auto& a : accepted)
    for (const auto& b : accepted)
      for (long s = 0; s < 5; ++s)
        for (long t = 0; t < 5; ++t) {
          const std::array pair = {a, b};
          const Vector coeffs = vec({s, t});
          REQUIRE(sig::verify_packet(keys.pub, signature, rlnc::recombine(pair, coeffs)));
        }
}

TEST_CASE("refresh_keys") {
  Rng rng = derive_rng(10, 10);
  const auto params = modmath::generate_params(16, 40, 5);
  const auto keys = sig::keygen(params, 100, rng);

  const auto one = sig::refresh_keys(keys.priv, keys.pub, 1e-6, rng);
  std::size_t changed_slots = 0;
  for (std::size_t i = 0; i < 100; ++i) changed_slots += one.priv.alphas[i] != keys.priv.alphas[i];
  CHECK(changed_slots <= 1);

  const auto half = sig::refresh_keys(keys.priv, keys.pub, 0.5, rng);
  for (std::size_t i = 0; i < 100; ++i)
    REQUIRE(half.pub.hs[i] == modmath::mod_exp(params.g, half.priv.alphas[i], params.q));
  CHECK(half.priv.params == keys.priv.params);

  CHECK_THROWS_AS(sig::refresh_keys(keys.priv, keys.pub, 0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(sig::refresh_keys(keys.priv, keys.pub, 1.5, rng), std::invalid_argument);

  CHECK(sig::default_refresh_fraction(100, 5000) == doctest::Approx(5000.0 / 5100.0));
}

TEST_CASE("refresh with rho = 1 at p = 5 keeps each alpha with probability 1/(p-1)") {
  Rng rng = derive_rng(11, 11);
  const auto keys = sig::keypair_from_alphas(kToy, vec({1, 2, 3, 4}));
  const int runs = 20000;
  int kept = 0, all_differ = 0;
  for (int k = 0; k < runs; ++k) {
    const auto fresh = sig::refresh_keys(keys.priv, keys.pub, 1.0, rng);
    int same = 0;
    for (std::size_t i = 0; i < 4; ++i) same += fresh.priv.alphas[i] == keys.priv.alphas[i];
    kept += same;
    all_differ += same == 0;
  }
  const double per_slot = static_cast<double>(kept) / (4.0 * runs);
  CHECK(std::abs(per_slot - 0.25) < 4.0 * std::sqrt(0.25 * 0.75 / (4.0 * runs)));
  const double p_all = std::pow(0.75, 4);  // every coordinate redrawn to a new value
  CHECK(std::abs(static_cast<double>(all_differ) / runs - p_all) < 4.0 * std::sqrt(p_all * (1 - p_all) / runs));
}

TEST_CASE("old signature fails after a refresh") {
  Rng rng = derive_rng(12, 12);
  const auto params = modmath::generate_params(62, 128, 12);
  const auto file = rlnc::random_file(params.p, 3, 8, rng);
  const auto basis = rlnc::augment(file);
  const auto keys = sig::keygen(params, 11, rng);
  const auto signature = sig::sign_file(keys.priv, basis, rng);
  const auto fresh = sig::refresh_keys(keys.priv, keys.pub, sig::default_refresh_fraction(3, 8), rng);
  int still_valid = 0;
  for (int k = 0; k < 20; ++k)
    still_valid += sig::verify_packet(fresh.pub, signature, rlnc::random_recombine(basis, rng));
  CHECK(still_valid == 0);
  const auto resigned = sig::sign_file(fresh.priv, basis, rng);
  for (int k = 0; k < 20; ++k) REQUIRE(sig::verify_packet(fresh.pub, resigned, rlnc::random_recombine(basis, rng)));
}
