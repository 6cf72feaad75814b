#include "ncguard/sigscheme.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ncguard/errors.hpp"

namespace ncguard::sig {

namespace {

void check_unit_prefix(std::span<const rlnc::CodedPacket> augmented) {
  if (augmented.empty()) throw std::invalid_argument("sign_file: no packets");
  const std::size_t m = augmented.front().m();
  if (augmented.size() != m) throw std::invalid_argument("sign_file: expected exactly m augmented packets");
  for (std::size_t i = 0; i < m; ++i) {
    const auto& pk = augmented[i];
    if (pk.m() != m || pk.size() != augmented.front().size() || pk.p() != augmented.front().p())
      throw DimensionMismatch("sign_file: packets differ in shape");
    for (std::size_t j = 0; j < m; ++j) {
      if (pk.w()[j] != (i == j ? 1 : 0))
        throw std::invalid_argument("sign_file: malformed augmentation (non-unit coding vector)");
    }
  }
}

}  // namespace

KeyPair keypair_from_alphas(const GroupParams& params, Vector alphas) {
  if (alphas.size() < 2) throw std::invalid_argument("keygen: need n >= 2");
  Vector hs;
  hs.reserve(alphas.size());
  for (const auto& a : alphas) {
    if (a < 1 || a >= params.p) throw std::invalid_argument("keygen: alpha outside [1, p)");
    hs.push_back(modmath::mod_exp(params.g, a, params.q));
  }
  return {PrivateKey{params, std::move(alphas)}, PublicKey{params, std::move(hs)}};
}

KeyPair keygen(const GroupParams& params, std::size_t n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("keygen: need n >= 2");
  Vector alphas;
  alphas.reserve(n);
  const Int span = params.p - 1;
  for (std::size_t i = 0; i < n; ++i) alphas.push_back(uniform_below(rng, span) + 1);
  return keypair_from_alphas(params, std::move(alphas));
}

FileSignature blind(const PrivateKey& priv, std::span<const Int> u) {
  if (u.size() != priv.alphas.size()) throw DimensionMismatch("blind: u length differs from key length");
  const Int& p = priv.params.p;
  FileSignature sig;
  sig.xs.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    Int x = u[i] * modmath::mod_inverse(priv.alphas[i], p) % p;
    if (sgn(x) < 0) x += p;
    sig.xs.push_back(std::move(x));
  }
  return sig;
}

namespace detail {

SigningResult sign_file_with_witness(const PrivateKey& priv, std::span<const rlnc::CodedPacket> augmented,
                                     Rng& rng) {
  check_unit_prefix(augmented);
  const std::size_t n = augmented.front().size();
  if (n != priv.alphas.size()) throw DimensionMismatch("sign_file: key length differs from m + l");
  if (augmented.front().p() != priv.params.p) throw DimensionMismatch("sign_file: field differs from key's p");
  rlnc::Matrix rows;
  rows.reserve(augmented.size());
  for (const auto& pk : augmented) rows.push_back(pk.w());
  Vector u = rlnc::random_null_vector(rows, n, priv.params.p, rng);
  if (u.empty()) throw std::invalid_argument("sign_file: file spans the whole space (need l >= 1)");
  FileSignature sig = blind(priv, u);
  return {std::move(sig), std::move(u)};
}

}  // namespace detail

FileSignature sign_file(const PrivateKey& priv, std::span<const rlnc::CodedPacket> augmented, Rng& rng) {
  return detail::sign_file_with_witness(priv, augmented, rng).signature;
}

Int verification_product(const PublicKey& pub, const FileSignature& sig, const rlnc::CodedPacket& w) {
  const std::size_t n = pub.hs.size();
  if (sig.xs.size() != n || w.size() != n) throw DimensionMismatch("verify_packet: dimensions disagree");
  const Int& p = pub.params.p;
  const Int& q = pub.params.q;
  Int d = 1;
  Int e, t;
  for (std::size_t i = 0; i < n; ++i) {
    e = sig.xs[i] * w.w()[i] % p;
    if (sgn(e) == 0) continue;
    mpz_powm(t.get_mpz_t(), pub.hs[i].get_mpz_t(), e.get_mpz_t(), q.get_mpz_t());
    d = d * t % q;
  }
  return d;
}

bool verify_packet(const PublicKey& pub, const FileSignature& sig, const rlnc::CodedPacket& w) {
  return verification_product(pub, sig, w) == 1;
}

double default_refresh_fraction(std::size_t m, std::size_t l) {
  return static_cast<double>(l) / static_cast<double>(m + l);
}

KeyPair refresh_keys(const PrivateKey& priv, const PublicKey& pub, double rho, Rng& rng) {
  if (!(rho > 0.0 && rho <= 1.0)) throw std::invalid_argument("refresh_keys: rho must be in (0, 1]");
  const std::size_t n = priv.alphas.size();
  if (pub.hs.size() != n || !(priv.params == pub.params))
    throw std::invalid_argument("refresh_keys: keys are not a pair");
  auto count = static_cast<std::size_t>(std::ceil(rho * static_cast<double>(n) - 1e-9));
  count = std::clamp<std::size_t>(count, 1, n);

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t j = k + uniform_below(rng, n - k);
    std::swap(idx[k], idx[j]);
  }
  KeyPair out{priv, pub};
  const Int span = priv.params.p - 1;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t i = idx[k];
    out.priv.alphas[i] = uniform_below(rng, span) + 1;
    out.pub.hs[i] = modmath::mod_exp(priv.params.g, out.priv.alphas[i], priv.params.q);
  }
  return out;
}

}  // namespace ncguard::sig
