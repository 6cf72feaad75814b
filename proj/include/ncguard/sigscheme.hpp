#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ncguard/modmath.hpp"
#include "ncguard/random.hpp"
#include "ncguard/rlnc.hpp"

namespace ncguard::sig {

using modmath::GroupParams;
using modmath::Int;
using rlnc::Vector;

/// alpha_i in F_p^*, one per packet coordinate. Known only to the source.
struct PrivateKey {
  GroupParams params;
  Vector alphas;

  friend bool operator==(const PrivateKey&, const PrivateKey&) = default;
};

/// h_i = g^alpha_i mod q.
struct PublicKey {
  GroupParams params;
  Vector hs;

  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

/// x_i = u_i / alpha_i mod p for a vector u orthogonal to the file's span.
struct FileSignature {
  Vector xs;
  std::string file_digest;

  friend bool operator==(const FileSignature&, const FileSignature&) = default;
};

struct KeyPair {
  PrivateKey priv;
  PublicKey pub;
};

KeyPair keygen(const GroupParams& params, std::size_t n, Rng& rng);

/// Builds the pair for a fixed alpha vector (entries must be in [1, p)).
KeyPair keypair_from_alphas(const GroupParams& params, Vector alphas);

/// Blinds an orthogonal vector u with the private key.
FileSignature blind(const PrivateKey& priv, std::span<const Int> u);

FileSignature sign_file(const PrivateKey& priv, std::span<const rlnc::CodedPacket> augmented, Rng& rng);

/// d = prod h_i^(x_i * w_i mod p) mod q; accepts iff d == 1.
bool verify_packet(const PublicKey& pub, const FileSignature& sig, const rlnc::CodedPacket& w);

/// The verification product d itself (exposed for diagnostics).
Int verification_product(const PublicKey& pub, const FileSignature& sig, const rlnc::CodedPacket& w);

/// Re-draws alpha (and h) on a uniform ceil(rho * n)-subset of coordinates.
/// Old signatures are invalidated; sign the next file with the new key.
KeyPair refresh_keys(const PrivateKey& priv, const PublicKey& pub, double rho, Rng& rng);

/// l / (m + l): refreshes as many coordinates as there are payload symbols.
double default_refresh_fraction(std::size_t m, std::size_t l);

namespace detail {

struct SigningResult {
  FileSignature signature;
  Vector u;
};

/// sign_file plus the orthogonal vector it used; for tests and audits.
SigningResult sign_file_with_witness(const PrivateKey& priv, std::span<const rlnc::CodedPacket> augmented,
                                     Rng& rng);

}  // namespace detail

}  // namespace ncguard::sig
