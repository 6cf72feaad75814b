#pragma once

#include <cstddef>
#include <cstdint>

#include <gmpxx.h>

#include "ncguard/random.hpp"

namespace ncguard::modmath {

using Int = mpz_class;

/// Discrete-log group: g generates the order-p subgroup of (Z/qZ)^*.
struct GroupParams {
  Int p;
  Int q;
  Int g;
  std::uint64_t seed = 0;

  friend bool operator==(const GroupParams&, const GroupParams&) = default;
};

inline constexpr std::size_t kDefaultMaxAttempts = 1'000'000;
inline constexpr unsigned kDefaultPBits = 160;
inline constexpr unsigned kDefaultQBits = 1024;

/// base^exp mod modulus, result in [0, modulus). Negative bases are reduced first.
Int mod_exp(const Int& base, const Int& exp, const Int& modulus);

/// Multiplicative inverse of a modulo p; throws NoInverse when a = 0 mod p.
Int mod_inverse(const Int& a, const Int& p);

/// Deterministic for n < 2^64, otherwise `rounds` Miller-Rabin rounds with
/// witnesses drawn from a stream fixed by n.
bool is_prime(const Int& n, unsigned rounds = 64);

/// g = h^((q-1)/p) mod q for random units h, retried until g != 1.
Int find_subgroup_generator(const Int& p, const Int& q, Rng& rng);

/// DSA-style search: a p_bits prime p, then q = k*p + 1 (k even) with
/// exactly q_bits bits. Requires 2 <= p_bits < q_bits.
GroupParams generate_params(unsigned p_bits, unsigned q_bits, std::uint64_t seed,
                            std::size_t max_attempts = kDefaultMaxAttempts);

/// Checks every GroupParams invariant; returns false on the first violation.
bool validate(const GroupParams& params);

/// Number of bits in the binary representation of a positive integer.
std::size_t bit_length(const Int& n);

}  // namespace ncguard::modmath
