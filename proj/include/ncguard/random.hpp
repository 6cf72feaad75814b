#pragma once

#include <cstdint>
#include <random>

#include <gmpxx.h>

namespace ncguard {

using Rng = std::mt19937_64;

/// Independent stream for (seed, index); used to give every trial its own
/// generator so results do not depend on how trials are scheduled.
Rng derive_rng(std::uint64_t seed, std::uint64_t index);

/// Uniform integer in [0, bound). bound must be > 0.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Uniform integer in [0, bound) for arbitrary-precision bound > 0.
mpz_class uniform_below(Rng& rng, const mpz_class& bound);

/// True with probability p (p clamped to [0,1]; p=1 is always true).
bool bernoulli(Rng& rng, double p);

}  // namespace ncguard
